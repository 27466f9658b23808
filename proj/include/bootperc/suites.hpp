#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bootperc/bootstrap.hpp"
#include "bootperc/constructions.hpp"
#include "bootperc/ore.hpp"
#include "bootperc/random_graphs.hpp"
#include "bootperc/report.hpp"
#include "bootperc/solver.hpp"

namespace bootperc {

struct SuiteConfig {
  std::uint64_t rng_seed = 1;
  std::size_t jobs = 1;
  std::uint64_t work_cap = kDefaultWorkCap;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "grid-oracles",       "two-clique-tightness",    "stacked-cliques", "f-threshold",  "girth-neighbourhood",
      "high-girth",         "ore-tightness-structure", "big-l-exact",     "ore-pipeline", "big-l-pipeline",
  };
  return names;
}

// Graph keeping only the edges between the two sides.
inline Graph cross_graph(const Graph& g, const BipartitePartition& p) {
  GraphBuilder b(g.order());
  p.left.for_each([&](Vertex u) {
    for (Vertex v : g.neighbours(u))
      if (p.right.contains(v)) b.add_edge(u, v);
  });
  return b.build();
}

namespace detail {

using CheckFn = std::function<void(CheckRecord&)>;

struct PendingCheck {
  std::string name;
  std::string anchor;
  CheckFn body;
};

inline void expect_equal(CheckRecord& rec, const std::string& expected, const std::string& actual) {
  rec.expected = expected;
  rec.actual = actual;
  rec.verdict = expected == actual ? Verdict::pass : Verdict::fail;
}

inline std::string yes(bool b) { return b ? "true" : "false"; }

inline std::string pad(std::size_t i, std::size_t width = 3) {
  std::string s = std::to_string(i);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

inline std::vector<PendingCheck> grid_oracles(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  struct Point {
    std::size_t n, d, r;
  };
  for (const Point p : {Point{3, 2, 2}, Point{4, 2, 2}, Point{5, 2, 2}, Point{3, 3, 3}, Point{2, 3, 2}, Point{2, 3, 3}}) {
    const bool side = p.r == 2;
    const std::string anchor = side ? "grid formula ceil(d(n-1)/2)+1 at r=2" : "grid formula n^(d-1) at r=d";
    out.push_back({"m([" + std::to_string(p.n) + "]^" + std::to_string(p.d) + ", r=" + std::to_string(p.r) + ")",
                   anchor, [p, side, cfg](CheckRecord& rec) {
                     std::size_t expect = 1;
                     if (side) {
                       expect = (p.d * (p.n - 1) + 1) / 2 + 1;
                     } else {
                       for (std::size_t i = 1; i < p.d; ++i) expect *= p.n;
                     }
                     SolverOptions so;
                     so.work_cap = cfg.work_cap;
                     const SolveResult s = min_percolating_set_size(grid_graph(p.n, p.d), p.r, std::nullopt, so);
                     if (s.status == SolveStatus::refused) {
                       rec.expected = std::to_string(expect);
                       rec.actual = s.message;
                       rec.verdict = Verdict::refused;
                       return;
                     }
                     expect_equal(rec, std::to_string(expect), std::to_string(s.size.value_or(0)));
                   }});
  }
  return out;
}

inline std::vector<PendingCheck> two_clique_tightness(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  for (std::size_t r = 2; r <= 4; ++r)
    for (std::size_t l = r; l + 2 <= 2 * r; ++l)
      for (std::size_t n = 2 * l; n <= 11; ++n) {
        const std::string key = "(r=" + std::to_string(r) + ",l=" + std::to_string(l) + ",n=" + pad(n, 2) + ")";
        out.push_back({"construction " + key, "two-clique lower bound", [=](CheckRecord& rec) {
                         const CliquePair cp = fig1_two_clique(n, r, l);
                         const std::size_t bound = (r - 1) * n / l + l - r;
                         const bool closed = is_closed(cp.graph, r, cp.seed);
                         rec.expected = "min degree " + std::to_string(bound) + ", seed closed";
                         rec.actual = "min degree " + std::to_string(min_degree(cp.graph)) + ", seed " +
                                      (closed ? "closed" : "not closed");
                         rec.verdict = min_degree(cp.graph) == bound && closed && cp.seed.count() == l ? Verdict::pass
                                                                                                      : Verdict::fail;
                         if (rec.verdict == Verdict::fail) rec.witness = make_witness(cp.graph, r, cp.seed);
                       }});
        out.push_back({"denser graphs " + key, "every l-set percolates above the bound", [=](CheckRecord& rec) {
                         const std::size_t floor = (r - 1) * n / l + l - r + 1;
                         rec.expected = "all l-sets percolate in 10 samples";
                         if (floor >= n) {
                           rec.actual = "degree floor reaches n; vacuous";
                           rec.verdict = Verdict::pass;
                           return;
                         }
                         Rng rng(cfg.rng_seed ^ (r * 1000 + l * 100 + n));
                         for (int t = 0; t < 10; ++t) {
                           const Graph g = random_min_degree_graph(n, floor, rng);
                           SolverOptions so;
                           so.work_cap = cfg.work_cap;
                           const SolveResult s = all_sets_percolate(g, r, l, so);
                           if (s.status == SolveStatus::found) {
                             rec.actual = "non-percolating l-set " + s.witness->to_string();
                             rec.verdict = Verdict::fail;
                             rec.witness = make_witness(g, r, *s.witness);
                             return;
                           }
                           if (s.status != SolveStatus::absent) {
                             rec.actual = s.message;
                             rec.verdict = Verdict::refused;
                             return;
                           }
                         }
                         rec.actual = rec.expected;
                         rec.verdict = Verdict::pass;
                       }});
      }
  return out;
}

inline std::vector<PendingCheck> stacked_cliques(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  for (const auto& [r, l] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {3, 5}, {2, 5}}) {
    out.push_back({"cliques block size-l sets (r=" + std::to_string(r) + ",l=" + std::to_string(l) + ")",
                   "floor(l/r)+1 disjoint cliques", [r, l, cfg](CheckRecord& rec) {
                     const std::size_t parts = l / r + 1;
                     const Graph g = disjoint_cliques(4 * parts, parts);
                     SolverOptions so;
                     so.work_cap = cfg.work_cap;
                     const SolveResult s = exists_percolating_set(g, r, l, so);
                     expect_equal(rec, "absent", to_string(s.status));
                     if (s.witness) rec.witness = make_witness(g, r, *s.witness);
                   }});
  }
  out.push_back({"stacked seed on G(300, 0.8), r=3, k=2", "stacked K_{r,kr} seeding", [cfg](CheckRecord& rec) {
                   const Graph g = random_graph(300, 0.8, cfg.rng_seed);
                   const PipelineResult p = find_percolating_set_stacked(g, 3, 2);
                   rec.expected = "percolating seed of size <= 6";
                   const bool ok = p.seed && p.seed->count() <= 6 && percolates(g, 3, *p.seed);
                   rec.actual = std::string(to_string(p.status)) + (p.seed ? " size " + std::to_string(p.seed->count()) : "");
                   rec.verdict = ok ? Verdict::pass : p.status == PipelineStatus::found ? Verdict::fail : Verdict::diagnostic;
                 }});
  out.push_back({"stacked refuses three cliques of 30", "stacked degree condition", [](CheckRecord& rec) {
                   const PipelineResult p = find_percolating_set_stacked(disjoint_cliques(90, 3), 3, 2);
                   expect_equal(rec, "refused", to_string(p.status));
                 }});
  return out;
}

inline std::vector<PendingCheck> f_threshold_suite(const SuiteConfig&) {
  return {{"f(k) over k <= 10^6", "threshold function", [](CheckRecord& rec) {
             rec.expected = "(f-2)(f-3) <= 2k < (f-1)(f-2) for all k";
             for (std::uint64_t k = 0; k <= 1'000'000; ++k) {
               const std::uint64_t f = f_threshold(k);
               if (!((f - 2) * (f - 3) <= 2 * k && 2 * k < (f - 1) * (f - 2))) {
                 rec.actual = "violated at k=" + std::to_string(k) + " (f=" + std::to_string(f) + ")";
                 rec.verdict = Verdict::fail;
                 return;
               }
             }
             rec.actual = rec.expected;
             rec.verdict = Verdict::pass;
           }}};
}

inline std::vector<PendingCheck> girth_neighbourhood(const SuiteConfig& cfg) {
  return {{"equivalence on 300 random bipartite graphs", "girth/neighbourhood equivalence", [cfg](CheckRecord& rec) {
             Rng rng(cfg.rng_seed);
             rec.expected = "both directions agree";
             for (int t = 0; t < 300; ++t) {
               const std::size_t a = 1 + rng.below(12), b = 1 + rng.below(12), g = 1 + rng.below(3);
               const double p = 0.1 + 0.5 * rng.unit();
               GraphBuilder gb(a + b);
               for (Vertex u = 0; u < a; ++u)
                 for (Vertex w = a; w < a + b; ++w)
                   if (rng.bernoulli(p)) gb.add_edge(u, w);
               const Graph h = gb.build();
               const auto c = check_girth_neighborhood_equiv(h, block_partition(a + b, a), g);
               if (!c.agree()) {
                 rec.actual = "disagreement at trial " + std::to_string(t);
                 rec.verdict = Verdict::fail;
                 rec.witness = make_witness(h, g, VertexSet(a + b));
                 return;
               }
             }
             rec.actual = rec.expected;
             rec.verdict = Verdict::pass;
           }}};
}

inline std::vector<PendingCheck> high_girth(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  out.push_back({"double cover of 200 random regular graphs", "double cover keeps regularity and girth",
                 [cfg](CheckRecord& rec) {
                   Rng rng(cfg.rng_seed);
                   rec.expected = "regular, bipartite, girth not decreased";
                   for (int t = 0; t < 200; ++t) {
                     std::size_t n = 4 + rng.below(20), s = 1 + rng.below(4);
                     if (s >= n) s = n - 1;
                     if ((n * s) % 2) ++n;
                     const Graph g = random_regular_graph(n, s, rng);
                     const BipartiteGraph h = bipartite_double_cover(g);
                     const bool ok = is_regular(h.graph, s) && two_colouring(h.graph).has_value() &&
                                     girth(h.graph) >= girth(g);
                     if (!ok) {
                       rec.actual = "violated at trial " + std::to_string(t);
                       rec.verdict = Verdict::fail;
                       rec.witness = make_witness(g, s, VertexSet(n));
                       return;
                     }
                   }
                   rec.actual = rec.expected;
                   rec.verdict = Verdict::pass;
                 }});
  out.push_back({"200 grows from the Heawood double cover", "girth-preserving growth", [cfg](CheckRecord& rec) {
                   BipartiteGraph h = bipartite_double_cover(heawood_graph());
                   rec.expected = "3-regular, bipartite, girth >= 6 after every grow";
                   Rng rng(cfg.rng_seed);
                   for (int t = 0; t < 200; ++t) {
                     h = grow_bipartite_preserving_girth(h, 3, 6, rng.fork());
                     validate_bipartition(h.graph, h.sides);
                     if (!is_regular(h.graph, 3) || girth(h.graph) < ExtendedCount(6)) {
                       rec.actual = "violated at grow " + std::to_string(t);
                       rec.verdict = Verdict::fail;
                       return;
                     }
                   }
                   rec.actual = rec.expected + " (" + std::to_string(h.graph.order()) + " vertices)";
                   rec.verdict = Verdict::pass;
                 }});
  return out;
}

inline std::vector<PendingCheck> ore_tightness_structure(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  const std::size_t n_side = 40, r = 7, l = 7;
  out.push_back({"ore-tightness (40,7,7) structure", "Ore-type lower-bound construction", [=](CheckRecord& rec) {
                   const CliquePair cp = ore_tightness_graph(n_side, r, l, OreVariant::full, cfg.rng_seed);
                   const Graph x = cross_graph(cp.graph, cp.sides);
                   const SideBound b = seed_feasibility_lower_bound(cp.graph, r, cp.sides);
                   rec.expected = "cross 4-regular, cross girth >= 8, min degree 43, >= 3 seeds per side";
                   rec.actual = "cross " + std::string(is_regular(x, 4) ? "4-regular" : "irregular") + ", cross girth " +
                                girth(x).to_string() + ", min degree " + std::to_string(min_degree(cp.graph)) +
                                ", seeds per side " + std::to_string(b.left) + "/" + std::to_string(b.right);
                   const bool ok = is_regular(x, 4) && girth(x) >= ExtendedCount(8) &&
                                   min_degree(cp.graph) == n_side + 3 && b.left >= 3 && b.right >= 3;
                   rec.verdict = ok ? Verdict::pass : Verdict::fail;
                 }});
  out.push_back({"ore-tightness (40,7,7) below pipeline threshold", "Ore-type lower-bound construction",
                 [=](CheckRecord& rec) {
                   const CliquePair cp = ore_tightness_graph(n_side, r, l, OreVariant::full, cfg.rng_seed);
                   const std::size_t f = f_threshold(0);
                   const std::size_t threshold = cp.graph.order() + 4 * r - 2 * l - 2 * f - 1;
                   const PipelineResult p = find_percolating_set_ore(cp.graph, r, l);
                   rec.expected = "D(G) < " + std::to_string(threshold) + ", pipeline refused";
                   rec.actual = "D(G) = " + ore_degree_sum(cp.graph).to_string() + ", pipeline " + to_string(p.status);
                   rec.verdict = ore_degree_sum(cp.graph) < ExtendedCount(threshold) &&
                                         p.status == PipelineStatus::refused
                                     ? Verdict::pass
                                     : Verdict::fail;
                 }});
  for (const OreVariant v : {OreVariant::weak, OreVariant::odd}) {
    out.push_back({std::string("ore-tightness (40,7,7) ") + to_string(v) + " audit", "Ore-type lower-bound construction",
                   [=](CheckRecord& rec) {
                     AuditLog log;
                     ore_tightness_graph(n_side, r, l, v, cfg.rng_seed, false, &log);
                     rec.expected = "all audits pass";
                     rec.actual = std::to_string(log.entries().size()) + " audits pass";
                     rec.verdict = Verdict::pass;
                   }});
  }
  return out;
}

inline std::vector<PendingCheck> big_l_exact(const SuiteConfig& cfg) {
  return {{"big-l tightness (12,4,5)", "big-l lower-bound construction", [cfg](CheckRecord& rec) {
             const CliquePair cp = big_l_tightness_graph(12, 4, 5);
             SolverOptions so;
             so.work_cap = cfg.work_cap;
             so.jobs = cfg.jobs;
             const SolveResult s = min_percolating_set_size(cp.graph, 4, std::nullopt, so);
             expect_equal(rec, "D(G) = n+2r-l-3 = 12, m = 6",
                          "D(G) = n+2r-l-3 = " + ore_degree_sum(cp.graph).to_string() + ", m = " +
                              (s.size ? std::to_string(*s.size) : std::string(to_string(s.status))));
           }}};
}

// Each sampled instance must yield an engine-validated set of size <= l or
// an explicit diagnostic; a returned set that fails replay is a fail.
inline PendingCheck pipeline_check(std::string name, std::string anchor, Graph g, std::size_t r, std::size_t l,
                                   bool big_l) {
  return {std::move(name), std::move(anchor), [g = std::move(g), r, l, big_l](CheckRecord& rec) {
            const PipelineResult p = big_l ? find_percolating_set_big_l(g, r, l) : find_percolating_set_ore(g, r, l);
            rec.expected = "percolating set of size <= " + std::to_string(l);
            rec.actual = std::string(to_string(p.status)) + (p.fired_case.empty() ? "" : " via " + p.fired_case);
            for (const auto& e : p.transcript.entries())
              if (e.level != Level::info) rec.notes.push_back(e.step + ": " + e.detail);
            if (p.status == PipelineStatus::found) {
              const bool ok = p.seed && p.seed->count() <= l && percolates(g, r, *p.seed);
              rec.verdict = ok ? Verdict::pass : Verdict::fail;
              if (!ok && p.seed) rec.witness = make_witness(g, r, *p.seed);
            } else {
              rec.verdict = p.status == PipelineStatus::refused ? Verdict::refused : Verdict::diagnostic;
            }
          }};
}

// Random instances passing the degree condition: G(n,p) and two cliques with
// random regular cross edges.
inline std::vector<PendingCheck> pipeline_suite(const SuiteConfig& cfg, bool big_l) {
  const std::size_t r = big_l ? 4 : 6, l = big_l ? 5 : 7;
  const std::size_t f = f_threshold(l - r);
  const std::string anchor = big_l ? "big-l upper bound" : "Ore-type upper bound";
  std::vector<PendingCheck> out;
  Rng rng(cfg.rng_seed);
  for (std::size_t t = 0; t < 10; ++t) {
    const std::size_t n = 100 + rng.below(201);
    const double p = 0.7 + 0.2 * rng.unit();
    const std::size_t threshold = big_l ? n + 2 * r - l - 2 : n + 4 * r - 2 * l - 2 * f - 1;
    RandomGraphFilter filt;
    filt.min_ore = threshold;
    Graph g = random_graph(n, p, rng.fork(), filt);
    out.push_back(pipeline_check("G(n,p) " + pad(t) + " n=" + std::to_string(n), anchor, std::move(g), r, l, big_l));
  }
  for (std::size_t t = 0; t < 6; ++t) {
    std::size_t side = 50 + rng.below(101);
    const std::size_t s = 3 + rng.below(4);
    if ((side * s) % 2) ++side;
    Graph g = random_two_clique_graph(side, s, rng);
    out.push_back(pipeline_check("two cliques " + pad(t) + " side=" + std::to_string(side) + " s=" + std::to_string(s),
                                 anchor, std::move(g), r, l, big_l));
  }
  if (big_l) {
    out.push_back({"big-l tightness (12,4,5) refused", anchor, [](CheckRecord& rec) {
                     const PipelineResult p = find_percolating_set_big_l(big_l_tightness_graph(12, 4, 5).graph, 4, 5);
                     expect_equal(rec, "refused", to_string(p.status));
                   }});
  }
  return out;
}

inline std::vector<PendingCheck> suite_checks(const std::string& name, const SuiteConfig& cfg) {
  if (name == "grid-oracles") return grid_oracles(cfg);
  if (name == "two-clique-tightness") return two_clique_tightness(cfg);
  if (name == "stacked-cliques") return stacked_cliques(cfg);
  if (name == "f-threshold") return f_threshold_suite(cfg);
  if (name == "girth-neighbourhood") return girth_neighbourhood(cfg);
  if (name == "high-girth") return high_girth(cfg);
  if (name == "ore-tightness-structure") return ore_tightness_structure(cfg);
  if (name == "big-l-exact") return big_l_exact(cfg);
  if (name == "ore-pipeline") return pipeline_suite(cfg, false);
  if (name == "big-l-pipeline") return pipeline_suite(cfg, true);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace detail

// Checks are built serially (so generated instances depend only on the
// seed), run on a pool of cfg.jobs workers, and reported in name order.
inline ExperimentReport run_suite(const std::string& name, const SuiteConfig& cfg = {}) {
  const auto pending = detail::suite_checks(name, cfg);
  std::vector<CheckRecord> records(pending.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < pending.size(); ++i)
    tasks.push_back([&, i] { records[i] = timed_check(pending[i].name, pending[i].anchor, pending[i].body); });
  run_tasks(tasks, cfg.jobs);
  ExperimentReport rep;
  rep.suite = name;
  rep.seeds["rng_seed"] = cfg.rng_seed;
  rep.jobs = cfg.jobs;
  rep.checks = std::move(records);
  rep.normalise();
  return rep;
}

}  // namespace bootperc
