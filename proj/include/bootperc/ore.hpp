#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bootperc/bootstrap.hpp"
#include "bootperc/constructions.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/random.hpp"
#include "bootperc/solver.hpp"
#include "bootperc/subsets.hpp"

namespace bootperc {

using Int = std::int64_t;

inline Int as_int(std::size_t x) { return static_cast<Int>(x); }

// ---------------------------------------------------------------------------
// Transcript

enum class Level { info, warning, failure };

inline const char* to_string(Level l) {
  switch (l) {
    case Level::info: return "info";
    case Level::warning: return "warning";
    case Level::failure: return "failure";
  }
  return "unknown";
}

struct TranscriptEntry {
  std::string step;
  std::string detail;
  Level level = Level::info;
};

class Transcript {
 public:
  void info(std::string step, std::string detail) { add(std::move(step), std::move(detail), Level::info); }
  void warn(std::string step, std::string detail) { add(std::move(step), std::move(detail), Level::warning); }
  void fail(std::string step, std::string detail) { add(std::move(step), std::move(detail), Level::failure); }
  void append(const Transcript& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }
  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  bool has_failure() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.level == Level::failure; });
  }

 private:
  void add(std::string step, std::string detail, Level level) {
    entries_.push_back({std::move(step), std::move(detail), level});
  }
  std::vector<TranscriptEntry> entries_;
};

// ---------------------------------------------------------------------------
// Complete bipartite subgraphs

struct CompleteBipartite {
  VertexSet r_side;
  VertexSet s_side;
};

namespace detail {

// DFS over r-subsets of `pool` in index order, carrying the common
// neighbourhood restricted to `pool`. `visit` returns true to stop.
template <typename Visit>
void common_neighbourhood_dfs(const Graph& g, const VertexSet& pool, std::size_t r, std::size_t min_common,
                              std::size_t& budget, Visit&& visit) {
  const std::vector<Vertex> cand = pool.to_vector();
  std::vector<Vertex> chosen;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t from, const VertexSet& common) -> void {
    if (stop) return;
    if (chosen.size() == r) {
      stop = visit(chosen, common);
      return;
    }
    for (std::size_t i = from; i + (r - chosen.size()) <= cand.size() && !stop; ++i) {
      if (budget == 0) {
        stop = true;
        return;
      }
      --budget;
      VertexSet next = common & g.neighbourhood(cand[i]);
      if (next.count() < min_common) continue;
      chosen.push_back(cand[i]);
      self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  rec(rec, 0, pool);
}

}  // namespace detail

// Lowest (in DFS order) K_{r,s} inside `within`; S is the lowest s common
// neighbours of R.
inline std::optional<CompleteBipartite> find_complete_bipartite(const Graph& g, std::size_t r, std::size_t s,
                                                                std::optional<VertexSet> within = {},
                                                                std::size_t node_budget = 10'000'000) {
  if (r < 1 || s < 1) throw InvalidArgument("K_{r,s} needs r, s >= 1");
  const VertexSet pool = within ? *within : g.vertices();
  std::optional<CompleteBipartite> out;
  detail::common_neighbourhood_dfs(g, pool, r, s, node_budget, [&](const std::vector<Vertex>& rs, const VertexSet& c) {
    out = CompleteBipartite{VertexSet::from(g.order(), rs), c.lowest(s)};
    return true;
  });
  return out;
}

// K_{r,s} inside `within` with s as large as a bounded branch-and-bound
// finds; s = full common neighbourhood.
inline std::optional<CompleteBipartite> find_large_complete_bipartite(const Graph& g, std::size_t r,
                                                                      std::optional<VertexSet> within = {},
                                                                      std::size_t node_budget = 20'000) {
  if (r < 1) throw InvalidArgument("K_{r,s} needs r >= 1");
  const VertexSet pool = within ? *within : g.vertices();
  std::optional<CompleteBipartite> best;
  std::size_t best_s = 0;
  // Bound: a branch can only be useful if its common set beats the best.
  std::vector<Vertex> cand = pool.to_vector();
  std::sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) {
    const std::size_t da = g.count_in(a, pool), db = g.count_in(b, pool);
    return da != db ? da > db : a < b;
  });
  std::vector<Vertex> chosen;
  auto rec = [&](auto&& self, std::size_t from, const VertexSet& common) -> void {
    if (chosen.size() == r) {
      const std::size_t c = common.count();
      if (c > best_s) {
        best_s = c;
        best = CompleteBipartite{VertexSet::from(g.order(), chosen), common};
      }
      return;
    }
    for (std::size_t i = from; i + (r - chosen.size()) <= cand.size(); ++i) {
      if (node_budget == 0) return;
      --node_budget;
      VertexSet next = common & g.neighbourhood(cand[i]);
      if (next.count() <= best_s) continue;
      chosen.push_back(cand[i]);
      self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  rec(rec, 0, pool);
  return best;
}

// ---------------------------------------------------------------------------
// Seeding a high-degree K_{r,s}

struct HighDegreeSeed {
  VertexSet seed;
  VertexSet closure;
  std::size_t s = 0;            // size of the S side used; 0 for the low-degree branch
  bool low_degree_branch = false;
  Transcript transcript;

  double fraction() const { return static_cast<double>(closure.count()) / static_cast<double>(closure.universe()); }
};

inline Int ore_margin(const Graph& g, std::size_t r, Int slack_m) {
  const ExtendedCount d = ore_degree_sum(g);
  if (d.is_infinite()) return std::numeric_limits<Int>::max();
  return as_int(d.value()) - (as_int(g.order()) + 2 * as_int(r) - slack_m);
}

// Seeds the r-side of a large K_{r,s} among vertices of degree at least
// ceil((n-m)/2)+r. If at least r vertices have lower degree (they form a
// clique under the degree condition), r of them are seeded first and the
// K_{r,s} is sought outside their closure.
inline HighDegreeSeed infect_from_high_degree_krs(const Graph& g, std::size_t r, Int slack_m,
                                                  std::size_t node_budget = 20'000) {
  check_threshold(r);
  const std::size_t n = g.order();
  HighDegreeSeed out{VertexSet(n), VertexSet(n), 0, false, {}};
  const Int margin = ore_margin(g, r, slack_m);
  if (margin < 0)
    out.transcript.warn("degree condition", "D(G) is " + std::to_string(-margin) + " below n+2r-m; proceeding");
  const Int half = (as_int(n) - slack_m + 1) / 2;  // ceil((n-m)/2) for n-m >= 0
  const Int threshold = (as_int(n) >= slack_m ? half : -((slack_m - as_int(n)) / 2)) + as_int(r);
  VertexSet low(n), high(n);
  for (Vertex v = 0; v < n; ++v) (as_int(g.degree(v)) < threshold ? low : high).insert(v);
  out.transcript.info("degree split", std::to_string(low.count()) + " low, " + std::to_string(high.count()) +
                                          " high (threshold " + std::to_string(threshold) + ")");
  VertexSet within = high;
  if (low.count() >= r) {
    out.low_degree_branch = true;
    out.seed = low.lowest(r);
    out.closure = closure(g, r, out.seed);
    out.transcript.info("low-degree seed", "closure " + std::to_string(out.closure.count()) + " of " +
                                               std::to_string(n));
    if (out.closure.is_full()) return out;
    within -= out.closure;
  }
  auto kb = find_large_complete_bipartite(g, r, within, node_budget);
  if (!kb) {
    if (out.low_degree_branch) {
      out.transcript.warn("K_{r,s} search", "none outside the low-degree closure; keeping that closure");
      return out;
    }
    throw HypothesisFailure("K_{r,s} search", "no K_{" + std::to_string(r) + ",s} among high-degree vertices and " +
                                                  "fewer than r low-degree vertices");
  }
  VertexSet cl = closure(g, r, kb->r_side);
  if (!out.low_degree_branch || cl.count() >= out.closure.count()) {
    out.seed = kb->r_side;
    out.closure = std::move(cl);
    out.s = kb->s_side.count();
    out.low_degree_branch = false;
  }
  out.transcript.info("K_{r,s} seed", "s = " + std::to_string(kb->s_side.count()) + ", closure " +
                                          std::to_string(out.closure.count()) + " of " + std::to_string(n));
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition into a closed set A, its high cross-degree part C, and A^c

struct OreDecomposition {
  VertexSet a;
  VertexSet c;
  Int slack_m = 0;
  Int i = 0;    // min deg over A\C  = |A|   + base + i
  Int i_c = 0;  // min deg over A^c  = |A^c| + base + i_c
  Int base = 0;
  std::size_t iterations = 0;
  bool checks_passed = true;

  VertexSet complement() const { return a.complement(); }
  VertexSet core() const { return a - c; }
};

struct DecomposeOptions {
  Int base = 0;                         // degree-offset base for i and i_c
  std::size_t samples = 100;            // random subsets per sampled check
  std::uint64_t exhaustive_limit = 10'000;
  std::uint64_t rng_seed = 1;
  std::size_t max_iterations = 64;
  std::size_t node_budget = 20'000;
};

struct DecomposeResult {
  std::optional<VertexSet> percolating;  // a percolating set of size <= l
  std::optional<OreDecomposition> decomposition;
  Transcript transcript;
};

namespace detail {

inline VertexSet high_cross(const Graph& g, const VertexSet& a, std::size_t r) {
  const VertexSet out = a.complement();
  VertexSet c(g.order());
  a.for_each([&](Vertex v) {
    if (g.count_in(v, out) >= r) c.insert(v);
  });
  return c;
}

inline std::size_t min_degree_over(const Graph& g, const VertexSet& s) {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  s.for_each([&](Vertex v) { m = std::min(m, g.degree(v)); });
  return m;
}

// Checks that every r-subset of `part` (all of them if few, otherwise a
// seeded sample) has a closure containing `target`. Returns the number of
// subsets checked, or the first failing subset.
struct SampleOutcome {
  std::size_t checked = 0;
  std::optional<VertexSet> failure;
  bool exhaustive = false;
};

inline SampleOutcome check_r_subsets(const Graph& g, std::size_t r, const VertexSet& part, const VertexSet& target,
                                     std::size_t samples, std::uint64_t exhaustive_limit, Rng& rng) {
  SampleOutcome out;
  const std::vector<Vertex> members = part.to_vector();
  if (members.size() < r) return out;
  ClosureEngine e(g, r);
  auto test = [&](const std::vector<Vertex>& pick) {
    ++out.checked;
    e.run(std::span<const Vertex>(pick));
    bool ok = true;
    target.for_each([&](Vertex v) { ok = ok && e.infected(v); });
    if (!ok) out.failure = VertexSet::from(g.order(), pick);
    return ok;
  };
  if (binomial(members.size(), r) <= exhaustive_limit) {
    out.exhaustive = true;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    std::vector<Vertex> pick(r);
    do {
      for (std::size_t i = 0; i < r; ++i) pick[i] = members[idx[i]];
      if (!test(pick)) return out;
    } while (next_colex(idx, members.size()));
    return out;
  }
  for (std::size_t t = 0; t < samples; ++t) {
    std::vector<Vertex> pick;
    for (std::size_t i : rng.sample(members.size(), r)) pick.push_back(members[i]);
    std::sort(pick.begin(), pick.end());
    if (!test(pick)) return out;
  }
  return out;
}

}  // namespace detail

// Either finds a percolating set of size <= l, or a closed set A with
//   C = {v in A : deg_{A^c}(v) >= r},
// r-subsets of A^c infecting A^c u C and r-subsets of A\C infecting A (both
// checked on samples). A is replaced by <A\C> until stable.
inline DecomposeResult decompose(const Graph& g, std::size_t r, std::size_t l, Int slack_m,
                                 const DecomposeOptions& opt = {}) {
  check_threshold(r);
  if (r < 2) throw InvalidArgument("decomposition needs r >= 2");
  if (l < r) throw InvalidArgument("decomposition needs l >= r");
  const std::size_t n = g.order();
  DecomposeResult res;
  Transcript& tr = res.transcript;
  if (ore_margin(g, r, slack_m) < 0) tr.warn("degree condition", "D(G) < n+2r-m; invariants may fail");

  HighDegreeSeed hd = infect_from_high_degree_krs(g, r, slack_m, opt.node_budget);
  tr.append(hd.transcript);
  if (hd.closure.is_full()) {
    res.percolating = hd.seed;
    tr.info("percolating", "seed of size " + std::to_string(r) + " percolates");
    return res;
  }
  VertexSet a = hd.closure;
  VertexSet c = detail::high_cross(g, a, r);

  // Large C: r seeds outside A plus l-r in A\C.
  const Int c_trigger = slack_m + as_int(r) - as_int(l) - 3;
  if (as_int(c.count()) >= c_trigger && a.complement().count() >= r && (a - c).count() >= l - r) {
    VertexSet seed = a.complement().lowest(r) | (a - c).lowest(l - r);
    if (percolates(g, r, seed)) {
      res.percolating = seed;
      tr.info("large C", "|C| = " + std::to_string(c.count()) + "; seed across the cut percolates");
      return res;
    }
    tr.warn("large C", "|C| = " + std::to_string(c.count()) + " but the cut seed did not percolate");
  }

  std::size_t it = 0;
  for (; it < opt.max_iterations; ++it) {
    const VertexSet core = a - c;
    if (core.count() < r) {
      tr.fail("iteration", "A\\C has fewer than r vertices");
      return res;
    }
    VertexSet next = closure(g, r, core);
    if (next == a) break;
    a = std::move(next);
    c = detail::high_cross(g, a, r);
  }
  tr.info("iteration", std::to_string(it) + " refinement step(s); |A| = " + std::to_string(a.count()) +
                           ", |C| = " + std::to_string(c.count()));

  OreDecomposition d;
  d.a = a;
  d.c = c;
  d.slack_m = slack_m;
  d.base = opt.base;
  d.iterations = it;
  const VertexSet out = a.complement();
  const VertexSet core = a - c;
  d.i = as_int(detail::min_degree_over(g, core)) - as_int(a.count()) - opt.base;
  d.i_c = out.empty() ? 0 : as_int(detail::min_degree_over(g, out)) - as_int(out.count()) - opt.base;

  if (!is_closed(g, r, a)) {
    tr.fail("invariant", "A is not closed");
    d.checks_passed = false;
  }
  const Int c_bound = slack_m + as_int(r) - as_int(l) - 4;
  if (as_int(c.count()) > c_bound) {
    tr.fail("invariant", "|C| = " + std::to_string(c.count()) + " exceeds m+r-l-4 = " + std::to_string(c_bound));
    d.checks_passed = false;
  }
  Rng rng(opt.rng_seed);
  auto sampled = [&](const std::string& name, const VertexSet& part, const VertexSet& target) {
    const auto o = detail::check_r_subsets(g, r, part, target, opt.samples, opt.exhaustive_limit, rng);
    if (o.failure) {
      tr.fail(name, "subset " + o.failure->to_string() + " does not infect the target");
      d.checks_passed = false;
    } else {
      tr.info(name, std::to_string(o.checked) + (o.exhaustive ? " subsets (all)" : " sampled subsets") + " pass");
    }
  };
  sampled("outside subsets", out, out | c);
  sampled("core subsets", core, a);
  res.decomposition = std::move(d);
  (void)n;
  return res;
}

// ---------------------------------------------------------------------------
// Anchored seeds

struct SeedPlan {
  VertexSet seed;
  std::vector<Vertex> anchors_u;
  std::vector<Vertex> anchors_w;  // W_0 members added to serve anchors, in order
  std::string target_side;
  VertexSet u0;
  VertexSet w0;
};

struct AnchorOptions {
  std::optional<std::size_t> nonneighbour_cap;  // default 2(l + f(l-r))
  std::optional<VertexSet> focus;               // W_0 drawn from here first
  std::optional<Vertex> exempt;                 // may stay uninfected; never an anchor
  std::size_t node_budget = 4000;
};

namespace detail {

// k anchors u_1..u_k forming a clique in U, r-k common neighbours U_0 in U,
// and W_0 in W with |W_0| <= l-r+k such that u_i has >= k-i+1 neighbours in
// W_0. Then u_i has r infected neighbours once u_1..u_{i-1} are infected.
// Anchors are tried in an order that prefers reuse of W_0 members.
inline SeedPlan anchored_seed(const Graph& g, const VertexSet& u, const VertexSet& w, std::size_t r, std::size_t l,
                              std::size_t k, const AnchorOptions& opt, const std::string& side) {
  const std::size_t n = g.order();
  if (k > r) throw HypothesisFailure("anchor count", "more anchors than r");
  const std::size_t w_limit = l - r + k;
  const std::size_t w_target = std::min(w.count(), w_limit);
  const VertexSet pool = opt.focus ? (*opt.focus & w) : w;
  VertexSet usable = u;
  if (opt.exempt) usable.erase(*opt.exempt);

  std::size_t budget = opt.node_budget;
  std::vector<Vertex> anchors;
  std::vector<Vertex> added;
  VertexSet w0(n);
  std::optional<SeedPlan> result;

  auto finish = [&](const VertexSet& common) -> bool {
    if (common.count() < r - k) return false;
    SeedPlan p;
    p.anchors_u = anchors;
    p.anchors_w = added;
    p.target_side = side;
    p.u0 = k == 0 ? usable.lowest(r) : common.lowest(r - k);
    if (p.u0.count() < r - k) return false;
    p.w0 = w0;
    for (Vertex v = pool.first(); v < n && p.w0.count() < w_target; v = pool.next(v + 1)) p.w0.insert(v);
    for (Vertex v = w.first(); v < n && p.w0.count() < w_target; v = w.next(v + 1)) p.w0.insert(v);
    p.seed = p.u0 | p.w0;
    const VertexSet cl = closure(g, r, p.seed);
    if (!usable.is_subset_of(cl) || cl.intersection_count(w) < w_target) return false;
    result = std::move(p);
    return true;
  };

  auto rec = [&](auto&& self, const VertexSet& common) -> bool {
    if (budget == 0) return false;
    --budget;
    const std::size_t i = anchors.size();
    if (i == k) return finish(common);
    const std::size_t need = k - i;
    std::vector<std::pair<std::size_t, Vertex>> cand;
    common.for_each([&](Vertex x) {
      if (!usable.contains(x)) return;
      if (g.count_in(x, pool) < need) return;
      cand.emplace_back(g.count_in(x, w0), x);
    });
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [shared, x] : cand) {
      VertexSet next = common & g.neighbourhood(x);
      if (next.count() < (r - k) + (need - 1)) continue;
      const VertexSet saved = w0;
      const std::size_t saved_added = added.size();
      std::size_t have = std::min(shared, need);
      const VertexSet fresh = g.neighbourhood(x) & pool;
      for (Vertex v = fresh.first(); v < n && have < need; v = fresh.next(v + 1)) {
        if (w0.contains(v)) continue;
        w0.insert(v);
        added.push_back(v);
        ++have;
      }
      if (have >= need && w0.count() <= w_limit) {
        anchors.push_back(x);
        if (self(self, next)) return true;
        anchors.pop_back();
      }
      w0 = saved;
      added.resize(saved_added);
      if (budget == 0) return false;
    }
    return false;
  };
  rec(rec, usable);
  if (!result)
    throw HypothesisFailure("anchor selection", "no " + std::to_string(k) + "-anchor seed on " + side +
                                                    " within the search budget");
  return std::move(*result);
}

inline std::size_t nonneighbour_cap(std::size_t r, std::size_t l, const AnchorOptions& opt) {
  return opt.nonneighbour_cap.value_or(2 * (l + f_threshold(l >= r ? l - r : 0)));
}

inline void check_sides(const Graph& g, const VertexSet& u, const VertexSet& w) {
  if (u.universe() != g.order() || w.universe() != g.order()) throw InvalidArgument("sides over a different universe");
  if (u.intersects(w)) throw InvalidArgument("sides must be disjoint");
  if (u.empty()) throw HypothesisFailure("sides", "U is empty");
}

}  // namespace detail

// Seed of size <= l infecting U and min(|W|, j+l-r) vertices of W, from a
// j-clique of anchors in U.
inline SeedPlan build_seed_cross(const Graph& g, const VertexSet& u, const VertexSet& w, std::size_t r, std::size_t l,
                                 std::size_t j, const AnchorOptions& opt = {}) {
  check_threshold(r);
  detail::check_sides(g, u, w);
  if (l < r) throw InvalidArgument("need l >= r");
  const std::size_t f = f_threshold(l - r);
  if (j + 2 > f) throw HypothesisFailure("cross hypotheses", "j must be at most f(l-r)-2");
  const std::size_t cap = detail::nonneighbour_cap(r, l, opt);
  const std::size_t usize = u.count();
  std::optional<Vertex> bad;
  u.for_each([&](Vertex x) {
    if (bad || (opt.exempt && x == *opt.exempt)) return;
    if (g.count_in(x, w) < j || usize - 1 - g.count_in(x, u) > cap) bad = x;
  });
  if (bad)
    throw HypothesisFailure("cross hypotheses", "vertex " + std::to_string(*bad) +
                                                    " has too few W-neighbours or too many U-non-neighbours");
  return detail::anchored_seed(g, u, w, r, l, j, opt, "cross");
}

// Seed of size exactly l infecting U\{v} and l-r+f(l-r)-1 vertices of W, from
// f(l-r)-1 anchors chained through shared W-neighbours (cycles plus at most
// one path). v is the only vertex of U allowed two or more U-non-neighbours.
inline SeedPlan build_seed_path_cycles(const Graph& g, const VertexSet& u, const VertexSet& w, std::size_t r,
                                       std::size_t l, AnchorOptions opt = {}) {
  check_threshold(r);
  detail::check_sides(g, u, w);
  if (l < r) throw InvalidArgument("need l >= r");
  const std::size_t f = f_threshold(l - r);
  if (w.count() + 1 < l - r + f) throw HypothesisFailure("walk hypotheses", "|W| < l-r+f(l-r)-1");
  if (r + 1 < f) throw HypothesisFailure("walk hypotheses", "r < f(l-r)-1");
  std::optional<Vertex> loose;
  const std::size_t usize = u.count();
  u.for_each([&](Vertex x) {
    if (usize - 1 - g.count_in(x, u) >= 2) {
      if (loose) throw HypothesisFailure("walk hypotheses", "two vertices of U have >= 2 U-non-neighbours");
      loose = x;
    }
  });
  u.for_each([&](Vertex x) {
    if (g.count_in(x, w) + 1 < f) throw HypothesisFailure("walk hypotheses", "a U vertex has < f(l-r)-1 W-neighbours");
  });
  if (loose) opt.exempt = loose;
  SeedPlan p = detail::anchored_seed(g, u, w, r, l, f - 1, opt, "walk");
  if (p.seed.count() > l) throw AuditFailure("walk seed exceeds l");
  return p;
}

// ---------------------------------------------------------------------------
// Pipelines

enum class PipelineStatus { found, refused, diagnostic };

inline const char* to_string(PipelineStatus s) {
  switch (s) {
    case PipelineStatus::found: return "found";
    case PipelineStatus::refused: return "refused";
    case PipelineStatus::diagnostic: return "diagnostic";
  }
  return "unknown";
}

struct PipelineResult {
  PipelineStatus status = PipelineStatus::diagnostic;
  std::optional<VertexSet> seed;
  std::string fired_case;
  Transcript transcript;
};

struct PipelineOptions {
  bool force = false;  // proceed when the degree condition fails
  std::uint64_t work_cap = kDefaultWorkCap;  // exhaustive fallback budget
  std::uint64_t rng_seed = 1;
  std::size_t anchor_budget = 4000;
  std::size_t node_budget = 20'000;
};

namespace detail {

// Pads `seed` with the lowest unused vertices up to l and replays it.
inline bool finalize(const Graph& g, std::size_t r, std::size_t l, VertexSet seed, PipelineResult& res,
                     const std::string& which) {
  for (Vertex v = 0; v < g.order() && seed.count() < l; ++v) seed.insert(v);
  if (seed.count() > l) {
    res.transcript.fail(which, "seed of size " + std::to_string(seed.count()) + " exceeds l");
    return false;
  }
  if (!percolates(g, r, seed)) {
    res.transcript.warn(which, "seed " + seed.to_string() + " fails engine replay");
    return false;
  }
  res.status = PipelineStatus::found;
  res.seed = std::move(seed);
  res.fired_case = which;
  res.transcript.info(which, "engine-validated seed of size " + std::to_string(res.seed->count()));
  return true;
}

inline void exhaustive_fallback(const Graph& g, std::size_t r, std::size_t l, const PipelineOptions& opt,
                                PipelineResult& res) {
  SolverOptions so;
  so.work_cap = opt.work_cap;
  const SolveResult s = exists_percolating_set(g, r, l, so);
  if (s.status == SolveStatus::found) {
    finalize(g, r, l, *s.witness, res, "exhaustive");
  } else if (s.status == SolveStatus::absent) {
    res.status = PipelineStatus::diagnostic;
    res.transcript.fail("exhaustive", "no percolating set of size " + std::to_string(l) + " exists");
  } else {
    res.status = PipelineStatus::diagnostic;
    res.transcript.fail("exhaustive", "refused: " + s.message);
  }
}

inline void warn_small_n(const Graph& g, std::size_t r, std::size_t l, Transcript& tr) {
  if (g.order() < 20 * (l + r))
    tr.warn("size", "n = " + std::to_string(g.order()) + " < 20(l+r); large-n hypotheses may fail");
}

struct Attempt {
  std::string name;
  std::function<SeedPlan()> build;
};

inline bool run_attempts(const Graph& g, std::size_t r, std::size_t l, const std::vector<Attempt>& attempts,
                         PipelineResult& res) {
  for (const auto& a : attempts) {
    try {
      SeedPlan p = a.build();
      res.transcript.info(a.name, "plan: |U_0| = " + std::to_string(p.u0.count()) + ", |W_0| = " +
                                      std::to_string(p.w0.count()) + ", anchors " + std::to_string(p.anchors_u.size()));
      if (finalize(g, r, l, p.seed, res, a.name)) return true;
    } catch (const HypothesisFailure& e) {
      res.transcript.warn(a.name, e.what());
    }
  }
  return false;
}

// Vertices of `side` with at least `t` neighbours in `other`.
inline std::vector<Vertex> heavy(const Graph& g, const VertexSet& side, const VertexSet& other, Int t) {
  std::vector<Vertex> out;
  side.for_each([&](Vertex v) {
    if (as_int(g.count_in(v, other)) >= t) out.push_back(v);
  });
  return out;
}

inline VertexSet pair_focus(const Graph& g, Vertex a, Vertex b, const VertexSet& side) {
  VertexSet f = g.neighbourhood(a) & g.neighbourhood(b) & side;
  f.erase(a);
  f.erase(b);
  return f;
}

inline void degree_gate(const Graph& g, Int threshold, const PipelineOptions& opt, PipelineResult& res,
                        const std::string& label) {
  const ExtendedCount d = ore_degree_sum(g);
  const bool ok = d.is_infinite() || as_int(d.value()) >= threshold;
  if (ok) {
    res.transcript.info("degree condition", "D(G) = " + d.to_string() + " >= " + std::to_string(threshold));
    return;
  }
  const std::string msg = "D(G) = " + d.to_string() + " < " + label + " = " + std::to_string(threshold);
  if (!opt.force) {
    res.status = PipelineStatus::refused;
    res.transcript.fail("degree condition", msg);
    return;
  }
  res.transcript.warn("degree condition", msg + "; forced");
}

}  // namespace detail

// Size-l percolating set under D(G) >= n+4r-2l-2f(l-r)-1. The case on
// (i, i_c, |C|) selects which side receives the anchors; every candidate
// seed is replayed through the engine.
inline PipelineResult find_percolating_set_ore(const Graph& g, std::size_t r, std::size_t l,
                                               const PipelineOptions& opt = {}) {
  check_threshold(r);
  if (l < r) throw InvalidArgument("need l >= r");
  if (l > g.order()) throw InvalidArgument("l exceeds n");
  PipelineResult res;
  auto& tr = res.transcript;
  const Int n = as_int(g.order()), R = as_int(r), L = as_int(l);
  const std::size_t f = f_threshold(l - r);
  const Int F = as_int(f);
  if (2 * R < L + 2 * F - 1)
    tr.warn("parameter range", "2r < l+2f(l-r)-1; the guarantee does not cover these parameters");
  detail::degree_gate(g, n + 4 * R - 2 * L - 2 * F - 1, opt, res, "n+4r-2l-2f(l-r)-1");
  if (res.status == PipelineStatus::refused) return res;
  detail::warn_small_n(g, r, l, tr);
  if (r < 2) {
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }

  const Int slack = 2 * L - 2 * R + 2 * F + 1;
  DecomposeOptions dopt;
  dopt.base = 2 * R - L - 2 * F;
  dopt.rng_seed = opt.rng_seed;
  dopt.node_budget = opt.node_budget;
  DecomposeResult dec;
  try {
    dec = decompose(g, r, l, slack, dopt);
  } catch (const HypothesisFailure& e) {
    tr.fail("decomposition", e.what());
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }
  tr.append(dec.transcript);
  if (dec.percolating) {
    detail::finalize(g, r, l, *dec.percolating, res, "decomposition");
    if (res.status == PipelineStatus::found) return res;
  }
  if (!dec.decomposition) {
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }
  const OreDecomposition& d = *dec.decomposition;
  const VertexSet a = d.a, c = d.c, out = d.complement(), core = d.core();
  const Int i = d.i, ic = d.i_c, cs = as_int(c.count());
  tr.info("offsets", "i = " + std::to_string(i) + ", i_c = " + std::to_string(ic) + ", |C| = " + std::to_string(cs));
  const Int heavy_t = 2 * R - L - F + 2;
  AnchorOptions ao;
  ao.node_budget = opt.anchor_budget;
  auto cross = [&](const VertexSet& u, const VertexSet& w, Int j, std::optional<VertexSet> focus = {}) {
    return [&g, u, w, r, l, j, focus, ao]() {
      AnchorOptions o = ao;
      o.focus = focus;
      return build_seed_cross(g, u, w, r, l, static_cast<std::size_t>(std::max<Int>(j, 0)), o);
    };
  };
  auto walk = [&](const VertexSet& u, const VertexSet& w) {
    return [&g, u, w, r, l, ao]() { return build_seed_path_cycles(g, u, w, r, l, ao); };
  };

  std::vector<detail::Attempt> plan;
  if (i <= F - 2) {
    plan.push_back({"core-to-outside", cross(core, out, i)});
  } else if (ic <= F - 2 || (ic == F - 1 && cs >= 1) || (ic == F && cs >= 2)) {
    plan.push_back({"outside-to-core", cross(out, core, ic - cs)});
  } else if (ic >= F + 1) {
    plan.push_back({"core-to-outside-full", cross(core, out, F - 2)});
  } else if (cs == 0) {
    const auto hv = detail::heavy(g, a, out, heavy_t);
    if (hv.size() >= 2) {
      plan.push_back({"outside-to-pair", cross(out, a, F - 2, detail::pair_focus(g, hv[0], hv[1], a))});
    } else if (ic >= F) {
      plan.push_back({"core-walk", walk(a, out)});
    } else if (i != F - 1) {
      plan.push_back({"outside-walk", walk(out, a)});
    } else {
      plan.push_back({"core-walk-tight", walk(a, out)});
    }
  } else if (ic == F && cs == 1) {
    const auto hv = detail::heavy(g, out, a, heavy_t);
    if (!hv.empty()) {
      VertexSet focus = g.neighbourhood(hv[0]) & out;
      plan.push_back({"core-to-outside-hub", cross(core, out, F - 2, focus)});
    } else {
      plan.push_back({"outside-walk-clique", walk(out, core)});
    }
  }
  if (plan.empty()) tr.warn("dispatch", "no case matches (i, i_c, |C|)");
  // Remaining constructions act as fallbacks in a fixed order.
  plan.push_back({"fallback core-to-outside", cross(core, out, std::min<Int>(std::max<Int>(i, 0), F - 2))});
  plan.push_back({"fallback outside-to-core", cross(out, core, std::min<Int>(std::max<Int>(ic - cs, 0), F - 2))});
  plan.push_back({"fallback core-walk", walk(a, out)});
  plan.push_back({"fallback outside-walk", walk(out, a)});
  if (detail::run_attempts(g, r, l, plan, res)) return res;
  tr.warn("dispatch", "all constructions failed");
  detail::exhaustive_fallback(g, r, l, opt, res);
  return res;
}

// Size-l percolating set under D(G) >= n+2r-l-2 for l-r+2f(l-r)-2 >= r >=
// l-r+2.
inline PipelineResult find_percolating_set_big_l(const Graph& g, std::size_t r, std::size_t l,
                                                 const PipelineOptions& opt = {}) {
  check_threshold(r);
  if (l < r) throw InvalidArgument("need l >= r");
  if (l > g.order()) throw InvalidArgument("l exceeds n");
  PipelineResult res;
  auto& tr = res.transcript;
  const Int n = as_int(g.order()), R = as_int(r), L = as_int(l);
  const std::size_t f = f_threshold(l - r);
  const Int F = as_int(f);
  if (!(L - R + 2 * F - 2 >= R && R >= L - R + 2))
    tr.warn("parameter range", "need l-r+2f(l-r)-2 >= r >= l-r+2; the guarantee does not cover these parameters");
  detail::degree_gate(g, n + 2 * R - L - 2, opt, res, "n+2r-l-2");
  if (res.status == PipelineStatus::refused) return res;
  detail::warn_small_n(g, r, l, tr);
  if (r < 2) {
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }

  DecomposeOptions dopt;
  dopt.base = -1;
  dopt.rng_seed = opt.rng_seed;
  dopt.node_budget = opt.node_budget;
  DecomposeResult dec;
  try {
    dec = decompose(g, r, l, L + 2, dopt);
  } catch (const HypothesisFailure& e) {
    tr.fail("decomposition", e.what());
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }
  tr.append(dec.transcript);
  if (dec.percolating) {
    detail::finalize(g, r, l, *dec.percolating, res, "decomposition");
    if (res.status == PipelineStatus::found) return res;
  }
  if (!dec.decomposition) {
    detail::exhaustive_fallback(g, r, l, opt, res);
    return res;
  }
  const OreDecomposition& d = *dec.decomposition;
  const VertexSet a = d.a, c = d.c, out = d.complement(), core = d.core();
  const Int i = d.i, ic = d.i_c, cs = as_int(c.count());
  tr.info("offsets", "i = " + std::to_string(i) + ", i_c = " + std::to_string(ic) + ", |C| = " + std::to_string(cs));
  const Int heavy_t = 2 * R - L - F + 2;
  AnchorOptions ao;
  ao.node_budget = opt.anchor_budget;
  auto cross = [&](const VertexSet& u, const VertexSet& w, Int j, std::optional<VertexSet> focus = {}) {
    return [&g, u, w, r, l, j, focus, ao]() {
      AnchorOptions o = ao;
      o.focus = focus;
      return build_seed_cross(g, u, w, r, l, static_cast<std::size_t>(std::max<Int>(j, 0)), o);
    };
  };
  auto walk = [&](const VertexSet& u, const VertexSet& w) {
    return [&g, u, w, r, l, ao]() { return build_seed_path_cycles(g, u, w, r, l, ao); };
  };

  std::vector<detail::Attempt> plan;
  if (i <= F - 2) {
    plan.push_back({"core-to-outside", cross(core, out, i)});
  } else if (ic <= F - 2) {
    plan.push_back({"outside-to-core", cross(out, core, ic - cs)});
  } else if (cs >= 1) {
    const Vertex v = c.first();
    VertexSet rest = a;
    rest.erase(v);
    plan.push_back({"outside-to-core-minus-C", cross(out, rest, F - 2)});
  } else {
    const auto hv_out = detail::heavy(g, out, a, heavy_t);
    const auto hv_in = detail::heavy(g, a, out, heavy_t);
    if (hv_out.size() >= 2)
      plan.push_back({"core-to-pair", cross(core, out, F - 2, detail::pair_focus(g, hv_out[0], hv_out[1], out))});
    if (hv_in.size() >= 2)
      plan.push_back({"outside-to-pair", cross(out, a, F - 2, detail::pair_focus(g, hv_in[0], hv_in[1], a))});
    plan.push_back({"clique-pair-walk", walk(a, out)});
  }
  plan.push_back({"fallback core-to-outside", cross(core, out, std::min<Int>(std::max<Int>(i, 0), F - 2))});
  plan.push_back({"fallback outside-to-core", cross(out, core, std::min<Int>(std::max<Int>(ic - cs, 0), F - 2))});
  plan.push_back({"fallback core-walk", walk(a, out)});
  plan.push_back({"fallback outside-walk", walk(out, a)});
  if (detail::run_attempts(g, r, l, plan, res)) return res;
  tr.warn("dispatch", "all constructions failed");
  detail::exhaustive_fallback(g, r, l, opt, res);
  return res;
}

// Seed of size <= k*r under delta(G) >= ceil(n/(k+1)) + k(r-1) - 1: seed the
// r-side of a K_{r,kr}, remove its closure, recurse with k-1.
inline PipelineResult find_percolating_set_stacked(const Graph& g, std::size_t r, std::size_t k,
                                                   const PipelineOptions& opt = {}) {
  check_threshold(r);
  if (k < 1) throw InvalidArgument("need k >= 1");
  PipelineResult res;
  auto& tr = res.transcript;
  const std::size_t n = g.order();
  const std::size_t need = (n + k) / (k + 1) + k * (r - 1) - 1;
  const std::size_t delta = min_degree(g);
  if (delta < need) {
    const std::string msg = "min degree " + std::to_string(delta) + " < ceil(n/(k+1))+k(r-1)-1 = " + std::to_string(need);
    if (!opt.force) {
      res.status = PipelineStatus::refused;
      tr.fail("degree condition", msg);
      return res;
    }
    tr.warn("degree condition", msg + "; forced");
  } else {
    tr.info("degree condition", "min degree " + std::to_string(delta) + " >= " + std::to_string(need));
  }

  VertexSet rest = g.vertices();
  VertexSet seed(n);
  for (std::size_t level = k; level >= 1 && !rest.empty(); --level) {
    const std::string step = "level " + std::to_string(level);
    const InducedSubgraph h = induced_subgraph(g, rest);
    const std::size_t hn = h.graph.order();
    VertexSet local_seed(hn);
    if (hn <= r) {
      local_seed = VertexSet::full(hn);
    } else if (auto kb = find_complete_bipartite(h.graph, r, level * r, std::nullopt, opt.node_budget)) {
      local_seed = kb->r_side;
    } else {
      tr.fail(step, "no K_{r," + std::to_string(level * r) + "} in the remaining graph");
      res.status = PipelineStatus::diagnostic;
      return res;
    }
    const VertexSet local_closure = closure(h.graph, r, local_seed);
    local_seed.for_each([&](Vertex v) { seed.insert(h.to_parent[v]); });
    VertexSet infected(n);
    local_closure.for_each([&](Vertex v) { infected.insert(h.to_parent[v]); });
    tr.info(step, "closure " + std::to_string(infected.count()) + " of " + std::to_string(hn) + " remaining");
    if (percolates(g, r, seed)) break;
    if (level == 1) {
      tr.fail(step, "the last level did not infect its remaining graph");
      res.status = PipelineStatus::diagnostic;
      return res;
    }
    const std::size_t big = (hn + level) / (level + 1);
    if (infected.count() < big)
      tr.warn(step, "closure smaller than ceil(n'/(k'+1)) = " + std::to_string(big) + "; n may be too small");
    rest -= infected;
  }
  if (seed.count() > k * r) throw AuditFailure("stacked seed exceeds k*r");
  if (!percolates(g, r, seed)) {
    tr.fail("replay", "accumulated seed does not percolate");
    res.status = PipelineStatus::diagnostic;
    return res;
  }
  res.status = PipelineStatus::found;
  res.seed = seed;
  res.fired_case = "stacked";
  tr.info("replay", "engine-validated seed of size " + std::to_string(seed.count()));
  return res;
}

}  // namespace bootperc
