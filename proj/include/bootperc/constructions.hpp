#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bootperc/bootstrap.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/random.hpp"
#include "bootperc/random_graphs.hpp"

namespace bootperc {

// ---------------------------------------------------------------------------
// Threshold function

inline std::uint64_t isqrt(std::uint64_t x) {
  if (x < 2) return x;
  std::uint64_t r = x;
  std::uint64_t y = (r + 1) / 2;
  while (y < r) {
    r = y;
    y = (r + x / r) / 2;
  }
  return r;
}

// Largest f with (f-2)(f-3) <= 2k. Equivalent to (2f-5)^2 <= 8k+1.
inline std::size_t f_threshold(std::size_t k) {
  const std::uint64_t two_k = 2 * static_cast<std::uint64_t>(k);
  std::uint64_t f = (isqrt(8 * static_cast<std::uint64_t>(k) + 1) + 5) / 2;
  while ((f - 1) * (f - 2) <= two_k) ++f;
  while ((f - 2) * (f - 3) > two_k) --f;
  return static_cast<std::size_t>(f);
}

// ---------------------------------------------------------------------------
// Audit log

struct AuditEntry {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

// Records post-condition checks; a failed check throws AuditFailure after it
// is recorded.
class AuditLog {
 public:
  void expect(const std::string& name, const std::string& expected, const std::string& actual, bool ok) {
    entries_.push_back({name, expected, actual, ok});
    if (!ok) throw AuditFailure(name + ": expected " + expected + ", got " + actual);
  }
  void expect_eq(const std::string& name, const ExtendedCount& expected, const ExtendedCount& actual) {
    expect(name, expected.to_string(), actual.to_string(), expected == actual);
  }
  void expect_ge(const std::string& name, const ExtendedCount& bound, const ExtendedCount& actual) {
    expect(name, ">= " + bound.to_string(), actual.to_string(), actual >= bound);
  }
  void note(const std::string& name, const std::string& value) { entries_.push_back({name, value, value, true}); }

  const std::vector<AuditEntry>& entries() const { return entries_; }

 private:
  std::vector<AuditEntry> entries_;
};

namespace detail {
inline AuditLog& sink(AuditLog* log) {
  thread_local AuditLog scratch;
  if (log) return *log;
  scratch = AuditLog{};
  return scratch;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Small families

inline Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return b.build();
}

inline Graph edgeless_graph(std::size_t n) { return GraphBuilder(n).build(); }

inline Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return b.build();
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return b.build();
}

// Left side 0..a-1, right side a..a+b-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  GraphBuilder g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g.build();
}

// Centre 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

// Outer 5-cycle 0..4, inner pentagram 5..9, spoke i ~ i+5.
inline Graph petersen_graph() {
  GraphBuilder b(10);
  for (Vertex i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(5 + i, 5 + (i + 2) % 5);
    b.add_edge(i, 5 + i);
  }
  return b.build();
}

// [n]^d with vertex index sum_k x_k n^k; x ~ y iff they differ by 1 in one
// coordinate.
inline Graph grid_graph(std::size_t n, std::size_t d) {
  if (n < 2 || d < 1) throw InvalidArgument("grid needs n >= 2 and d >= 1");
  std::size_t order = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (order > 100'000 / n) throw InvalidArgument("grid too large for dense rows");
    order *= n;
  }
  GraphBuilder b(order);
  for (Vertex v = 0; v < order; ++v) {
    std::size_t stride = 1;
    for (std::size_t k = 0; k < d; ++k, stride *= n)
      if ((v / stride) % n + 1 < n) b.add_edge(v, v + stride);
  }
  return b.build();
}

inline Graph hypercube(std::size_t d) { return grid_graph(2, d); }

// Sizes ceil(n/parts) first, then floor(n/parts); contiguous index blocks.
inline Graph disjoint_cliques(std::size_t n, std::size_t parts) {
  if (parts < 1 || n < parts) throw InvalidArgument("need 1 <= parts <= n");
  GraphBuilder b(n);
  Vertex start = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t size = n / parts + (p < n % parts ? 1 : 0);
    for (Vertex u = start; u < start + size; ++u)
      for (Vertex v = u + 1; v < start + size; ++v) b.add_edge(u, v);
    start += size;
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Finite-geometry incidence graphs (points first, then lines)

namespace detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Projective points of F_p^dim: vectors whose first non-zero entry is 1.
inline std::vector<std::vector<std::size_t>> projective_points(std::size_t p, std::size_t dim) {
  std::vector<std::vector<std::size_t>> pts;
  std::vector<std::size_t> v(dim, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= p;
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < dim; ++i, c /= p) v[dim - 1 - i] = c % p;
    const auto first = std::find_if(v.begin(), v.end(), [](std::size_t x) { return x != 0; });
    if (*first == 1) pts.push_back(v);
  }
  return pts;
}

inline std::vector<std::size_t> normalise(std::vector<std::size_t> v, std::size_t p) {
  const auto first = std::find_if(v.begin(), v.end(), [](std::size_t x) { return x != 0; });
  std::size_t inv = 1;
  while ((*first * inv) % p != 1) ++inv;
  for (auto& x : v) x = (x * inv) % p;
  return v;
}

}  // namespace detail

// PG(2,p): points and lines both indexed by projective points; point x lies
// on line y iff x.y = 0. (p+1)-regular, girth 6; p = 2 is the Heawood graph.
inline Graph projective_plane_incidence(std::size_t p) {
  if (!detail::is_prime(p)) throw InvalidArgument("projective plane order must be prime");
  const auto pts = detail::projective_points(p, 3);
  const std::size_t m = pts.size();
  GraphBuilder b(2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t dot = 0;
      for (std::size_t k = 0; k < 3; ++k) dot += pts[i][k] * pts[j][k];
      if (dot % p == 0) b.add_edge(i, m + j);
    }
  return b.build();
}

inline Graph heawood_graph() { return projective_plane_incidence(2); }

// Symplectic generalised quadrangle W(p): points of PG(3,p), lines the
// totally isotropic lines of x0y1 - x1y0 + x2y3 - x3y2. (p+1)-regular,
// girth 8; p = 2 is the Tutte-Coxeter graph, p = 3 the 80-vertex (4,8)-cage.
inline Graph symplectic_quadrangle_incidence(std::size_t p) {
  if (!detail::is_prime(p)) throw InvalidArgument("quadrangle order must be prime");
  const auto pts = detail::projective_points(p, 4);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
  auto form = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    const std::size_t pos = x[0] * y[1] + x[2] * y[3];
    const std::size_t neg = x[1] * y[0] + x[3] * y[2];
    return (pos + p * p * 2 - neg % p) % p;
  };
  std::set<std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (form(pts[i], pts[j]) != 0) continue;
      std::vector<std::size_t> line;
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t c = 0; c < p; ++c) {
          if (a == 0 && c == 0) continue;
          std::vector<std::size_t> v(4);
          for (std::size_t k = 0; k < 4; ++k) v[k] = (a * pts[i][k] + c * pts[j][k]) % p;
          line.push_back(index.at(detail::normalise(v, p)));
        }
      std::sort(line.begin(), line.end());
      line.erase(std::unique(line.begin(), line.end()), line.end());
      lines.insert(line);
    }
  const std::size_t m = pts.size();
  GraphBuilder b(m + lines.size());
  std::size_t li = 0;
  for (const auto& line : lines) {
    for (std::size_t x : line) b.add_edge(x, m + li);
    ++li;
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Bipartite machinery

struct BipartiteGraph {
  Graph graph;
  BipartitePartition sides;
};

// u_i = i, w_j = n + j; u_i ~ w_j iff i ~ j.
inline BipartiteGraph bipartite_double_cover(const Graph& g) {
  const std::size_t n = g.order();
  GraphBuilder b(2 * n);
  for (auto [u, v] : g.edges()) {
    b.add_edge(u, n + v);
    b.add_edge(v, n + u);
  }
  return {b.build(), block_partition(2 * n, n)};
}

inline void audit_regular_bipartite(const BipartiteGraph& h, std::size_t s, std::size_t g, AuditLog& log) {
  try {
    validate_bipartition(h.graph, h.sides);
    log.note("bipartition", "valid");
  } catch (const InvalidArgument& e) {
    log.expect("bipartition", "valid", e.what(), false);
  }
  log.expect("regular degree", std::to_string(s),
             std::to_string(min_degree(h.graph)) + ".." + std::to_string(max_degree(h.graph)), is_regular(h.graph, s));
  log.expect_ge("girth", g, girth(h.graph));
}

namespace detail {

// Applies the anchor surgery: delete u_i-w_i, add u ~ all w_i and w ~ all u_i.
// New vertices: u = N (left), w = N + 1 (right).
inline BipartiteGraph grow_with(const BipartiteGraph& h, std::span<const Vertex> us, std::span<const Vertex> ws) {
  const std::size_t n = h.graph.order();
  GraphBuilder b(n + 2);
  for (auto [x, y] : h.graph.edges()) b.add_edge(x, y);
  for (std::size_t i = 0; i < us.size(); ++i) {
    b.remove_edge(us[i], ws[i]);
    b.add_edge(n, ws[i]);
    b.add_edge(n + 1, us[i]);
  }
  BipartitePartition p{VertexSet(n + 2), VertexSet(n + 2)};
  h.sides.left.for_each([&](Vertex v) { p.left.insert(v); });
  h.sides.right.for_each([&](Vertex v) { p.right.insert(v); });
  p.left.insert(n);
  p.right.insert(n + 1);
  return {b.build(), std::move(p)};
}

}  // namespace detail

// One grow step: one more vertex on each side, s-regular, bipartite, girth
// still >= g. Anchors are first chosen greedily at pairwise distance >=
// max(g, 4); if that fails, random anchor sets are tried. Every candidate is
// checked exactly for short cycles through the two new vertices (all other
// cycles already existed in H).
inline BipartiteGraph grow_bipartite_preserving_girth(const BipartiteGraph& h, std::size_t s, std::size_t g,
                                                     std::uint64_t rng_seed, std::size_t attempts = 4096) {
  validate_bipartition(h.graph, h.sides);
  if (!is_regular(h.graph, s)) throw InvalidArgument("input is not " + std::to_string(s) + "-regular");
  if (girth(h.graph) < ExtendedCount(g)) throw InvalidArgument("input girth is below the target");
  const std::size_t n = h.graph.order();
  if (s == 0) return detail::grow_with(h, {}, {});
  std::vector<Vertex> left = h.sides.left.to_vector();
  if (left.size() < s) throw Error("too small to grow: fewer than s left vertices");
  Rng rng(rng_seed);

  auto accept = [&](const std::vector<Vertex>& us, const std::vector<Vertex>& ws) -> std::optional<BipartiteGraph> {
    std::vector<Vertex> sorted_ws = ws;
    std::sort(sorted_ws.begin(), sorted_ws.end());
    if (std::adjacent_find(sorted_ws.begin(), sorted_ws.end()) != sorted_ws.end()) return std::nullopt;
    BipartiteGraph out = detail::grow_with(h, us, ws);
    const std::array<Vertex, 2> fresh{n, n + 1};
    if (!is_regular(out.graph, s) || !no_short_cycle_through(out.graph, fresh, g)) return std::nullopt;
    return out;
  };
  auto pick_partner = [&](Vertex u) {
    const auto nb = h.graph.neighbours(u);
    return nb[rng.below(nb.size())];
  };

  // Greedy far-apart anchors.
  {
    std::vector<Vertex> order = left;
    rng.shuffle(order);
    const std::size_t spread = std::max<std::size_t>(g, 4);
    std::vector<Vertex> us;
    std::vector<bool> blocked(n, false);
    for (Vertex u : order) {
      if (blocked[u]) continue;
      us.push_back(u);
      if (us.size() == s) break;
      const auto dist = bfs_distances(h.graph, u, spread - 1);
      for (Vertex v = 0; v < n; ++v)
        if (dist[v] != kUnreachable) blocked[v] = true;
    }
    if (us.size() == s) {
      std::vector<Vertex> ws;
      for (Vertex u : us) ws.push_back(pick_partner(u));
      if (auto out = accept(us, ws)) return std::move(*out);
    }
  }
  // Randomised anchors.
  for (std::size_t t = 0; t < attempts; ++t) {
    std::vector<Vertex> us;
    for (std::size_t i : rng.sample(left.size(), s)) us.push_back(left[i]);
    std::vector<Vertex> ws;
    for (Vertex u : us) ws.push_back(pick_partner(u));
    if (auto out = accept(us, ws)) return std::move(*out);
  }
  throw Error("too small to grow: no anchor set keeps girth >= " + std::to_string(g) + " after " +
              std::to_string(attempts) + " attempts");
}

namespace detail {

// Edges lying on a cycle shorter than g.
inline std::size_t short_cycle_edges(const Graph& gr, std::size_t g) {
  std::size_t bad = 0;
  for (auto [u, v] : gr.edges()) {
    std::vector<std::size_t> dist(gr.order(), kUnreachable);
    std::vector<Vertex> queue{u};
    dist[u] = 0;
    bool found = false;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      const Vertex x = queue[head];
      if (dist[x] + 2 > g - 1) break;
      for (Vertex y : gr.neighbours(x)) {
        if (x == u && y == v) continue;
        if (dist[y] != kUnreachable) continue;
        dist[y] = dist[x] + 1;
        if (y == v) {
          found = true;
          break;
        }
        queue.push_back(y);
      }
    }
    if (found) ++bad;
  }
  return bad;
}

// Random s-regular graph on n vertices with girth >= g, by edge swaps that
// never increase the number of edges on short cycles.
inline std::optional<Graph> search_regular_high_girth(std::size_t n, std::size_t s, std::size_t g, Rng& rng,
                                                      std::size_t budget) {
  Graph cur = random_regular_graph(n, s, rng);
  std::size_t bad = short_cycle_edges(cur, g);
  for (std::size_t it = 0; it < budget && bad > 0; ++it) {
    auto edges = cur.edges();
    const auto [a, b] = edges[rng.below(edges.size())];
    auto [c, d] = edges[rng.below(edges.size())];
    if (rng.below(2) == 1) std::swap(c, d);
    if (a == c || a == d || b == c || b == d || cur.adjacent(a, c) || cur.adjacent(b, d)) continue;
    GraphBuilder gb(cur);
    gb.remove_edge(a, b);
    gb.remove_edge(c, d);
    gb.add_edge(a, c);
    gb.add_edge(b, d);
    Graph next = gb.build();
    const std::size_t nb = short_cycle_edges(next, g);
    if (nb <= bad) {
      cur = std::move(next);
      bad = nb;
    }
  }
  if (bad > 0) return std::nullopt;
  return cur;
}

// s-regular bipartite graph with sides 0..n-1 and n..2n-1 and girth >= g,
// by side-preserving edge swaps from a circulant start. Swaps never
// increase the number of edges on short cycles.
inline std::optional<BipartiteGraph> search_bipartite_high_girth(std::size_t n, std::size_t s, std::size_t g, Rng& rng,
                                                                 std::size_t budget) {
  GraphBuilder start(2 * n);
  for (Vertex i = 0; i < n; ++i)
    for (std::size_t t = 0; t < s; ++t) start.add_edge(i, n + (i + t) % n);
  Graph cur = start.build();
  std::size_t bad = short_cycle_edges(cur, g);
  for (std::size_t it = 0; it < budget && bad > 0; ++it) {
    auto edges = cur.edges();  // (left, right) since left < right
    const auto [a, b] = edges[rng.below(edges.size())];
    const auto [c, d] = edges[rng.below(edges.size())];
    if (a == c || b == d || cur.adjacent(a, d) || cur.adjacent(c, b)) continue;
    GraphBuilder gb(cur);
    gb.remove_edge(a, b);
    gb.remove_edge(c, d);
    gb.add_edge(a, d);
    gb.add_edge(c, b);
    Graph next = gb.build();
    const std::size_t nb = short_cycle_edges(next, g);
    if (nb <= bad) {
      cur = std::move(next);
      bad = nb;
    }
  }
  if (bad > 0) return std::nullopt;
  return BipartiteGraph{std::move(cur), block_partition(2 * n, n)};
}

// Moore bound for one side of an s-regular bipartite graph of girth >= g:
// sum_{i < ceil(g/2)} (s-1)^i.
inline std::size_t bipartite_moore_side(std::size_t s, std::size_t g) {
  if (s <= 1) return s;
  std::size_t total = 0, term = 1;
  for (std::size_t i = 0; i < (g + 1) / 2 && total < 1'000'000; ++i, term *= (s - 1)) total += term;
  return total;
}

// Reorders vertices so the left side is 0..n_side-1, the right side
// n_side..2n_side-1, each in increasing original order.
inline BipartiteGraph canonical_layout(const BipartiteGraph& h) {
  std::vector<Vertex> perm(h.graph.order());
  Vertex next = 0;
  h.sides.left.for_each([&](Vertex v) { perm[v] = next++; });
  const std::size_t left = next;
  h.sides.right.for_each([&](Vertex v) { perm[v] = next++; });
  return {relabel(h.graph, perm), block_partition(h.graph.order(), left)};
}

}  // namespace detail

struct HighGirthOptions {
  std::size_t search_budget = 20'000;
  std::size_t grow_attempts = 4096;
};

// s-regular bipartite graph, n_side vertices per side (left 0..n_side-1),
// girth >= g. Strategy: s <= 1 directly; s = 2 a single cycle; otherwise the
// smallest suitable known graph (K_{s,s} for g <= 4, PG(2,s-1) for g <= 6,
// W(s-1) for g <= 8, s-1 prime) or a random high-girth s-regular graph's
// double cover, grown one vertex per side at a time up to n_side.
inline BipartiteGraph regular_bipartite_high_girth(std::size_t n_side, std::size_t s, std::size_t g,
                                                  std::uint64_t rng_seed, AuditLog* log = nullptr,
                                                  const HighGirthOptions& opt = {}) {
  AuditLog& audit = detail::sink(log);
  const std::size_t n = 2 * n_side;
  if (n_side == 0) throw InvalidArgument("n_side must be positive");
  if (s > n_side) throw InvalidArgument("regular degree exceeds the side size");
  BipartiteGraph out{edgeless_graph(n), block_partition(n, n_side)};
  if (s == 0) {
    audit.note("strategy", "empty graph");
  } else if (s == 1) {
    GraphBuilder b(n);
    for (Vertex i = 0; i < n_side; ++i) b.add_edge(i, n_side + i);
    out.graph = b.build();
    audit.note("strategy", "perfect matching");
  } else if (s == 2) {
    if (n_side < 2 || 2 * n_side < g)
      throw InvalidArgument("infeasible: a 2-regular bipartite graph on 2*" + std::to_string(n_side) +
                            " vertices has girth " + std::to_string(2 * n_side));
    GraphBuilder b(n);
    for (Vertex i = 0; i < n_side; ++i) {
      b.add_edge(i, n_side + i);
      b.add_edge(i, n_side + (i + n_side - 1) % n_side);
    }
    out.graph = b.build();
    audit.note("strategy", "cycle C_" + std::to_string(n));
  } else {
    if (n_side < detail::bipartite_moore_side(s, g))
      throw InvalidArgument("infeasible: side size below the Moore bound for degree " + std::to_string(s) +
                            " and girth " + std::to_string(g));
    Rng rng(rng_seed);
    std::optional<BipartiteGraph> base;
    const bool prime_order = detail::is_prime(s - 1);
    if (g <= 4) {
      base = BipartiteGraph{complete_bipartite(s, s), block_partition(2 * s, s)};
      audit.note("strategy", "K_{s,s} base");
    } else if (g <= 6 && prime_order && (s - 1) * (s - 1) + s <= n_side) {
      const Graph pg = projective_plane_incidence(s - 1);
      base = BipartiteGraph{pg, block_partition(pg.order(), pg.order() / 2)};
      audit.note("strategy", "PG(2," + std::to_string(s - 1) + ") base");
    } else if (g <= 8 && prime_order && s * ((s - 1) * (s - 1) + 1) <= n_side) {
      const Graph gq = symplectic_quadrangle_incidence(s - 1);
      base = BipartiteGraph{gq, block_partition(gq.order(), gq.order() / 2)};
      audit.note("strategy", "W(" + std::to_string(s - 1) + ") base");
    } else {
      for (std::size_t m = s + 1; m <= n_side && !base; ++m) {
        if ((m * s) % 2 != 0) continue;
        if (auto found = detail::search_regular_high_girth(m, s, g, rng, opt.search_budget)) {
          base = bipartite_double_cover(*found);
          audit.note("strategy", "double cover of a random " + std::to_string(s) + "-regular graph on " +
                                     std::to_string(m) + " vertices");
        }
      }
      if (!base) throw Error("search budget exhausted: no base graph found for s=" + std::to_string(s) +
                             ", g=" + std::to_string(g));
    }
    BipartiteGraph cur = std::move(*base);
    std::size_t grows = 0;
    try {
      while (cur.graph.order() < n) {
        cur = grow_bipartite_preserving_girth(cur, s, g, rng.fork(), opt.grow_attempts);
        ++grows;
      }
      audit.note("grow steps", std::to_string(grows));
    } catch (const Error& e) {
      // Cages are often too tight to grow; retry with a direct search at the
      // requested size.
      audit.note("grow failed", e.what());
      if (auto direct = detail::search_bipartite_high_girth(n_side, s, g, rng, opt.search_budget)) {
        cur = std::move(*direct);
        audit.note("strategy", "random bipartite graph at the requested size");
      } else if (auto found = (n_side * s) % 2 == 0
                                  ? detail::search_regular_high_girth(n_side, s, g, rng, opt.search_budget)
                                  : std::nullopt) {
        cur = bipartite_double_cover(*found);
        audit.note("strategy", "double cover of a random graph at the requested size");
      } else {
        throw Error("search budget exhausted at side size " + std::to_string(n_side) + " after: " + e.what());
      }
    }
    out = detail::canonical_layout(cur);
  }
  audit_regular_bipartite(out, s, g, audit);
  return out;
}

// ---------------------------------------------------------------------------
// Two-clique constructions. U is the left block, W the right block.

struct CliquePair {
  Graph graph;
  BipartitePartition sides;  // left = U, right = W
  VertexSet seed;            // distinguished closed set, empty if none
};

namespace detail {
inline void require(bool ok, bool force, const std::string& what, AuditLog& audit) {
  if (ok) return;
  if (!force) throw ValidationError("parameter check failed: " + what);
  audit.note("forced", what);
}
}  // namespace detail

// Clique U = 0..l-1, clique W = l..n-1. W-vertex j is joined to the U-vertices
// (j(r-1) + t) mod l for t < r-1, so U cross-degrees differ by at most one.
// Returns seed = U.
inline CliquePair fig1_two_clique(std::size_t n, std::size_t r, std::size_t l, bool force = false,
                                  AuditLog* log = nullptr) {
  AuditLog& audit = detail::sink(log);
  check_threshold(r);
  if (l < r - 1 || l == 0 || n <= l) throw ValidationError("need r-1 <= l < n");
  detail::require(l >= r, force, "l >= r", audit);
  detail::require(n >= 2 * l, force, "n >= 2l", audit);
  detail::require(l + 2 <= 2 * r, force, "l <= 2r-2", audit);
  GraphBuilder b(n);
  for (Vertex u = 0; u < l; ++u)
    for (Vertex v = u + 1; v < l; ++v) b.add_edge(u, v);
  for (Vertex u = l; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  for (std::size_t j = 0; j < n - l; ++j)
    for (std::size_t t = 0; t + 1 < r; ++t) b.add_edge(l + j, (j * (r - 1) + t) % l);
  CliquePair out{b.build(), block_partition(n, l), VertexSet::prefix(n, l)};
  audit.expect_eq("min degree", (r - 1) * n / l + l - r, min_degree(out.graph));
  for (Vertex w = l; w < n; ++w)
    if (out.graph.count_in(w, out.seed) != r - 1)
      audit.expect("W cross-degree", std::to_string(r - 1), std::to_string(out.graph.count_in(w, out.seed)), false);
  audit.note("W cross-degree", std::to_string(r - 1));
  audit.expect("seed closed", "true", is_closed(out.graph, r, out.seed) ? "true" : "false",
               is_closed(out.graph, r, out.seed));
  return out;
}

// Cliques U = 0..|U|-1 and W = |U|..n-1 with |W| = n/(2r-l-1); W-vertex i is
// joined to U-vertices i(2r-l-2) .. (i+1)(2r-l-2)-1. U cross-degree 1, W
// cross-degree 2r-l-2.
inline CliquePair big_l_tightness_graph(std::size_t n, std::size_t r, std::size_t l, bool force = false,
                                        AuditLog* log = nullptr) {
  AuditLog& audit = detail::sink(log);
  if (2 * r < l + 3) throw ValidationError("need 2r-l-1 >= 2");
  const std::size_t q = 2 * r - l - 1;
  if (n % q != 0) throw ValidationError("n must be divisible by 2r-l-1 = " + std::to_string(q));
  const std::size_t f = l >= r ? f_threshold(l - r) : 3;
  detail::require(l >= r, force, "l >= r", audit);
  detail::require(l + 2 * f >= r + 2 + r, force, "l-r+2f(l-r)-2 >= r", audit);
  detail::require(2 * r >= l + 3, force, "r >= l-r+3", audit);
  const std::size_t w_size = n / q;
  const std::size_t u_size = n - w_size;
  GraphBuilder b(n);
  for (Vertex u = 0; u < u_size; ++u)
    for (Vertex v = u + 1; v < u_size; ++v) b.add_edge(u, v);
  for (Vertex u = u_size; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  for (std::size_t i = 0; i < w_size; ++i)
    for (std::size_t t = 0; t < q - 1; ++t) b.add_edge(u_size + i, i * (q - 1) + t);
  CliquePair out{b.build(), block_partition(n, u_size), VertexSet(n)};
  std::size_t u_cross = 0, w_cross = 0;
  out.sides.left.for_each([&](Vertex v) { u_cross = std::max(u_cross, out.graph.count_in(v, out.sides.right)); });
  out.sides.right.for_each([&](Vertex v) { w_cross = std::max(w_cross, out.graph.count_in(v, out.sides.left)); });
  audit.expect_eq("U cross-degree", 1, u_cross);
  audit.expect_eq("W cross-degree", q - 1, w_cross);
  audit.expect_eq("D(G)", n + 2 * r - l - 3, ore_degree_sum(out.graph));
  return out;
}

enum class OreVariant { full, weak, odd };

inline const char* to_string(OreVariant v) {
  switch (v) {
    case OreVariant::full: return "full";
    case OreVariant::weak: return "weak";
    case OreVariant::odd: return "odd";
  }
  return "unknown";
}

struct OreTightnessParams {
  std::size_t s = 0;      // cross regularity actually used
  std::size_t girth = 0;  // cross girth target 2f(l-r)+2
  std::size_t f = 0;
};

inline OreTightnessParams ore_tightness_params(std::size_t r, std::size_t l, OreVariant variant, bool force,
                                               AuditLog& audit) {
  if (l < r) throw ValidationError("need l >= r");
  const std::size_t f = f_threshold(l - r);
  if (2 * r < l + f) throw ValidationError("need 2r >= l + f(l-r)");
  if (variant == OreVariant::weak) {
    detail::require(2 * r >= l + f + 1, force, "2r-1 >= l+f(l-r)", audit);
    if (2 * r == l + f) throw ValidationError("weak variant needs 2r-l-f(l-r) >= 1");
  } else {
    detail::require(3 * r >= 2 * l + f + 4, force, "3r >= 2l+f(l-r)+4", audit);
  }
  const std::size_t s_full = 2 * r - l - f;
  return {variant == OreVariant::weak ? s_full - 1 : s_full, 2 * f + 2, f};
}

// Cliques on both sides of an s-regular bipartite graph of girth >= 2f(l-r)+2,
// s = 2r-l-f(l-r) (full, odd) or one less (weak). The odd variant then
// deletes the last right vertex.
inline CliquePair ore_tightness_graph(std::size_t n_side, std::size_t r, std::size_t l, OreVariant variant,
                                      std::uint64_t rng_seed = 1, bool force = false, AuditLog* log = nullptr,
                                      const HighGirthOptions& opt = {}) {
  AuditLog& audit = detail::sink(log);
  const OreTightnessParams p = ore_tightness_params(r, l, variant, force, audit);
  audit.note("cross regularity s", std::to_string(p.s));
  audit.note("cross girth target", std::to_string(p.girth));
  const BipartiteGraph h = regular_bipartite_high_girth(n_side, p.s, p.girth, rng_seed, &audit, opt);
  GraphBuilder b(h.graph);
  for (Vertex u = 0; u < n_side; ++u)
    for (Vertex v = u + 1; v < n_side; ++v) {
      b.add_edge(u, v);
      b.add_edge(n_side + u, n_side + v);
    }
  CliquePair out{b.build(), h.sides, VertexSet(2 * n_side)};
  if (variant == OreVariant::odd) {
    auto sub = induced_subgraph(out.graph, VertexSet::prefix(2 * n_side, 2 * n_side - 1));
    out.graph = std::move(sub.graph);
    out.sides = block_partition(2 * n_side - 1, n_side);
    out.seed = VertexSet(2 * n_side - 1);
    audit.expect_eq("min degree", n_side + p.s - 2, min_degree(out.graph));
    audit.expect_eq("D(G)", 2 * n_side + 2 * p.s - 4, ore_degree_sum(out.graph));
  } else {
    audit.expect_eq("min degree", n_side - 1 + p.s, min_degree(out.graph));
    audit.expect_eq("D(G)", 2 * n_side + 2 * p.s - 2, ore_degree_sum(out.graph));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named-family dispatch for the command line

enum class Family {
  fig1_two_clique,
  disjoint_cliques,
  grid,
  hypercube,
  ore_tightness,
  ore_tightness_weak,
  ore_tightness_odd,
  big_l_tightness,
  regular_bipartite_girth
};

inline const std::map<std::string, Family>& family_names() {
  static const std::map<std::string, Family> names{
      {"fig1-two-clique", Family::fig1_two_clique},
      {"disjoint-cliques", Family::disjoint_cliques},
      {"grid", Family::grid},
      {"hypercube", Family::hypercube},
      {"ore-tightness", Family::ore_tightness},
      {"ore-tightness-weak", Family::ore_tightness_weak},
      {"ore-tightness-odd", Family::ore_tightness_odd},
      {"big-l-tightness", Family::big_l_tightness},
      {"regular-bipartite-girth", Family::regular_bipartite_girth},
  };
  return names;
}

inline Family parse_family(const std::string& name) {
  const auto it = family_names().find(name);
  if (it == family_names().end()) throw InvalidArgument("unknown family '" + name + "'");
  return it->second;
}

struct ConstructionSpec {
  Family family = Family::grid;
  std::map<std::string, std::size_t> params;  // n, r, l, d, s, g, k
  std::uint64_t rng_seed = 1;
  bool force = false;

  std::size_t get(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw InvalidArgument("missing parameter '" + key + "'");
    return it->second;
  }
};

struct Construction {
  std::string family;
  Graph graph;
  std::optional<BipartitePartition> sides;
  std::optional<VertexSet> seed;
  AuditLog audit;
};

inline Construction build_construction(const ConstructionSpec& spec) {
  Construction c{"", edgeless_graph(1), std::nullopt, std::nullopt, {}};
  for (const auto& [name, fam] : family_names())
    if (fam == spec.family) c.family = name;
  auto take_pair = [&](CliquePair p, bool with_seed) {
    c.graph = std::move(p.graph);
    c.sides = std::move(p.sides);
    if (with_seed) c.seed = std::move(p.seed);
  };
  switch (spec.family) {
    case Family::fig1_two_clique:
      take_pair(fig1_two_clique(spec.get("n"), spec.get("r"), spec.get("l"), spec.force, &c.audit), true);
      break;
    case Family::disjoint_cliques:
      c.graph = disjoint_cliques(spec.get("n"), spec.get("k"));
      c.audit.note("part sizes", std::to_string(spec.get("n") / spec.get("k")) + ".." +
                                     std::to_string((spec.get("n") + spec.get("k") - 1) / spec.get("k")));
      break;
    case Family::grid:
      c.graph = grid_graph(spec.get("n"), spec.get("d"));
      break;
    case Family::hypercube:
      c.graph = hypercube(spec.get("d"));
      break;
    case Family::ore_tightness:
    case Family::ore_tightness_weak:
    case Family::ore_tightness_odd: {
      const OreVariant v = spec.family == Family::ore_tightness        ? OreVariant::full
                           : spec.family == Family::ore_tightness_weak ? OreVariant::weak
                                                                       : OreVariant::odd;
      take_pair(ore_tightness_graph(spec.get("n"), spec.get("r"), spec.get("l"), v, spec.rng_seed, spec.force,
                                    &c.audit),
                false);
      break;
    }
    case Family::big_l_tightness:
      take_pair(big_l_tightness_graph(spec.get("n"), spec.get("r"), spec.get("l"), spec.force, &c.audit), false);
      break;
    case Family::regular_bipartite_girth: {
      auto h = regular_bipartite_high_girth(spec.get("n"), spec.get("s"), spec.get("g"), spec.rng_seed, &c.audit);
      c.graph = std::move(h.graph);
      c.sides = std::move(h.sides);
      break;
    }
  }
  c.audit.note("vertices", std::to_string(c.graph.order()));
  c.audit.note("edges", std::to_string(c.graph.edge_count()));
  c.audit.note("min degree", std::to_string(min_degree(c.graph)));
  c.audit.note("D(G)", ore_degree_sum(c.graph).to_string());
  return c;
}

}  // namespace bootperc
