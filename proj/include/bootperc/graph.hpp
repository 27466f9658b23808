#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/extended_count.hpp"
#include "bootperc/vertex_set.hpp"

namespace bootperc {

using Edge = std::pair<Vertex, Vertex>;

class GraphBuilder;

// Immutable simple undirected graph on vertices 0..n-1. Adjacency is kept
// both as padded bit rows (for word-parallel set algebra) and as sorted
// neighbour lists (for traversal).
class Graph {
 public:
  Graph() = default;

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return ((bits_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  std::size_t degree(Vertex v) const {
    check(v);
    return lists_[v].size();
  }

  std::span<const Vertex> neighbours(Vertex v) const {
    check(v);
    return lists_[v];
  }

  std::span<const Word> row(Vertex v) const {
    check(v);
    return {bits_.data() + v * words_, words_};
  }

  VertexSet neighbourhood(Vertex v) const {
    VertexSet s(n_);
    std::copy_n(bits_.data() + v * words_, words_, s.mutable_words().begin());
    return s;
  }

  // |N(v) ∩ W| via word-parallel popcount.
  std::size_t count_in(Vertex v, const VertexSet& w) const {
    check(v);
    if (w.universe() != n_) throw InvalidArgument("vertex set over a different universe");
    const Word* r = bits_.data() + v * words_;
    auto ws = w.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += static_cast<std::size_t>(std::popcount(r[i] & ws[i]));
    return c;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : lists_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  VertexSet vertices() const { return VertexSet::full(n_); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  friend class GraphBuilder;

  void check(Vertex v) const {
    if (v >= n_)
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(n_) + ")");
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<Word> bits_;
  std::vector<std::vector<Vertex>> lists_;
};

// Single-threaded mutable staging area; the only way to make a Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {
    if (n == 0) throw InvalidArgument("a graph needs at least one vertex");
  }

  explicit GraphBuilder(const Graph& g) : n_(g.n_), words_(g.words_), bits_(g.bits_) {}

  std::size_t order() const noexcept { return n_; }

  bool has_edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return get(u, v);
  }

  // Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (get(u, v)) return false;
    set(u, v, true);
    set(v, u, true);
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v || !get(u, v)) return false;
    set(u, v, false);
    set(v, u, false);
    return true;
  }

  // Adds every edge inside `s`.
  void add_clique(std::span<const Vertex> s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) add_edge(s[i], s[j]);
  }

  Graph build() const {
    Graph g;
    g.n_ = n_;
    g.words_ = words_;
    g.bits_ = bits_;
    g.lists_.assign(n_, {});
    std::size_t twice = 0;
    for (Vertex u = 0; u < n_; ++u) {
      for (std::size_t wi = 0; wi < words_; ++wi) {
        Word w = bits_[u * words_ + wi];
        while (w != 0) {
          g.lists_[u].push_back(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
          w &= w - 1;
        }
      }
      twice += g.lists_[u].size();
    }
    g.edges_ = twice / 2;
    return g;
  }

 private:
  void check(Vertex v) const {
    if (v >= n_)
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(n_) + ")");
  }
  bool get(Vertex u, Vertex v) const { return ((bits_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1U) != 0; }
  void set(Vertex u, Vertex v, bool on) {
    Word& w = bits_[u * words_ + v / kWordBits];
    const Word bit = Word{1} << (v % kWordBits);
    w = on ? (w | bit) : (w & ~bit);
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<Word> bits_;
};

inline Graph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

// ---------------------------------------------------------------------------
// Degree and neighbourhood queries

inline std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

inline std::size_t degree_into(const Graph& g, Vertex v, const VertexSet& w) { return g.count_in(v, w); }

inline VertexSet neighborhood_union(const Graph& g, std::span<const Vertex> s) {
  VertexSet out(g.order());
  auto ow = out.mutable_words();
  for (Vertex v : s) {
    auto r = g.row(v);
    for (std::size_t i = 0; i < r.size(); ++i) ow[i] |= r[i];
  }
  return out;
}

inline VertexSet neighborhood_union(const Graph& g, const VertexSet& s) {
  auto vs = s.to_vector();
  return neighborhood_union(g, std::span<const Vertex>(vs));
}

inline std::size_t min_degree(const Graph& g) {
  std::size_t d = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < g.order(); ++v) d = std::min(d, g.degree(v));
  return d;
}

inline std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.order(); ++v) d = std::max(d, g.degree(v));
  return d;
}

inline bool is_regular(const Graph& g, std::size_t s) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) != s) return false;
  return true;
}

// Minimum of deg(v)+deg(w) over non-adjacent distinct pairs; infinite for
// complete graphs.
inline ExtendedCount ore_degree_sum(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  bool any = false;
  for (Vertex u = 0; u < n; ++u) {
    if (g.degree(u) == n - 1) continue;
    auto r = g.row(u);
    for (std::size_t wi = 0; wi < r.size(); ++wi) {
      Word non = ~r[wi];
      if (wi == r.size() - 1 && n % kWordBits != 0) non &= (Word{1} << (n % kWordBits)) - 1;
      while (non != 0) {
        const Vertex v = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(non));
        non &= non - 1;
        if (v <= u) continue;
        any = true;
        best = std::min(best, g.degree(u) + g.degree(v));
      }
    }
  }
  return any ? ExtendedCount(best) : ExtendedCount::infinite();
}

inline bool is_clique(const Graph& g, const VertexSet& s) {
  const std::size_t k = s.count();
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (ok && g.count_in(v, s) != k - 1) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Distances and cycles

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// BFS distances from `src`; unreachable vertices get kUnreachable. Search
// stops expanding once `limit` is reached.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex src,
                                              std::size_t limit = kUnreachable) {
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.order());
  dist[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= limit) continue;
    for (Vertex w : g.neighbours(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace detail {

// Length of the shortest closed walk detected by a BFS from `root` (the first
// non-tree edge closing a cycle), bounded by `cutoff`. Minimising this over
// all roots yields the girth; a cycle through `root` of length L is always
// detected with value <= L.
inline std::size_t bfs_cycle_from(const Graph& g, Vertex root, std::size_t cutoff,
                                  std::vector<std::size_t>& dist, std::vector<Vertex>& parent,
                                  std::vector<Vertex>& queue) {
  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
  queue.clear();
  dist[root] = 0;
  parent[root] = kNone;
  queue.push_back(root);
  std::size_t best = cutoff;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (2 * dist[u] + 1 >= best) break;
    for (Vertex w : g.neighbours(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      } else if (parent[u] != w) {
        best = std::min(best, dist[u] + dist[w] + 1);
      }
    }
  }
  for (Vertex v : queue) dist[v] = kUnreachable;
  return best;
}

}  // namespace detail

// Length of a shortest cycle; infinite for forests.
inline ExtendedCount girth(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> dist(n, kUnreachable);
  std::vector<Vertex> parent(n), queue;
  queue.reserve(n);
  std::size_t best = kUnreachable;
  for (Vertex root = 0; root < n; ++root) best = detail::bfs_cycle_from(g, root, best, dist, parent, queue);
  return best == kUnreachable ? ExtendedCount::infinite() : ExtendedCount(best);
}

// True iff every cycle through one of `through` has length >= g. Combined
// with the knowledge that all other cycles are long, this certifies girth.
inline bool no_short_cycle_through(const Graph& gr, std::span<const Vertex> through, std::size_t g) {
  const std::size_t n = gr.order();
  std::vector<std::size_t> dist(n, kUnreachable);
  std::vector<Vertex> parent(n), queue;
  for (Vertex v : through)
    if (detail::bfs_cycle_from(gr, v, g, dist, parent, queue) < g) return false;
  return true;
}

inline std::size_t connected_components(const Graph& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t comps = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(u))
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return comps;
}

inline std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> d(g.order());
  for (Vertex v = 0; v < g.order(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

// ---------------------------------------------------------------------------
// Bipartitions

struct BipartitePartition {
  VertexSet left;
  VertexSet right;
};

// Throws InvalidArgument unless `p` is a disjoint cover of V(g) with no edge
// inside either side.
inline void validate_bipartition(const Graph& g, const BipartitePartition& p) {
  const std::size_t n = g.order();
  if (p.left.universe() != n || p.right.universe() != n)
    throw InvalidArgument("partition universe does not match the graph");
  if (p.left.intersects(p.right)) throw InvalidArgument("partition sides overlap");
  if ((p.left | p.right).count() != n) throw InvalidArgument("partition does not cover every vertex");
  for (const VertexSet* side : {&p.left, &p.right}) {
    side->for_each([&](Vertex v) {
      if (g.count_in(v, *side) != 0)
        throw InvalidArgument("edge inside a partition side at vertex " + std::to_string(v));
    });
  }
}

inline BipartitePartition partition_from_left(std::size_t n, const VertexSet& left) {
  if (left.universe() != n) throw InvalidArgument("left side over a different universe");
  return {left, left.complement()};
}

// Left side {0..a-1}, right side {a..n-1}.
inline BipartitePartition block_partition(std::size_t n, std::size_t a) {
  VertexSet left = VertexSet::prefix(n, a);
  return {left, left.complement()};
}

// A 2-colouring if one exists (lowest vertex of each component goes left).
inline std::optional<BipartitePartition> two_colouring(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> colour(n, -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(u)) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[u];
          stack.push_back(w);
        } else if (colour[w] == colour[u]) {
          return std::nullopt;
        }
      }
    }
  }
  VertexSet left(n);
  for (Vertex v = 0; v < n; ++v)
    if (colour[v] == 0) left.insert(v);
  return BipartitePartition{left, left.complement()};
}

// Both sides of the girth/neighbourhood equivalence for a bipartite graph:
// whether girth >= 2g+2, and whether every j-subset of the left side with
// j <= g satisfies |N(u_1..u_j)| >= sum |N(u_i)| - (j-1).
struct GirthNeighbourhoodCheck {
  bool girth_condition = false;
  bool neighbourhood_condition = false;

  bool agree() const noexcept { return girth_condition == neighbourhood_condition; }
};

inline GirthNeighbourhoodCheck check_girth_neighborhood_equiv(const Graph& h, const BipartitePartition& p,
                                                              std::size_t g) {
  validate_bipartition(h, p);
  GirthNeighbourhoodCheck out;
  out.girth_condition = girth(h) >= ExtendedCount(2 * g + 2);

  const auto left = p.left.to_vector();
  const std::size_t words = h.words_per_row();
  // Depth-first over increasing index tuples, carrying the running union
  // and degree sum so each subset costs one row OR.
  std::vector<std::vector<Word>> unions(g + 1, std::vector<Word>(words, 0));
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth, std::size_t deg_sum) -> void {
    if (!ok || depth == g) return;
    for (std::size_t i = start; i < left.size() && ok; ++i) {
      auto r = h.row(left[i]);
      auto& cur = unions[depth + 1];
      std::size_t cnt = 0;
      for (std::size_t w = 0; w < words; ++w) {
        cur[w] = unions[depth][w] | r[w];
        cnt += static_cast<std::size_t>(std::popcount(cur[w]));
      }
      const std::size_t j = depth + 1;
      const std::size_t sum = deg_sum + h.degree(left[i]);
      if (cnt + (j - 1) < sum) {
        ok = false;
        return;
      }
      self(self, i + 1, depth + 1, sum);
    }
  };
  rec(rec, 0, 0, 0);
  out.neighbourhood_condition = ok;
  return out;
}

// ---------------------------------------------------------------------------
// Derived graphs

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local index -> parent vertex
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  if (keep.empty()) throw InvalidArgument("induced subgraph on an empty vertex set");
  InducedSubgraph out;
  out.to_parent = keep.to_vector();
  std::vector<std::size_t> local(g.order(), kUnreachable);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = i;
  GraphBuilder b(out.to_parent.size());
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    for (Vertex w : g.neighbours(out.to_parent[i]))
      if (local[w] != kUnreachable && local[w] > i) b.add_edge(i, local[w]);
  out.graph = b.build();
  return out;
}

// Graph with vertex v renamed to perm[v].
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.order()) throw InvalidArgument("permutation size mismatch");
  GraphBuilder b(g.order());
  for (auto [u, v] : g.edges()) b.add_edge(perm[u], perm[v]);
  return b.build();
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  GraphBuilder out(a.order() + b.order());
  for (auto [u, v] : a.edges()) out.add_edge(u, v);
  for (auto [u, v] : b.edges()) out.add_edge(a.order() + u, a.order() + v);
  return out.build();
}

// Classes of pairwise twins: vertices with identical closed neighbourhoods
// (adjacent twins) or identical open neighbourhoods (non-adjacent twins).
// Any permutation inside one class is an automorphism. Singletons are
// included so the classes partition V.
inline std::vector<std::vector<Vertex>> twin_classes(const Graph& g) {
  const std::size_t n = g.order();
  std::map<std::vector<Word>, std::vector<Vertex>> closed, open;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Word> r(g.row(v).begin(), g.row(v).end());
    open[r].push_back(v);
    r[v / kWordBits] |= Word{1} << (v % kWordBits);
    closed[r].push_back(v);
  }
  std::vector<std::vector<Vertex>> classes;
  std::vector<bool> placed(n, false);
  for (auto* groups : {&closed, &open})
    for (auto& [key, members] : *groups) {
      if (members.size() < 2) continue;
      if (std::any_of(members.begin(), members.end(), [&](Vertex v) { return placed[v]; })) continue;
      for (Vertex v : members) placed[v] = true;
      classes.push_back(members);
    }
  for (Vertex v = 0; v < n; ++v)
    if (!placed[v]) classes.push_back({v});
  std::sort(classes.begin(), classes.end());
  return classes;
}

}  // namespace bootperc
