#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/random.hpp"

namespace bootperc {

struct RandomGraphFilter {
  std::optional<std::size_t> min_degree;
  std::optional<std::size_t> min_ore;  // D(G) lower bound; complete graphs pass
  std::size_t max_attempts = 1000;
};

inline bool passes(const Graph& g, const RandomGraphFilter& f) {
  if (f.min_degree && min_degree(g) < *f.min_degree) return false;
  if (f.min_ore && ore_degree_sum(g) < ExtendedCount(*f.min_ore)) return false;
  return true;
}

// G(n, p): pairs (u, v), u < v, are visited in lexicographic order and each
// draws one Bernoulli(p).
inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (p > 0.0 && rng.bernoulli(p)) b.add_edge(u, v);
  return b.build();
}

// Rejection sampling against `filter`; attempt t uses the t-th draw of the
// stream seeded by `seed`.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, const RandomGraphFilter& filter = {}) {
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < filter.max_attempts; ++attempt) {
    Graph g = erdos_renyi(n, p, rng);
    if (passes(g, filter)) return g;
  }
  throw Error("rejection budget exhausted after " + std::to_string(filter.max_attempts) + " samples");
}

// Starts from K_n and deletes edges in a seeded random order, skipping any
// deletion that would push a degree below `floor`, until a random quota of
// deletions is reached. Samples range from K_n down to edge-minimal graphs.
inline Graph random_min_degree_graph(std::size_t n, std::size_t floor, Rng& rng) {
  if (floor >= n) throw InvalidArgument("degree floor must be below n");
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  rng.shuffle(edges);
  const std::size_t quota = rng.below(edges.size() + 1);
  std::vector<std::size_t> deg(n, n - 1);
  std::size_t removed = 0;
  for (auto [u, v] : edges) {
    if (removed == quota) break;
    if (deg[u] > floor && deg[v] > floor) {
      b.remove_edge(u, v);
      --deg[u];
      --deg[v];
      ++removed;
    }
  }
  return b.build();
}

// Uniform-ish random s-regular graph: circulant start, then `swaps` random
// double-edge swaps that keep the graph simple.
inline Graph random_regular_graph(std::size_t n, std::size_t s, Rng& rng, std::size_t swaps = 0) {
  if (s >= n) throw InvalidArgument("regular degree must be below n");
  if ((n * s) % 2 != 0) throw InvalidArgument("n*s must be even");
  GraphBuilder b(n);
  std::vector<Edge> edges;
  auto add = [&](Vertex u, Vertex v) {
    if (b.add_edge(u, v)) edges.emplace_back(std::min(u, v), std::max(u, v));
  };
  for (Vertex i = 0; i < n; ++i)
    for (std::size_t d = 1; d <= s / 2; ++d) add(i, (i + d) % n);
  if (s % 2 == 1)
    for (Vertex i = 0; i < n / 2; ++i) add(i, i + n / 2);
  if (swaps == 0) swaps = 10 * edges.size();
  for (std::size_t t = 0; t < swaps && edges.size() >= 2; ++t) {
    const std::size_t i = rng.below(edges.size());
    const std::size_t j = rng.below(edges.size());
    if (i == j) continue;
    auto [a, bb] = edges[i];
    auto [c, d] = edges[j];
    if (rng.below(2) == 1) std::swap(c, d);
    if (a == c || a == d || bb == c || bb == d) continue;
    if (b.has_edge(a, c) || b.has_edge(bb, d)) continue;
    b.remove_edge(a, bb);
    b.remove_edge(c, d);
    b.add_edge(a, c);
    b.add_edge(bb, d);
    edges[i] = {std::min(a, c), std::max(a, c)};
    edges[j] = {std::min(bb, d), std::max(bb, d)};
  }
  return b.build();
}

// Two cliques on {0..N-1} and {N..2N-1}; u ~ N+v whenever u ~ v in a random
// s-regular graph on N vertices, so every vertex has cross-degree s.
inline Graph random_two_clique_graph(std::size_t n_side, std::size_t s, Rng& rng) {
  const Graph h = random_regular_graph(n_side, s, rng);
  GraphBuilder b(2 * n_side);
  for (Vertex u = 0; u < n_side; ++u)
    for (Vertex v = u + 1; v < n_side; ++v) {
      b.add_edge(u, v);
      b.add_edge(n_side + u, n_side + v);
    }
  for (Vertex u = 0; u < n_side; ++u)
    for (Vertex v : h.neighbours(u)) b.add_edge(u, n_side + v);
  return b.build();
}

}  // namespace bootperc
