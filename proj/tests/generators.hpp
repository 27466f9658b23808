#pragma once

// Hand-rolled instance generators for property tests.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/random.hpp"

namespace gen {

inline bootperc::Graph graph(bootperc::Rng& rng, std::size_t n, double p) {
  bootperc::GraphBuilder b(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.unit() < p) b.add_edge(u, v);
  return b.build();
}

// n and p drawn as well.
inline bootperc::Graph any_graph(bootperc::Rng& rng, std::size_t max_n) {
  const std::size_t n = 1 + rng.below(max_n);
  return graph(rng, n, rng.unit());
}

inline bootperc::Graph tree(bootperc::Rng& rng, std::size_t n) {
  bootperc::GraphBuilder b(n);
  for (std::size_t v = 1; v < n; ++v) b.add_edge(v, rng.below(v));
  return b.build();
}

inline bootperc::VertexSet subset(bootperc::Rng& rng, std::size_t n, double p) {
  bootperc::VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v)
    if (rng.unit() < p) s.insert(v);
  return s;
}

inline bootperc::Graph bipartite(bootperc::Rng& rng, std::size_t a, std::size_t b, double p) {
  bootperc::GraphBuilder g(a + b);
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t w = 0; w < b; ++w)
      if (rng.unit() < p) g.add_edge(u, a + w);
  return g.build();
}

inline std::vector<bool> as_bools(const bootperc::VertexSet& s) {
  std::vector<bool> out(s.universe());
  s.for_each([&](std::size_t v) { out[v] = true; });
  return out;
}

}  // namespace gen
