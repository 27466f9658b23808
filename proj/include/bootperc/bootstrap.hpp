#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/vertex_set.hpp"

namespace bootperc {

// r-neighbour bootstrap percolation: an uninfected vertex becomes infected
// once at least r of its neighbours are infected.

inline void check_threshold(std::size_t r) {
  if (r < 1) throw InvalidArgument("threshold r must be at least 1");
}

// Reusable closure kernel. Holds per-vertex counters and a work queue so
// repeated evaluations on one graph allocate nothing; each run costs
// O(n + sum of degrees of the infected vertices).
class ClosureEngine {
 public:
  ClosureEngine(const Graph& g, std::size_t r) : g_(&g), r_(r), count_(g.order(), 0), infected_(g.order(), 0) {
    check_threshold(r);
    queue_.reserve(g.order());
  }

  // Runs the process from `seed` (a list of distinct vertices) and returns
  // the size of the closure. Infected flags stay readable until the next run.
  std::size_t run(std::span<const Vertex> seed) {
    reset();
    for (Vertex v : seed) {
      if (infected_[v]) continue;
      infected_[v] = 1;
      queue_.push_back(v);
    }
    return propagate();
  }

  std::size_t run(const VertexSet& seed) {
    reset();
    seed.for_each([&](Vertex v) {
      infected_[v] = 1;
      queue_.push_back(v);
    });
    return propagate();
  }

  bool infected(Vertex v) const { return infected_[v] != 0; }

  VertexSet result() const {
    VertexSet s(g_->order());
    for (Vertex v : queue_) s.insert(v);
    return s;
  }

 private:
  void reset() {
    for (Vertex v : queue_) {
      infected_[v] = 0;
      for (Vertex w : g_->neighbours(v)) count_[w] = 0;
    }
    queue_.clear();
  }

  std::size_t propagate() {
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      for (Vertex w : g_->neighbours(u)) {
        if (infected_[w]) continue;
        if (++count_[w] >= r_) {
          infected_[w] = 1;
          queue_.push_back(w);
        }
      }
    }
    return queue_.size();
  }

  const Graph* g_;
  std::size_t r_;
  std::vector<std::size_t> count_;
  std::vector<unsigned char> infected_;
  std::vector<Vertex> queue_;
};

// <A0>: the least superset of A0 closed under one infection round.
inline VertexSet closure(const Graph& g, std::size_t r, const VertexSet& a0) {
  if (a0.universe() != g.order()) throw InvalidArgument("seed set over a different universe");
  ClosureEngine e(g, r);
  e.run(a0);
  return e.result();
}

inline bool percolates(const Graph& g, std::size_t r, const VertexSet& a0) {
  if (a0.universe() != g.order()) throw InvalidArgument("seed set over a different universe");
  ClosureEngine e(g, r);
  return e.run(a0) == g.order();
}

inline bool is_closed(const Graph& g, std::size_t r, const VertexSet& a) { return closure(g, r, a) == a; }

// Synchronous record of the process. rounds[0] is the seed; rounds[t] are
// the vertices first infected at step t. For each non-seed vertex w,
// witness(w) is the set of its infected neighbours at the moment of its
// infection (all of them, not an r-subset).
struct PercolationTrace {
  std::vector<VertexSet> rounds;
  std::vector<std::optional<VertexSet>> witnesses;  // indexed by vertex
  std::vector<std::optional<std::size_t>> round_of;  // indexed by vertex

  VertexSet infected() const {
    VertexSet all(rounds.empty() ? 0 : rounds.front().universe());
    for (const auto& r : rounds) all |= r;
    return all;
  }

  bool percolated() const { return !rounds.empty() && infected().is_full(); }

  std::size_t steps() const { return rounds.empty() ? 0 : rounds.size() - 1; }
};

inline PercolationTrace infection_trace(const Graph& g, std::size_t r, const VertexSet& a0) {
  check_threshold(r);
  if (a0.universe() != g.order()) throw InvalidArgument("seed set over a different universe");
  const std::size_t n = g.order();
  PercolationTrace t;
  t.witnesses.assign(n, std::nullopt);
  t.round_of.assign(n, std::nullopt);
  t.rounds.push_back(a0);

  VertexSet infected = a0;
  std::vector<std::size_t> count(n, 0);
  std::vector<Vertex> fresh = a0.to_vector();
  for (Vertex v : fresh) t.round_of[v] = 0;

  for (std::size_t step = 1; !fresh.empty(); ++step) {
    // Counters reflect A_{t-1}; collect candidates touched by the last round.
    std::vector<Vertex> candidates;
    for (Vertex u : fresh)
      for (Vertex w : g.neighbours(u))
        if (!infected.contains(w) && ++count[w] == r) candidates.push_back(w);
    if (candidates.empty()) break;
    std::sort(candidates.begin(), candidates.end());
    VertexSet round(n);
    for (Vertex w : candidates) {
      round.insert(w);
      t.witnesses[w] = g.neighbourhood(w) & infected;
      t.round_of[w] = step;
    }
    infected |= round;
    t.rounds.push_back(std::move(round));
    fresh = std::move(candidates);
  }
  return t;
}

}  // namespace bootperc
