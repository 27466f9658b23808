#include <gtest/gtest.h>

#include "bootperc/bootstrap.hpp"
#include "bootperc/constructions.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bootperc;

TEST(Closure, Examples) {
  const Graph p = petersen_graph();
  EXPECT_EQ(closure(p, 3, VertexSet::full(10)), VertexSet::full(10));
  EXPECT_EQ(closure(path_graph(3), 2, VertexSet(3, {0, 2})), VertexSet::full(3));
  for (std::size_t r = 1; r <= 4; ++r) {
    const Graph k = complete_bipartite(r, 7);
    EXPECT_EQ(closure(k, r, VertexSet::prefix(r + 7, r)), VertexSet::full(r + 7));
  }
}

TEST(Closure, ThresholdZeroRejected) { EXPECT_THROW((void)closure(path_graph(3), 0, VertexSet(3)), InvalidArgument); }

TEST(Percolates, Examples) {
  EXPECT_TRUE(percolates(petersen_graph(), 1, VertexSet(10, {4})));
  EXPECT_FALSE(percolates(disjoint_cliques(8, 2), 2, VertexSet(8, {0, 1})));
  for (std::size_t r = 1; r <= 5; ++r) EXPECT_TRUE(percolates(complete_graph(9), r, VertexSet(9).complement().lowest(r)));
}

TEST(Trace, PathOfThree) {
  const auto t = infection_trace(path_graph(3), 2, VertexSet(3, {0, 2}));
  ASSERT_EQ(t.rounds.size(), 2u);
  EXPECT_EQ(t.rounds[0], VertexSet(3, {0, 2}));
  EXPECT_EQ(t.rounds[1], VertexSet(3, {1}));
  EXPECT_EQ(*t.witnesses[1], VertexSet(3, {0, 2}));
  EXPECT_EQ(*t.round_of[1], 1u);
  EXPECT_TRUE(t.percolated());
}

TEST(Trace, ClosedSeedIsOneRound) {
  const auto t = infection_trace(path_graph(5), 2, VertexSet(5, {0, 1}));
  ASSERT_EQ(t.rounds.size(), 1u);
  EXPECT_EQ(t.steps(), 0u);
  EXPECT_FALSE(t.percolated());
}

TEST(ClosureEngine, ReusableAcrossRuns) {
  const Graph g = grid_graph(4, 2);
  ClosureEngine e(g, 2);
  const VertexSet diag(16, {0, 5, 10, 15});
  EXPECT_EQ(e.run(diag), 16u);
  EXPECT_EQ(e.result(), VertexSet::full(16));
  EXPECT_EQ(e.run(VertexSet(16, {0})), 1u);
  EXPECT_TRUE(e.infected(0));
  EXPECT_FALSE(e.infected(1));
}

// Engine closure equals the naive synchronous closure; trace rounds match
// the naive per-round growth and witnesses have at least r members.
TEST(BootstrapProperty, MatchesOracle) {
  Rng rng(17);
  for (int t = 0; t < 400; ++t) {
    const Graph g = gen::any_graph(rng, 40);
    const std::size_t r = 1 + rng.below(4);
    const VertexSet a0 = gen::subset(rng, g.order(), rng.unit() * 0.5);
    const VertexSet c = closure(g, r, a0);
    const auto m = oracle::matrix(g);
    EXPECT_EQ(gen::as_bools(c), oracle::closure(m, r, gen::as_bools(a0)));
    const auto tr = infection_trace(g, r, a0);
    EXPECT_EQ(tr.infected(), c);
    for (Vertex v = 0; v < g.order(); ++v) {
      if (tr.round_of[v] && *tr.round_of[v] > 0) {
        EXPECT_GE(tr.witnesses[v]->count(), r);
      }
    }
    EXPECT_TRUE(is_closed(g, r, c));
  }
}

// A ⊆ B implies <A> ⊆ <B>; adding edges never shrinks the closure.
TEST(BootstrapProperty, Monotone) {
  Rng rng(19);
  for (int t = 0; t < 300; ++t) {
    const Graph g = gen::any_graph(rng, 40);
    const std::size_t n = g.order(), r = 1 + rng.below(3);
    const VertexSet a = gen::subset(rng, n, 0.2);
    const VertexSet b = a | gen::subset(rng, n, 0.2);
    EXPECT_TRUE(closure(g, r, a).is_subset_of(closure(g, r, b)));
    if (n < 2) continue;
    GraphBuilder gb(g);
    const Vertex u = rng.below(n), v = rng.below(n);
    if (u != v) gb.add_edge(u, v);
    EXPECT_TRUE(closure(g, r, a).is_subset_of(closure(gb.build(), r, a)));
  }
}
