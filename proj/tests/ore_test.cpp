#include <gtest/gtest.h>

#include "bootperc/constructions.hpp"
#include "bootperc/ore.hpp"
#include "bootperc/random_graphs.hpp"
#include "bootperc/solver.hpp"
#include "oracles.hpp"

using namespace bootperc;

namespace {

bool oracle_percolates(const Graph& g, std::size_t r, const VertexSet& s) {
  const auto c = oracle::closure(oracle::matrix(g), r, [&] {
    std::vector<bool> b(g.order());
    s.for_each([&](Vertex v) { b[v] = true; });
    return b;
  }());
  return std::all_of(c.begin(), c.end(), [](bool x) { return x; });
}

Graph two_cliques_with_cross(std::size_t side, std::size_t cross) {
  GraphBuilder b(2 * side);
  for (Vertex u = 0; u < side; ++u)
    for (Vertex v = u + 1; v < side; ++v) {
      b.add_edge(u, v);
      b.add_edge(side + u, side + v);
    }
  for (Vertex u = 0; u < side; ++u)
    for (std::size_t t = 0; t < cross; ++t) b.add_edge(u, side + (u + t) % side);
  return b.build();
}

}  // namespace

TEST(CompleteBipartite, Examples) {
  const auto k6 = find_complete_bipartite(complete_graph(6), 3, 3);
  ASSERT_TRUE(k6.has_value());
  EXPECT_EQ(k6->r_side.count(), 3u);
  EXPECT_EQ(k6->s_side.count(), 3u);
  EXPECT_FALSE(k6->r_side.intersects(k6->s_side));
  EXPECT_FALSE(find_complete_bipartite(cycle_graph(5), 1, 3).has_value());
  const auto k49 = find_complete_bipartite(complete_bipartite(4, 9), 4, 9);
  ASSERT_TRUE(k49.has_value());
  EXPECT_EQ(k49->r_side, VertexSet::prefix(13, 4));
  EXPECT_EQ(k49->s_side, VertexSet::prefix(13, 4).complement());
  EXPECT_THROW((void)find_complete_bipartite(cycle_graph(5), 0, 1), InvalidArgument);
}

TEST(CompleteBipartite, LargeSearchIsValid) {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const Graph g = erdos_renyi(40, 0.7, rng);
    const auto k = find_large_complete_bipartite(g, 3);
    ASSERT_TRUE(k.has_value());
    k->r_side.for_each([&](Vertex x) { EXPECT_TRUE(k->s_side.is_subset_of(g.neighbourhood(x))); });
  }
}

TEST(HighDegreeSeed, CompleteGraph) {
  const auto hd = infect_from_high_degree_krs(complete_graph(30), 3, 0);
  EXPECT_TRUE(hd.closure.is_full());
  EXPECT_EQ(hd.seed.count(), 3u);
}

TEST(HighDegreeSeed, OreTightnessSide) {
  const auto g = ore_tightness_graph(40, 7, 7, OreVariant::full);
  const auto hd = infect_from_high_degree_krs(g.graph, 7, 7);
  const VertexSet& cl = hd.closure;
  EXPECT_TRUE(g.sides.left.is_subset_of(cl) || g.sides.right.is_subset_of(cl));
  EXPECT_EQ(closure(g.graph, 7, hd.seed), cl);
}

TEST(Decompose, CompleteGraphPercolates) {
  const auto res = decompose(complete_graph(20), 3, 3, 0);
  ASSERT_TRUE(res.percolating.has_value());
  EXPECT_LE(res.percolating->count(), 3u);
  EXPECT_TRUE(percolates(complete_graph(20), 3, *res.percolating));
}

TEST(Decompose, TwoDisjointCliques) {
  const Graph g = disjoint_cliques(40, 2);
  const auto res = decompose(g, 3, 3, 8);
  ASSERT_TRUE(res.decomposition.has_value());
  const auto& d = *res.decomposition;
  EXPECT_TRUE(d.a == VertexSet::prefix(40, 20) || d.a == VertexSet::prefix(40, 20).complement());
  EXPECT_TRUE(d.c.empty());
  EXPECT_TRUE(d.checks_passed);
  EXPECT_THROW((void)decompose(g, 1, 3, 8), InvalidArgument);
  EXPECT_THROW((void)decompose(g, 3, 2, 8), InvalidArgument);
}

TEST(Decompose, OreTightnessSide) {
  const auto g = ore_tightness_graph(40, 7, 7, OreVariant::full);
  const auto res = decompose(g.graph, 7, 7, 7);
  ASSERT_TRUE(res.decomposition.has_value());
  EXPECT_TRUE(res.decomposition->a == g.sides.left || res.decomposition->a == g.sides.right);
  EXPECT_TRUE(res.decomposition->c.empty());
}

// Under D(G) >= n+2r-m, any x in A with a non-neighbour in A^c has at least
// r-m+3+(non-neighbours of x in A) neighbours in A^c.
TEST(DecomposeProperty, PointwiseDegreeBound) {
  Rng rng(41);
  std::size_t decompositions = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t side = 20 + 2 * rng.below(10);
    const std::size_t s = 1 + rng.below(5);
    const Graph g = random_two_clique_graph(side, s, rng);
    const std::size_t r = s + 1 + rng.below(3);
    const Int n = static_cast<Int>(g.order());
    const Int m = n + 2 * static_cast<Int>(r) - static_cast<Int>(ore_degree_sum(g).value());
    const auto res = decompose(g, r, r + rng.below(3), m);
    if (!res.decomposition) continue;
    ++decompositions;
    const auto& d = *res.decomposition;
    const VertexSet out = d.complement();
    d.a.for_each([&](Vertex x) {
      if (g.count_in(x, out) == out.count()) return;
      const Int non_a = static_cast<Int>(d.a.count() - 1 - g.count_in(x, d.a));
      EXPECT_GE(static_cast<Int>(g.count_in(x, out)), static_cast<Int>(r) - m + 3 + non_a);
    });
    EXPECT_TRUE(is_closed(g, r, d.a));
  }
  EXPECT_GT(decompositions, 10u);
}

TEST(SeedCross, DegenerateJZero) {
  const Graph g = complete_graph(16);
  const VertexSet u = VertexSet::prefix(16, 8), w = u.complement();
  const SeedPlan p = build_seed_cross(g, u, w, 3, 5, 0);
  EXPECT_LE(p.seed.count(), 5u);
  EXPECT_EQ(p.u0.count(), 3u);
  EXPECT_TRUE(p.anchors_u.empty());
}

TEST(SeedCross, CompleteSplit) {
  const Graph g = complete_graph(20);
  const VertexSet u = VertexSet::prefix(20, 10), w = u.complement();
  const SeedPlan p = build_seed_cross(g, u, w, 4, 6, 2);
  EXPECT_LE(p.seed.count(), 6u);
  EXPECT_TRUE(percolates(g, 4, p.seed));
  EXPECT_THROW((void)build_seed_cross(g, u, w, 4, 6, 3), HypothesisFailure);
}

TEST(SeedCrossProperty, RandomDenseInstances) {
  Rng rng(43);
  std::size_t built = 0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = erdos_renyi(40, 0.85 + 0.1 * rng.unit(), rng);
    const VertexSet u = VertexSet::prefix(40, 20), w = u.complement();
    const std::size_t r = 3 + rng.below(3), l = r + rng.below(4);
    const std::size_t j = rng.below(f_threshold(l - r) - 1);
    try {
      const SeedPlan p = build_seed_cross(g, u, w, r, l, j);
      ++built;
      EXPECT_LE(p.seed.count(), l);
      const VertexSet cl = closure(g, r, p.seed);
      EXPECT_TRUE(u.is_subset_of(cl));
      EXPECT_GE(cl.intersection_count(w), std::min(w.count(), j + l - r));
    } catch (const HypothesisFailure&) {
    }
  }
  EXPECT_GE(built, 90u);
}

TEST(SeedWalk, CliquesWithCirculantCross) {
  const Graph g = two_cliques_with_cross(10, 3);
  const VertexSet u = VertexSet::prefix(20, 10), w = u.complement();
  const SeedPlan p = build_seed_path_cycles(g, u, w, 4, 4);
  EXPECT_EQ(p.seed.count(), 4u);
  const VertexSet cl = closure(g, 4, p.seed);
  EXPECT_TRUE(u.is_subset_of(cl));
  EXPECT_GE(cl.intersection_count(w), 2u);
}

TEST(SeedWalk, LooseVertexIsExempt) {
  GraphBuilder b(two_cliques_with_cross(12, 4));
  b.remove_edge(0, 1);
  b.remove_edge(0, 2);
  const Graph g = b.build();
  const VertexSet u = VertexSet::prefix(24, 12), w = u.complement();
  const SeedPlan p = build_seed_path_cycles(g, u, w, 5, 6);
  EXPECT_LE(p.seed.count(), 6u);
  VertexSet need = u;
  need.erase(0);
  EXPECT_TRUE(need.is_subset_of(closure(g, 5, p.seed)));
}

TEST(SeedWalk, SmallWRejected) {
  // l=7, r=4: f(3)=5, so W needs at least l-r+f-1 = 7 vertices.
  const Graph g = two_cliques_with_cross(6, 5);
  const VertexSet u = VertexSet::prefix(12, 6), w = u.complement();
  try {
    (void)build_seed_path_cycles(g, u, w, 4, 7);
    FAIL();
  } catch (const HypothesisFailure& e) {
    EXPECT_EQ(e.step(), "walk hypotheses");
  }
}

TEST(OrePipeline, CompleteGraph) {
  for (auto [r, l] : {std::pair<std::size_t, std::size_t>{3, 3}, {5, 6}, {7, 8}}) {
    const auto res = find_percolating_set_ore(complete_graph(40), r, l);
    ASSERT_EQ(res.status, PipelineStatus::found);
    EXPECT_EQ(res.seed->count(), l);
    EXPECT_TRUE(oracle_percolates(complete_graph(40), r, *res.seed));
  }
}

TEST(OrePipeline, DenseRandom) {
  RandomGraphFilter f;
  f.min_ore = 200 + 4 * 6 - 2 * 7 - 2 * 4 - 1;
  const Graph g = random_graph(200, 0.95, 5, f);
  const auto res = find_percolating_set_ore(g, 6, 7);
  ASSERT_EQ(res.status, PipelineStatus::found);
  EXPECT_EQ(res.seed->count(), 7u);
  EXPECT_TRUE(oracle_percolates(g, 6, *res.seed));
  EXPECT_FALSE(res.fired_case.empty());
}

TEST(OrePipeline, TightnessGraphRefused) {
  const auto g = ore_tightness_graph(40, 7, 7, OreVariant::full);
  const auto res = find_percolating_set_ore(g.graph, 7, 7);
  EXPECT_EQ(res.status, PipelineStatus::refused);
  EXPECT_TRUE(res.transcript.has_failure());
}

TEST(BigLPipeline, CompleteGraph) {
  const auto res = find_percolating_set_big_l(complete_graph(30), 4, 5);
  ASSERT_EQ(res.status, PipelineStatus::found);
  EXPECT_EQ(res.seed->count(), 5u);
}

TEST(BigLPipeline, TightnessRefusedAndExtraEdgeAgreesWithSolver) {
  const auto t = big_l_tightness_graph(12, 4, 5);
  EXPECT_EQ(find_percolating_set_big_l(t.graph, 4, 5).status, PipelineStatus::refused);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex w = 6; w < 12; ++w) {
      if (t.graph.adjacent(u, w)) continue;
      GraphBuilder b(t.graph);
      b.add_edge(u, w);
      const Graph g = b.build();
      PipelineOptions opt;
      opt.force = true;
      const auto res = find_percolating_set_big_l(g, 4, 5, opt);
      const bool solver = exists_percolating_set(g, 4, 5).status == SolveStatus::found;
      EXPECT_EQ(res.status == PipelineStatus::found, solver) << u << '-' << w;
      if (res.seed) {
        EXPECT_TRUE(oracle_percolates(g, 4, *res.seed));
      }
    }
}

TEST(BigLPipeline, DenseRandom) {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const Graph g = erdos_renyi(150, 0.9, rng);
    const auto res = find_percolating_set_big_l(g, 4, 5);
    ASSERT_EQ(res.status, PipelineStatus::found);
    EXPECT_TRUE(oracle_percolates(g, 4, *res.seed));
  }
}

TEST(StackedPipeline, Examples) {
  const auto k = find_percolating_set_stacked(complete_graph(30), 3, 2);
  ASSERT_EQ(k.status, PipelineStatus::found);
  EXPECT_LE(k.seed->count(), 6u);
  EXPECT_EQ(find_percolating_set_stacked(disjoint_cliques(90, 3), 3, 2).status, PipelineStatus::refused);
  const Graph g = random_graph(300, 0.8, 9);
  const auto res = find_percolating_set_stacked(g, 3, 2);
  ASSERT_EQ(res.status, PipelineStatus::found);
  EXPECT_LE(res.seed->count(), 6u);
  EXPECT_TRUE(percolates(g, 3, *res.seed));
}

// Forced on the disconnected instance, every level's seed is recorded and
// the accumulated seed stays within k*r.
TEST(StackedPipeline, ForcedDisjointCliques) {
  PipelineOptions opt;
  opt.force = true;
  const Graph g = disjoint_cliques(90, 3);
  const auto res = find_percolating_set_stacked(g, 3, 3, opt);
  if (res.status == PipelineStatus::found) {
    EXPECT_LE(res.seed->count(), 9u);
    EXPECT_TRUE(percolates(g, 3, *res.seed));
  } else {
    EXPECT_TRUE(res.transcript.has_failure());
  }
}
