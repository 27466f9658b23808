#include <gtest/gtest.h>

#include <set>

#include "bootperc/vertex_set.hpp"
#include "bootperc/random.hpp"
#include "generators.hpp"

using bootperc::VertexSet;

TEST(VertexSet, EmptyAndFull) {
  const VertexSet e(70);
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.count(), 0u);
  const VertexSet f = VertexSet::full(70);
  EXPECT_EQ(f.count(), 70u);
  EXPECT_TRUE(f.is_full());
  EXPECT_EQ(f.complement(), e);
}

TEST(VertexSet, InsertEraseAcrossWordBoundary) {
  VertexSet s(130);
  for (std::size_t v : {0u, 63u, 64u, 127u, 129u}) s.insert(v);
  EXPECT_EQ(s.count(), 5u);
  EXPECT_EQ(s.to_vector(), (std::vector<std::size_t>{0, 63, 64, 127, 129}));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(s.next(1), 63u);
  EXPECT_EQ(s.next(64), 127u);
  EXPECT_EQ(s.next(130), 130u);
}

TEST(VertexSet, OutOfRangeThrows) {
  VertexSet s(5);
  EXPECT_THROW(s.insert(5), bootperc::InvalidArgument);
  EXPECT_THROW((void)(s | VertexSet(6)), bootperc::InvalidArgument);
}

TEST(VertexSet, LowestAndPrefix) {
  const VertexSet s(10, {2, 3, 5, 7, 9});
  EXPECT_EQ(s.lowest(3), VertexSet(10, {2, 3, 5}));
  EXPECT_EQ(s.lowest(99), s);
  EXPECT_EQ(VertexSet::prefix(10, 4), VertexSet(10, {0, 1, 2, 3}));
}

TEST(VertexSet, ColexOrder) {
  // colex: compare largest differing element.
  EXPECT_TRUE(colex_less(VertexSet(5, {0, 1, 2}), VertexSet(5, {0, 1, 3})));
  EXPECT_TRUE(colex_less(VertexSet(5, {2, 3}), VertexSet(5, {0, 4})));
  EXPECT_FALSE(colex_less(VertexSet(5, {0, 4}), VertexSet(5, {2, 3})));
}

TEST(VertexSet, ToString) { EXPECT_EQ(VertexSet(6, {1, 4}).to_string(), "{1,4}"); }

// Word-parallel operations agree with std::set on random pairs.
TEST(VertexSetProperty, MatchesStdSet) {
  bootperc::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(200);
    const VertexSet a = gen::subset(rng, n, rng.unit());
    const VertexSet b = gen::subset(rng, n, rng.unit());
    std::set<std::size_t> sa, sb;
    a.for_each([&](std::size_t v) { sa.insert(v); });
    b.for_each([&](std::size_t v) { sb.insert(v); });
    std::set<std::size_t> uni = sa, inter, diff;
    uni.insert(sb.begin(), sb.end());
    for (auto v : sa) (sb.count(v) ? inter : diff).insert(v);
    EXPECT_EQ((a | b).count(), uni.size());
    EXPECT_EQ((a & b).count(), inter.size());
    EXPECT_EQ((a - b).count(), diff.size());
    EXPECT_EQ(a.intersection_count(b), inter.size());
    EXPECT_EQ(a.intersects(b), !inter.empty());
    EXPECT_EQ(a.is_subset_of(b), diff.empty());
    EXPECT_EQ(a.complement().count(), n - sa.size());
  }
}
