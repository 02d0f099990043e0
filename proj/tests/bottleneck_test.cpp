#include <gtest/gtest.h>

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/oracle.hpp"

namespace bdalloc {
namespace {

WeightedGraph path() { return parse_graph("v a 1\nv b 2\ne a b\n"); }
WeightedGraph edge() { return parse_graph("v a 1\nv b 1\ne a b\n"); }
WeightedGraph fig1() {
  return parse_graph(
      "v v1 2\nv v2 2\nv v3 1\nv v4 1\nv v5 1\nv v6 1\n"
      "e v1 v3\ne v2 v4\ne v3 v5\ne v4 v6\ne v5 v6\n");
}

TEST(ProbeBound, CeilLog2) {
  EXPECT_EQ(binary_search_probe_bound(2), 3u);   // 2*4 = 8
  EXPECT_EQ(binary_search_probe_bound(3), 5u);   // 18
  EXPECT_EQ(binary_search_probe_bound(8), 7u);   // 128
  EXPECT_EQ(binary_search_probe_bound(9), 8u);   // 162
}

TEST(MinimalAlphaRatio, PathHitsOnFirstMidpoint) {
  auto r = minimal_alpha_ratio(path());
  EXPECT_EQ(r.alpha_star, make_rational(1, 2));
  EXPECT_EQ(r.witness, (VertexSet{"b"}));
  EXPECT_EQ(r.iterations, 1u);
}

TEST(MinimalAlphaRatio, SingleEdgeIsWholeGraph) {
  auto r = minimal_alpha_ratio(edge());
  EXPECT_EQ(r.alpha_star, 1);
  EXPECT_EQ(r.witness, (VertexSet{"a", "b"}));
  EXPECT_LE(r.iterations, binary_search_probe_bound(2));
}

TEST(MinimalAlphaRatio, SixVertexExample) {
  auto g = fig1();
  auto r = minimal_alpha_ratio(g);
  EXPECT_EQ(r.alpha_star, make_rational(1, 2));
  EXPECT_EQ(alpha_ratio(g, r.witness), make_rational(1, 2));
}

TEST(MaximalBottleneck, Examples) {
  EXPECT_EQ(maximal_bottleneck(path(), make_rational(1, 2)), (VertexSet{"b"}));
  EXPECT_EQ(maximal_bottleneck(edge(), Rational{1}), (VertexSet{"a", "b"}));
  EXPECT_EQ(maximal_bottleneck(fig1(), make_rational(1, 2)), (VertexSet{"v1", "v2"}));
}

TEST(MaximalBottleneck, WrongAlphaIsDetected) {
  // With a value that is not α*, the perturbed cut cannot certify itself.
  EXPECT_THROW(maximal_bottleneck(path(), make_rational(1, 3)), InvariantError);
}

TEST(BottleneckDecomposition, SixVertexExample) {
  auto d = bottleneck_decomposition(fig1());
  ASSERT_EQ(d.pairs.size(), 2u);
  EXPECT_EQ(d.pairs[0], (BottleneckPair{1, {"v1", "v2"}, {"v3", "v4"}, make_rational(1, 2)}));
  EXPECT_EQ(d.pairs[1], (BottleneckPair{2, {"v5", "v6"}, {"v5", "v6"}, Rational{1}}));
}

TEST(BottleneckDecomposition, SmallCases) {
  auto e = bottleneck_decomposition(edge());
  ASSERT_EQ(e.pairs.size(), 1u);
  EXPECT_EQ(e.pairs[0], (BottleneckPair{1, {"a", "b"}, {"a", "b"}, Rational{1}}));
  auto p = bottleneck_decomposition(path());
  ASSERT_EQ(p.pairs.size(), 1u);
  EXPECT_EQ(p.pairs[0], (BottleneckPair{1, {"b"}, {"a"}, make_rational(1, 2)}));
}

TEST(DecompositionViolation, CatchesBrokenStructure) {
  auto g = fig1();
  auto good = bottleneck_decomposition(g);
  EXPECT_FALSE(decomposition_violation(g, good));

  auto swapped = good;
  std::swap(swapped.pairs[0].alpha, swapped.pairs[1].alpha);
  EXPECT_TRUE(decomposition_violation(g, swapped));

  auto missing = good;
  missing.pairs.pop_back();
  EXPECT_TRUE(decomposition_violation(g, missing));

  auto wrong_c = good;
  wrong_c.pairs[0].c.insert("v5");
  EXPECT_TRUE(decomposition_violation(g, wrong_c));

  auto tri = parse_graph("v a 1\nv b 1\nv c 4\ne a b\ne b c\ne a c\n");
  Decomposition not_independent{{{1, {"a", "b"}, {"a", "b", "c"}, make_rational(6, 2)}}};
  EXPECT_TRUE(decomposition_violation(tri, not_independent));
}

class DecompositionProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(DecompositionProperty, AgreesWithOracleAndRespectsBounds) {
  std::uint64_t seed = GetParam();
  auto g = random_connected_graph(2 + seed % 11, 1 + seed % 9, make_rational(1 + seed % 3, 3), seed);
  std::vector<RoundStats> stats;
  auto d = bottleneck_decomposition(g, &stats);
  EXPECT_EQ(d, brute_decomposition(g));
  EXPECT_FALSE(decomposition_violation(g, d));
  ASSERT_EQ(stats.size(), d.pairs.size());
  for (const auto& s : stats) EXPECT_LE(s.iterations, binary_search_probe_bound(s.subgraph_weight));

  auto r = minimal_alpha_ratio(g);
  EXPECT_EQ(r.alpha_star, brute_minimal_alpha(g));
  EXPECT_EQ(alpha_ratio(g, r.witness), r.alpha_star);
  EXPECT_EQ(maximal_bottleneck(g, r.alpha_star), brute_maximal_bottleneck(g));
}

INSTANTIATE_TEST_SUITE_P(Seeds, DecompositionProperty, ::testing::Range<std::uint64_t>(0, 80));

}  // namespace
}  // namespace bdalloc
