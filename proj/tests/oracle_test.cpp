#include <gtest/gtest.h>

#include "bdalloc/oracle.hpp"

namespace bdalloc {
namespace {

WeightedGraph fig1() {
  return parse_graph(
      "v v1 2\nv v2 2\nv v3 1\nv v4 1\nv v5 1\nv v6 1\n"
      "e v1 v3\ne v2 v4\ne v3 v5\ne v4 v6\ne v5 v6\n");
}

TEST(Oracle, PathAndEdge) {
  auto p = parse_graph("v a 1\nv b 2\ne a b\n");
  EXPECT_EQ(brute_minimal_alpha(p), make_rational(1, 2));
  EXPECT_EQ(brute_maximal_bottleneck(p), (VertexSet{"b"}));

  auto e = parse_graph("v a 1\nv b 1\ne a b\n");
  EXPECT_EQ(brute_minimal_alpha(e), 1);
  EXPECT_EQ(brute_maximal_bottleneck(e), (VertexSet{"a", "b"}));
  auto d = brute_decomposition(e);
  ASSERT_EQ(d.pairs.size(), 1u);
  EXPECT_EQ(d.pairs[0].b, d.pairs[0].c);
}

TEST(Oracle, Fig1) {
  auto g = fig1();
  EXPECT_EQ(brute_minimal_alpha(g), make_rational(1, 2));
  EXPECT_EQ(brute_maximal_bottleneck(g), (VertexSet{"v1", "v2"}));
  auto d = brute_decomposition(g);
  ASSERT_EQ(d.pairs.size(), 2u);
  EXPECT_EQ(d.pairs[0].c, (VertexSet{"v3", "v4"}));
  EXPECT_EQ(d.pairs[1].alpha, 1);
  EXPECT_EQ(d.pairs[1].b, (VertexSet{"v5", "v6"}));
}

TEST(Oracle, UnionOfTiedMinimizers) {
  // {l1,l2} and {l3,l4} each have ratio 1/2, and so does their union.
  auto g = parse_graph(
      "v c1 1\nv c2 1\nv l1 1\nv l2 1\nv l3 1\nv l4 1\n"
      "e c1 c2\ne c1 l1\ne c1 l2\ne c2 l3\ne c2 l4\n");
  EXPECT_EQ(brute_minimal_alpha(g), make_rational(1, 2));
  EXPECT_EQ(brute_maximal_bottleneck(g), (VertexSet{"l1", "l2", "l3", "l4"}));
}

TEST(Oracle, LimitIsEnforced) {
  auto g = fig1();
  EXPECT_THROW(brute_minimal_alpha(g, OracleLimit{5}), InputError);
  EXPECT_NO_THROW(brute_minimal_alpha(g, OracleLimit{6}));
}

TEST(Oracle, MinCutCapacityClosedForm) {
  auto p = parse_graph("v a 1\nv b 2\ne a b\n");
  // α = 1/4: B = ∅ gives 3/4, B = {b} gives 1/4 + 1.
  EXPECT_EQ(brute_min_cut_capacity(p, make_rational(1, 4)), make_rational(3, 4));
  // α = 1: B = {b} gives 1 + 1 = 2 < 3.
  EXPECT_EQ(brute_min_cut_capacity(p, Rational{1}), 2);
  EXPECT_EQ(brute_min_cut_capacity(p, Rational{1}, make_rational(1, 27)), 2 + make_rational(1, 27));
}

TEST(Generator, TwoVerticesAlwaysGetTheirEdge) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_connected_graph(2, 5, make_rational(1, 10), seed);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.names(), (std::vector<std::string>{"v0", "v1"}));
  }
}

TEST(Generator, DeterministicPerSeed) {
  auto a = random_connected_graph(10, 9, make_rational(1, 2), 7);
  auto b = random_connected_graph(10, 9, make_rational(1, 2), 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_graph(a), serialize_graph(b));
  bool differs = false;
  for (std::uint64_t s = 8; s < 12 && !differs; ++s)
    differs = !(random_connected_graph(10, 9, make_rational(1, 2), s) == a);
  EXPECT_TRUE(differs);
}

TEST(Generator, BoundsAndConnectivity) {
  auto g = random_connected_graph(8, 9, make_rational(1, 2), 42);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_TRUE(g.is_connected());
  EXPECT_GE(g.edge_count(), 7u);
  for (std::size_t v = 0; v < g.size(); ++v) {
    EXPECT_GE(g.weight(v), 1);
    EXPECT_LE(g.weight(v), 9);
  }
  auto full = random_connected_graph(6, 3, Rational{1}, 3);
  EXPECT_EQ(full.edge_count(), 15u);
}

TEST(Generator, NamesArePadded) {
  EXPECT_EQ(generated_vertex_name(3, 12), "v03");
  EXPECT_EQ(generated_vertex_name(11, 12), "v11");
  EXPECT_EQ(generated_vertex_name(0, 10), "v0");
}

TEST(Generator, RejectsBadArguments) {
  EXPECT_THROW(random_connected_graph(1, 3, Rational{1}, 0), InputError);
  EXPECT_THROW(random_connected_graph(3, 0, Rational{1}, 0), InputError);
  EXPECT_THROW(random_connected_graph(3, 3, Rational{0}, 0), InputError);
  EXPECT_THROW(random_connected_graph(3, 3, make_rational(3, 2), 0), InputError);
}

}  // namespace
}  // namespace bdalloc
