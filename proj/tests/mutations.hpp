#ifndef BDALLOC_TESTS_MUTATIONS_HPP
#define BDALLOC_TESTS_MUTATIONS_HPP

// One hand-built mutation of a valid bundle per checkable condition. Shared
// by the fairness unit tests and the acceptance suite.

#include <string>
#include <vector>

#include "bdalloc/fairness.hpp"
#include "bdalloc/mechanism.hpp"

namespace bdalloc::testing {

struct Mutation {
  std::string target;  // condition name expected to be flagged
  std::string description;
  WeightedGraph graph;
  EquilibriumBundle bundle;
};

inline EquilibriumBundle with_allocation(const WeightedGraph& g, Allocation a, VertexValues prices) {
  EquilibriumBundle b;
  b.allocation = std::move(a);
  b.prices = std::move(prices);
  b.utilities = utilities(g, b.allocation);
  return b;
}

inline std::vector<Mutation> condition_mutations() {
  std::vector<Mutation> out;

  auto path = parse_graph("v a 1\nv b 2\ne a b\n");
  auto path_bundle = bd_mechanism(path);
  {
    auto b = path_bundle;
    b.allocation.set("a", "b", make_rational(1, 2));
    b.utilities = utilities(path, b.allocation);
    out.push_back({condition::kClearance, "path: x_ab lowered to 1/2", path, b});
  }
  {
    auto b = path_bundle;
    b.prices["a"] = make_rational(1, 2);
    out.push_back({condition::kBudget, "path: p_a lowered to 1/2", path, b});
  }
  {
    auto b = path_bundle;
    b.prices["a"] = Rational{2};
    out.push_back({condition::kOptimality, "path: p_a raised to 2", path, b});
  }

  auto star = parse_graph("v c 3\nv l1 1\nv l2 1\nv l3 1\ne c l1\ne c l2\ne c l3\n");
  {
    auto b = bd_mechanism(star);
    b.allocation.set("c", "l1", make_rational(1, 2));
    b.allocation.set("c", "l2", make_rational(1, 4));
    b.allocation.set("c", "l3", make_rational(1, 4));
    b.utilities = utilities(star, b.allocation);
    out.push_back({condition::kProportional, "star: center splits 1/2, 1/4, 1/4", star, b});
  }

  // u(1)-a(2)-b(2)-v(1): the BD allocation has a single level 1. Moving a's
  // and b's whole resource outward puts the adjacent a, b together on the
  // lowest level while the other three level conditions still hold.
  auto p4 = parse_graph("v a 2\nv b 2\nv u 1\nv v 1\ne u a\ne a b\ne b v\n");
  {
    auto b = bd_mechanism(p4);
    Allocation x;
    x.set("a", "u", Rational{1});
    x.set("u", "a", Rational{1});
    x.set("b", "v", Rational{1});
    x.set("v", "b", Rational{1});
    out.push_back({condition::kLexIndependent, "path u-a-b-v: a and b trade only outward", p4,
                   with_allocation(p4, x, b.prices)});
  }

  // Center h(4) with leaves c1, c2 of weight 1: BD gives h -> each leaf 1/2.
  auto fork = parse_graph("v h 4\nv c1 1\nv c2 1\ne h c1\ne h c2\n");
  auto fork_bundle = bd_mechanism(fork);
  {
    Allocation x = fork_bundle.allocation;
    x.set("h", "c1", Rational{1});
    x.set("h", "c2", Rational{0});
    out.push_back({condition::kLexReceivers, "fork: h sends everything to c1", fork,
                   with_allocation(fork, x, fork_bundle.prices)});
  }
  {
    Allocation x = fork_bundle.allocation;
    x.set("h", "c1", make_rational(3, 4));
    x.set("h", "c2", make_rational(1, 4));
    out.push_back({condition::kLexReciprocal, "fork: h splits 3/4, 1/4", fork,
                   with_allocation(fork, x, fork_bundle.prices)});
  }
  {
    Allocation x = fork_bundle.allocation;
    x.set("h", "c1", make_rational(3, 4));
    x.set("h", "c2", make_rational(1, 4));
    out.push_back({condition::kLexBalanced, "fork: h splits 3/4, 1/4", fork,
                   with_allocation(fork, x, fork_bundle.prices)});
  }
  return out;
}

}  // namespace bdalloc::testing

#endif  // BDALLOC_TESTS_MUTATIONS_HPP
