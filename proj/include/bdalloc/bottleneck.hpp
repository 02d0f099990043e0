#ifndef BDALLOC_BOTTLENECK_HPP
#define BDALLOC_BOTTLENECK_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bdalloc/errors.hpp"
#include "bdalloc/flow.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

struct MinimalAlpha {
  Rational alpha_star;
  VertexSet witness;           // nonempty, α(witness) = alpha_star
  std::size_t iterations = 0;  // max-flow solves performed
};

struct BottleneckPair {
  std::size_t index = 0;  // 1-based
  VertexSet b;
  VertexSet c;
  Rational alpha;

  friend bool operator==(const BottleneckPair&, const BottleneckPair&) = default;
};

struct Decomposition {
  std::vector<BottleneckPair> pairs;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct RoundStats {
  Weight subgraph_weight = 0;
  std::size_t iterations = 0;
};

/// ⌈log₂(2·w²(V))⌉, the most probes the binary search may use.
inline std::size_t binary_search_probe_bound(Weight total) {
  Integer bound = Integer{total} * total * 2;
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  // 2^(bits-1) <= bound < 2^bits; the ceiling drops by one on exact powers.
  return mpz_popcount(bound.get_mpz_t()) == 1 ? bits - 1 : bits;
}

namespace detail {

inline void require_no_isolated(const WeightedGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.neighbors(v).empty()) throw InputError("isolated vertex '" + g.name(v) + "'");
}

inline VertexSet maximal_cut_set(const FlowResult& fr) {
  return corresponding_set(fr.network, min_cut_maximal(fr));
}

}  // namespace detail

/// Minimum α-ratio over nonempty vertex sets, by binary search over α with
/// one max-flow per probe.
///
/// Keeps a < α* <= b where b is 1 or the ratio of a recorded witness. At the
/// midpoint α the maximal min cut of N(G, α) yields a set B:
///   flow < α·w(V)            → α > α*, tighten b to α(B) < α;
///   flow = α·w(V), B nonempty → α(B) = α = α*, done;
///   flow = α·w(V), B empty    → α < α*, raise a.
/// Once b - a < 1/w²(V) only one achievable ratio fits, so α* = b.
inline MinimalAlpha minimal_alpha_ratio(const WeightedGraph& g) {
  detail::require_no_isolated(g);
  const Weight total = g.total_weight();
  const Rational resolution = make_rational(Integer{1}, Integer{total} * total);

  Rational lo{0}, hi{1};
  std::optional<VertexSet> witness;
  std::size_t iterations = 0;
  while (hi - lo >= resolution) {
    Rational alpha = (lo + hi) / 2;
    ++iterations;
    auto fr = max_flow(build_alpha_network(g, alpha));
    const Rational target = alpha * total;
    auto b = detail::maximal_cut_set(fr);
    if (fr.value > target)
      throw InvariantError("max flow " + to_string(fr.value) + " exceeds alpha*w(V)");
    if (fr.value < target) {
      if (b.empty()) throw InvariantError("cut below alpha*w(V) with empty corresponding set");
      Rational ratio = alpha_ratio(g, b);
      if (ratio >= alpha || ratio <= lo)
        throw InvariantError("witness ratio " + to_string(ratio) + " outside (a, alpha)");
      hi = ratio;
      witness = std::move(b);
    } else if (!b.empty()) {
      if (alpha_ratio(g, b) != alpha)
        throw InvariantError("tight cut whose corresponding set has ratio != alpha");
      return {alpha, std::move(b), iterations};
    } else {
      lo = alpha;
    }
  }
  if (!witness) {
    if (hi != 1) throw InvariantError("binary search ended without a witness");
    witness = VertexSet(g.names().begin(), g.names().end());
  }
  return {hi, std::move(*witness), iterations};
}

/// The unique inclusion-maximal set of ratio α*, read off the min cut of
/// N(G, α*, ε) with ε = 1/w³(V).
inline VertexSet maximal_bottleneck(const WeightedGraph& g, const Rational& alpha_star) {
  detail::require_no_isolated(g);
  const Integer total{g.total_weight()};
  const Rational epsilon = make_rational(Integer{1}, total * total * total);
  auto fr = max_flow(build_perturbed_network(g, alpha_star, epsilon));
  auto b = detail::maximal_cut_set(fr);
  if (b.empty()) throw InvariantError("perturbed network has an empty minimum cut");
  if (alpha_ratio(g, b) != alpha_star)
    throw InvariantError("maximal bottleneck ratio " + to_string(alpha_ratio(g, b)) +
                         " != alpha* " + to_string(alpha_star));
  return b;
}

/// Returns a description of the first violated structural property, if any.
inline std::optional<std::string> decomposition_violation(const WeightedGraph& g,
                                                          const Decomposition& d) {
  if (d.pairs.empty()) return "decomposition has no pairs";
  std::vector<bool> removed(g.size(), false);
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto& p = d.pairs[i];
    const std::string tag = "pair " + std::to_string(i + 1) + ": ";
    if (p.index != i + 1) return tag + "index out of sequence";
    if (p.b.empty() || p.c.empty()) return tag + "empty side";
    auto bi = to_indices(g, p.b);
    auto ci = to_indices(g, p.c);
    for (auto v : bi)
      if (removed[v]) return tag + "vertex '" + g.name(v) + "' already assigned";
    for (auto v : ci)
      if (removed[v] && !p.b.count(g.name(v))) return tag + "vertex '" + g.name(v) + "' already assigned";

    // C_i = Γ(B_i) ∩ V_i.
    VertexSet expected_c;
    for (auto v : neighborhood_indices(g, bi))
      if (!removed[v]) expected_c.insert(g.name(v));
    if (expected_c != p.c) return tag + "C is not the surviving neighborhood of B";

    if (p.alpha != make_rational(weight_of(g, ci), weight_of(g, bi)))
      return tag + "alpha != w(C)/w(B)";
    if (sgn(p.alpha) <= 0 || p.alpha > 1) return tag + "alpha outside (0, 1]";
    if (i > 0 && !(d.pairs[i - 1].alpha < p.alpha)) return tag + "alpha not strictly increasing";
    if (p.alpha == 1) {
      if (i + 1 != d.pairs.size()) return tag + "alpha = 1 before the last pair";
      if (p.b != p.c) return tag + "alpha = 1 but B != C";
    } else {
      for (auto u : bi)
        for (auto v : g.neighbors(u))
          if (p.b.count(g.name(v))) return tag + "B is not independent";
      for (const auto& v : p.b)
        if (p.c.count(v)) return tag + "B and C intersect";
    }
    for (auto v : bi) removed[v] = true;
    for (auto v : ci) removed[v] = true;
  }
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!removed[v]) return "vertex '" + g.name(v) + "' not covered by any pair";
  return std::nullopt;
}

/// Repeatedly extracts the maximal bottleneck pair and removes it.
inline Decomposition bottleneck_decomposition(const WeightedGraph& g,
                                              std::vector<RoundStats>* stats = nullptr) {
  Decomposition d;
  WeightedGraph current = g;
  for (std::size_t round = 1;; ++round) {
    auto minimal = minimal_alpha_ratio(current);
    if (stats) stats->push_back({current.total_weight(), minimal.iterations});
    auto b = maximal_bottleneck(current, minimal.alpha_star);
    auto c = neighborhood(current, b);
    d.pairs.push_back({round, b, c, minimal.alpha_star});

    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < current.size(); ++v)
      if (!b.count(current.name(v)) && !c.count(current.name(v))) rest.push_back(v);
    if (rest.empty()) break;
    current = induced_subgraph(current, rest);
  }
  if (auto bad = decomposition_violation(g, d)) throw InvariantError("decomposition: " + *bad);
  return d;
}

}  // namespace bdalloc

#endif  // BDALLOC_BOTTLENECK_HPP
