#ifndef BDALLOC_FAIRNESS_HPP
#define BDALLOC_FAIRNESS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdalloc/errors.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/mechanism.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

// Names of the checkable conditions, as they appear in reports.
namespace condition {
inline constexpr const char* kClearance = "market_clearance";
inline constexpr const char* kBudget = "budget_constraint";
inline constexpr const char* kOptimality = "individual_optimality";
inline constexpr const char* kProportional = "proportional_response";
inline constexpr const char* kLexClearance = "lex_clearance_precondition";
inline constexpr const char* kLexIndependent = "lex_independent_levels";
inline constexpr const char* kLexReceivers = "lex_receiver_levels";
inline constexpr const char* kLexReciprocal = "lex_reciprocal_levels";
inline constexpr const char* kLexBalanced = "lex_balanced_levels";
inline constexpr const char* kLexSingleLevel = "lex_single_level";
}  // namespace condition

struct Witness {
  std::string subject;   // vertex "u", ordered pair "u->v", edge "u-v" or "level i"
  std::string relation;  // what was compared
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
};

struct ConditionResult {
  std::string name;
  bool holds = true;
  std::optional<Witness> witness;
};

struct FairnessReport {
  bool passed = true;
  std::vector<ConditionResult> conditions;

  void add(ConditionResult c) {
    passed = passed && c.holds;
    conditions.push_back(std::move(c));
  }

  void merge(const FairnessReport& other) {
    for (const auto& c : other.conditions) add(c);
  }

  const ConditionResult* find(std::string_view name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct RatioLevels {
  VertexValues beta;
  std::vector<Rational> levels;   // l_1 < ... < l_M
  std::vector<VertexSet> classes;  // L_1 ... L_M
};

namespace detail {

inline ConditionResult first_violation(std::string name, std::optional<Witness> w) {
  ConditionResult r{std::move(name), !w.has_value(), std::move(w)};
  return r;
}

inline Rational outgoing_sum(const WeightedGraph& g, const Allocation& a, std::size_t u) {
  Rational sum{0};
  for (auto v : g.neighbors(u)) sum += a.get(g.name(u), g.name(v));
  return sum;
}

inline std::optional<Witness> clearance_witness(const WeightedGraph& g, const Allocation& a) {
  for (std::size_t u = 0; u < g.size(); ++u) {
    Rational sum = outgoing_sum(g, a, u);
    if (sum != 1) return Witness{g.name(u), "sum of outgoing fractions = 1", sum, Rational{1}};
  }
  return std::nullopt;
}

}  // namespace detail

/// Market clearance, budget constraints, and individual optimality for
/// linear utilities: each agent's utility must equal p_u times the best
/// w_v/p_v among its neighbors, and it may only buy from such neighbors.
inline FairnessReport check_market_equilibrium(const WeightedGraph& g,
                                               const EquilibriumBundle& bundle) {
  const auto& a = bundle.allocation;
  const auto& p = bundle.prices;
  for (const auto& name : g.names())
    if (!p.count(name)) throw InputError("no price for vertex '" + name + "'");
  const auto util = utilities(g, a);

  FairnessReport report;
  report.add(detail::first_violation(condition::kClearance, detail::clearance_witness(g, a)));

  std::optional<Witness> budget;
  for (std::size_t u = 0; u < g.size() && !budget; ++u) {
    const auto& name = g.name(u);
    Rational spend{0};
    for (auto v : g.neighbors(u)) spend += a.get(g.name(v), name) * p.at(g.name(v));
    if (spend > p.at(name)) budget = Witness{name, "spending <= price", spend, p.at(name)};
  }
  report.add(detail::first_violation(condition::kBudget, std::move(budget)));

  std::optional<Witness> optimal;
  for (std::size_t u = 0; u < g.size() && !optimal; ++u) {
    const auto& name = g.name(u);
    if (sgn(p.at(name)) <= 0) {
      optimal = Witness{name, "price > 0", p.at(name), Rational{0}};
      break;
    }
    std::optional<Rational> best;
    for (auto v : g.neighbors(u)) {
      const auto& pv = p.at(g.name(v));
      if (sgn(pv) <= 0) {
        optimal = Witness{g.name(v), "price > 0", pv, Rational{0}};
        break;
      }
      Rational bang = g.weight(v) / pv;
      if (!best || bang > *best) best = bang;
    }
    if (optimal) break;
    Rational bound = p.at(name) * *best;
    if (util.at(name) != bound) {
      optimal = Witness{name, "utility = price * best weight/price ratio", util.at(name), bound};
      break;
    }
    for (auto v : g.neighbors(u)) {
      if (sgn(a.get(g.name(v), name)) > 0) {
        Rational bang = g.weight(v) / p.at(g.name(v));
        if (bang != *best) {
          optimal = Witness{g.name(v) + "->" + name, "seller has the best weight/price ratio", bang, *best};
          break;
        }
      }
    }
  }
  report.add(detail::first_violation(condition::kOptimality, std::move(optimal)));
  return report;
}

/// x_uv = x_vu·w_v / U_u for every ordered edge carrying trade either way.
inline FairnessReport check_proportional_response(const WeightedGraph& g, const Allocation& a) {
  const auto util = utilities(g, a);
  std::optional<Witness> bad;
  for (std::size_t u = 0; u < g.size() && !bad; ++u) {
    const auto& un = g.name(u);
    for (auto v : g.neighbors(u)) {
      const auto& vn = g.name(v);
      const auto& out = a.get(un, vn);
      const auto& in = a.get(vn, un);
      if (sgn(out) == 0 && sgn(in) == 0) continue;
      const auto& received = util.at(un);
      if (sgn(received) == 0) {
        bad = Witness{un + "->" + vn, "gives resource while receiving none", out, Rational{0}};
        break;
      }
      Rational expect = in * g.weight(v) / received;
      if (out != expect) {
        bad = Witness{un + "->" + vn, "x_uv = x_vu * w_v / U_u", out, expect};
        break;
      }
    }
  }
  FairnessReport report;
  report.add(detail::first_violation(condition::kProportional, std::move(bad)));
  return report;
}

/// β_u = U_u / w_u with its distinct levels and level classes. Requires
/// market clearance (InputError otherwise).
inline RatioLevels exchange_ratio_levels(const WeightedGraph& g, const Allocation& a) {
  if (auto w = detail::clearance_witness(g, a))
    throw InputError("exchange ratios need market clearance; fails at " + w->subject);
  const auto util = utilities(g, a);
  RatioLevels out;
  for (std::size_t u = 0; u < g.size(); ++u) {
    Rational beta = util.at(g.name(u)) / g.weight(u);
    out.levels.push_back(beta);
    out.beta[g.name(u)] = std::move(beta);
  }
  std::sort(out.levels.begin(), out.levels.end());
  out.levels.erase(std::unique(out.levels.begin(), out.levels.end()), out.levels.end());
  out.classes.resize(out.levels.size());
  for (const auto& [name, beta] : out.beta) {
    auto pos = std::lower_bound(out.levels.begin(), out.levels.end(), beta) - out.levels.begin();
    out.classes[static_cast<std::size_t>(pos)].insert(name);
  }
  return out;
}

/// Lex-optimality through the level characterization: for i <= M/2, L_i is
/// independent, N(L_i) = L_{M-i+1}, l_i·l_{M-i+1} = 1 and
/// Σ_{L_i} U = Σ_{L_{M-i+1}} w; with a single level, l_1 = 1.
inline FairnessReport check_lex_optimal(const WeightedGraph& g, const Allocation& a) {
  FairnessReport report;
  if (auto w = detail::clearance_witness(g, a)) {
    report.add({condition::kLexClearance, false, std::move(w)});
    return report;
  }
  const auto lv = exchange_ratio_levels(g, a);
  const auto util = utilities(g, a);
  const std::size_t m = lv.levels.size();

  if (m == 1) {
    std::optional<Witness> w;
    if (lv.levels[0] != 1) w = Witness{"level 1", "l_1 = 1", lv.levels[0], Rational{1}};
    report.add(detail::first_violation(condition::kLexSingleLevel, std::move(w)));
    return report;
  }

  std::optional<Witness> indep, receivers, reciprocal, balanced;
  for (std::size_t i = 0; i < m / 2; ++i) {
    const auto& low = lv.classes[i];
    const auto& high = lv.classes[m - 1 - i];
    const std::string level = "level " + std::to_string(i + 1);

    for (const auto& un : low) {
      auto u = g.require_index(un);
      for (auto v : g.neighbors(u)) {
        if (!indep && v > u && low.count(g.name(v)))
          indep = Witness{un + "-" + g.name(v), level + " contains an edge", lv.levels[i], lv.levels[i]};
      }
    }

    VertexSet receiving;
    for (const auto& [key, x] : a.entries())
      if (low.count(key.first) && sgn(x) > 0) receiving.insert(key.second);
    if (!receivers && receiving != high) {
      std::string odd;
      for (const auto& v : receiving)
        if (!high.count(v)) { odd = v; break; }
      if (odd.empty())
        for (const auto& v : high)
          if (!receiving.count(v)) { odd = v; break; }
      receivers = Witness{level + ": " + odd,
                          "receivers of level " + std::to_string(i + 1) + " = level " +
                              std::to_string(m - i),
                          lv.beta.at(odd), lv.levels[m - 1 - i]};
    }

    Rational product = lv.levels[i] * lv.levels[m - 1 - i];
    if (!reciprocal && product != 1)
      reciprocal = Witness{level, "l_i * l_(M-i+1) = 1", product, Rational{1}};

    Rational received{0}, supplied{0};
    for (const auto& v : low) received += util.at(v);
    for (const auto& v : high) supplied += g.weight(g.require_index(v));
    if (!balanced && received != supplied)
      balanced = Witness{level, "sum U over L_i = sum w over L_(M-i+1)", received, supplied};
  }
  report.add(detail::first_violation(condition::kLexIndependent, std::move(indep)));
  report.add(detail::first_violation(condition::kLexReceivers, std::move(receivers)));
  report.add(detail::first_violation(condition::kLexReciprocal, std::move(reciprocal)));
  report.add(detail::first_violation(condition::kLexBalanced, std::move(balanced)));
  return report;
}

/// Prices for an allocation supplied without them: p_u = w_u·min(1, β_u).
/// For a BD allocation these are exactly the equilibrium prices.
inline VertexValues derived_prices(const WeightedGraph& g, const Allocation& a) {
  const auto util = utilities(g, a);
  VertexValues p;
  for (std::size_t u = 0; u < g.size(); ++u) {
    Rational w{g.weight(u)};
    Rational beta = util.at(g.name(u)) / w;
    p[g.name(u)] = beta < 1 ? Rational{beta * w} : w;
  }
  return p;
}

/// All three checkers on one bundle.
inline FairnessReport check_all(const WeightedGraph& g, const EquilibriumBundle& bundle) {
  FairnessReport r = check_market_equilibrium(g, bundle);
  r.merge(check_proportional_response(g, bundle.allocation));
  r.merge(check_lex_optimal(g, bundle.allocation));
  return r;
}

}  // namespace bdalloc

#endif  // BDALLOC_FAIRNESS_HPP
