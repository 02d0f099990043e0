#ifndef BDALLOC_MECHANISM_HPP
#define BDALLOC_MECHANISM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/errors.hpp"
#include "bdalloc/flow.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

using VertexValues = std::map<std::string, Rational>;

/// Fractions x_uv of u's resource sent to v. Absent entries are zero; zero
/// is never stored.
class Allocation {
 public:
  using Key = std::pair<std::string, std::string>;

  const Rational& get(const std::string& from, const std::string& to) const {
    static const Rational kZero{0};
    auto it = fractions_.find({from, to});
    return it == fractions_.end() ? kZero : it->second;
  }

  void set(const std::string& from, const std::string& to, Rational x) {
    if (sgn(x) == 0)
      fractions_.erase({from, to});
    else
      fractions_[{from, to}] = std::move(x);
  }

  const std::map<Key, Rational>& entries() const noexcept { return fractions_; }
  bool empty() const noexcept { return fractions_.empty(); }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::map<Key, Rational> fractions_;
};

struct EquilibriumBundle {
  Allocation allocation;
  VertexValues prices;
  VertexValues utilities;
  Decomposition decomposition;
};

/// Rejects entries naming unknown vertices, non-edges, or fractions outside
/// [0, 1]. Throws InputError.
inline void validate_allocation_support(const WeightedGraph& g, const Allocation& a) {
  for (const auto& [key, x] : a.entries()) {
    auto u = g.index_of(key.first), v = g.index_of(key.second);
    if (!u || !v)
      throw InputError("allocation names unknown vertex in " + key.first + "->" + key.second);
    if (!g.has_edge(*u, *v))
      throw InputError("allocation entry " + key.first + "->" + key.second + " is not an edge");
    if (sgn(x) < 0 || x > 1)
      throw InputError("fraction " + to_string(x) + " on " + key.first + "->" + key.second +
                       " outside [0,1]");
  }
}

namespace detail {

inline std::string saturation_failure(const FlowResult& fr, const std::string& what) {
  std::string side;
  for (auto x : min_cut_minimal(fr)) side += " " + fr.network.node(x).label();
  return what + " not saturated (flow " + to_string(fr.value) + "); violating cut:" + side;
}

}  // namespace detail

/// Allocation restricted to one bottleneck pair.
///
/// α < 1: route w_u from each u ∈ B to C over the pair's edges with sink
/// capacity w_v/α; then x_uv = f_uv/w_u and x_vu = α·f_uv/w_v.
/// α = 1: route over the double cover of G[B] with sink capacity w_v, and
/// use the symmetrized flow (f_uv' + f_vu')/2 so both directions of an edge
/// carry the same amount; x_uv = that amount / w_u.
inline Allocation pair_allocation(const WeightedGraph& g, const BottleneckPair& pair) {
  std::vector<std::string> left(pair.b.begin(), pair.b.end());
  std::vector<std::string> right(pair.c.begin(), pair.c.end());
  const bool unit = pair.alpha == 1;
  if (unit && pair.b != pair.c) throw InvariantError("alpha = 1 pair with B != C");

  FlowNetwork net(left, right);
  std::map<std::string, std::size_t> right_pos;
  for (std::size_t j = 0; j < right.size(); ++j) right_pos[right[j]] = j;

  Rational supply{0};
  for (std::size_t i = 0; i < left.size(); ++i) {
    Weight w = g.weight(g.require_index(left[i]));
    supply += w;
    net.add_arc(FlowNetwork::kSource, net.left(i), Capacity::finite(Rational{w}));
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    Rational w{g.weight(g.require_index(right[j]))};
    net.add_arc(net.right(j), FlowNetwork::kSink, Capacity::finite(unit ? w : Rational{w / pair.alpha}));
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (auto v : g.neighbors(g.require_index(left[i]))) {
      auto it = right_pos.find(g.name(v));
      if (it != right_pos.end()) net.add_arc(net.left(i), net.right(it->second), Capacity::unbounded());
    }
  }

  auto fr = max_flow(std::move(net));
  if (fr.value != supply) throw InvariantError(detail::saturation_failure(fr, "source side"));
  for (std::size_t a = 0; a < fr.network.arcs().size(); ++a) {
    const auto& arc = fr.network.arcs()[a];
    if (arc.to == FlowNetwork::kSink && fr.flow[a] != arc.cap.value())
      throw InvariantError(detail::saturation_failure(fr, "sink arc of " + fr.network.node(arc.from).vertex));
  }

  std::map<std::pair<std::string, std::string>, Rational> routed;
  for (std::size_t a = 0; a < fr.network.arcs().size(); ++a) {
    const auto& arc = fr.network.arcs()[a];
    if (fr.network.node(arc.from).kind != NodeKind::kLeft) continue;
    if (fr.network.node(arc.to).kind != NodeKind::kRight) continue;
    routed[{fr.network.node(arc.from).vertex, fr.network.node(arc.to).vertex}] = fr.flow[a];
  }

  Allocation out;
  for (const auto& [key, f] : routed) {
    const auto& [u, v] = key;
    Rational wu{g.weight(g.require_index(u))};
    Rational wv{g.weight(g.require_index(v))};
    if (unit) {
      auto back = routed.find({v, u});
      Rational sym = (f + (back == routed.end() ? Rational{0} : back->second)) / 2;
      out.set(u, v, sym / wu);
    } else {
      out.set(u, v, f / wu);
      out.set(v, u, pair.alpha * f / wv);
    }
  }
  return out;
}

/// Returns a description of the first violated allocation invariant, if any:
/// support on edges, fractions in [0,1], clearance, and trade confined to
/// the decomposition's pairs.
inline std::optional<std::string> allocation_violation(const WeightedGraph& g,
                                                       const Decomposition& d,
                                                       const Allocation& a) {
  std::map<std::string, std::pair<std::size_t, int>> side;  // vertex -> (pair, 0=B 1=C 2=both)
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    for (const auto& v : d.pairs[i].b) side[v] = {i, 0};
    for (const auto& v : d.pairs[i].c) side[v] = {i, d.pairs[i].b.count(v) ? 2 : 1};
  }
  std::map<std::string, Rational> out_sum;
  for (const auto& [key, x] : a.entries()) {
    const auto& [u, v] = key;
    auto iu = g.index_of(u), iv = g.index_of(v);
    if (!iu || !iv || !g.has_edge(*iu, *iv)) return u + "->" + v + " is not an edge";
    if (sgn(x) < 0 || x > 1) return u + "->" + v + " fraction outside [0,1]";
    auto su = side.at(u), sv = side.at(v);
    bool same_pair = su.first == sv.first;
    bool opposite = (su.second == 0 && sv.second == 1) || (su.second == 1 && sv.second == 0) ||
                    (su.second == 2 && sv.second == 2);
    if (!same_pair || !opposite) return u + "->" + v + " trades outside its bottleneck pair";
    out_sum[u] += x;
  }
  for (const auto& name : g.names())
    if (out_sum[name] != 1) return "clearance fails at " + name;
  return std::nullopt;
}

inline Allocation bd_allocation(const WeightedGraph& g, const Decomposition& d) {
  Allocation all;
  for (const auto& pair : d.pairs) {
    auto part = pair_allocation(g, pair);
    for (const auto& [key, x] : part.entries()) all.set(key.first, key.second, x);
  }
  if (auto bad = allocation_violation(g, d, all)) throw InvariantError("BD allocation: " + *bad);
  return all;
}

/// p_u = α_i·w_u on B_i when α_i < 1, p_u = w_u on C_i (and on B_k = C_k).
inline VertexValues equilibrium_prices(const WeightedGraph& g, const Decomposition& d) {
  VertexValues p;
  for (const auto& pair : d.pairs) {
    for (const auto& v : pair.c) p[v] = Rational{g.weight(g.require_index(v))};
    if (pair.alpha == 1) continue;
    for (const auto& v : pair.b) p[v] = pair.alpha * g.weight(g.require_index(v));
  }
  return p;
}

/// U_u = Σ_{v ∈ Γ(u)} x_vu·w_v, computed from the allocation alone.
inline VertexValues utilities(const WeightedGraph& g, const Allocation& a) {
  VertexValues u;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational sum{0};
    for (auto v : g.neighbors(i)) sum += a.get(g.name(v), g.name(i)) * g.weight(v);
    u[g.name(i)] = sum;
  }
  return u;
}

/// Compares utilities with α_i·w_u on B_i and w_u/α_i on C_i.
inline std::optional<std::string> closed_form_utility_violation(const WeightedGraph& g,
                                                                const Decomposition& d,
                                                                const VertexValues& util) {
  for (const auto& pair : d.pairs) {
    for (const auto& v : pair.b) {
      Rational expect = pair.alpha * g.weight(g.require_index(v));
      if (util.at(v) != expect)
        return "U_" + v + " = " + to_string(util.at(v)) + ", expected " + to_string(expect);
    }
    for (const auto& v : pair.c) {
      Rational expect = Rational{g.weight(g.require_index(v))} / pair.alpha;
      if (util.at(v) != expect)
        return "U_" + v + " = " + to_string(util.at(v)) + ", expected " + to_string(expect);
    }
  }
  return std::nullopt;
}

/// Decomposition, allocation, prices and recomputed utilities in one go.
inline EquilibriumBundle bd_mechanism(const WeightedGraph& g) {
  EquilibriumBundle bundle;
  bundle.decomposition = bottleneck_decomposition(g);
  bundle.allocation = bd_allocation(g, bundle.decomposition);
  bundle.prices = equilibrium_prices(g, bundle.decomposition);
  bundle.utilities = utilities(g, bundle.allocation);
  if (auto bad = closed_form_utility_violation(g, bundle.decomposition, bundle.utilities))
    throw InvariantError("utility closed form: " + *bad);
  return bundle;
}

}  // namespace bdalloc

#endif  // BDALLOC_MECHANISM_HPP
