#ifndef BDALLOC_IO_HPP
#define BDALLOC_IO_HPP

// JSON shapes for decompositions, allocations, bundles, reports and flow
// networks. Every rational is a "p/q" string; objects use sorted keys.

#include <string>
#include <utility>

#include "json.hpp"

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/fairness.hpp"
#include "bdalloc/flow.hpp"
#include "bdalloc/mechanism.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

using Json = nlohmann::json;

inline Json to_json(const VertexSet& s) {
  Json arr = Json::array();
  for (const auto& v : s) arr.push_back(v);
  return arr;
}

inline Json to_json(const Decomposition& d) {
  Json pairs = Json::array();
  for (const auto& p : d.pairs)
    pairs.push_back({{"index", p.index}, {"alpha", to_string(p.alpha)}, {"B", to_json(p.b)},
                     {"C", to_json(p.c)}});
  Json alphas = Json::array();
  for (const auto& p : d.pairs) alphas.push_back(to_string(p.alpha));
  return {{"pairs", pairs}, {"alphas", alphas}};
}

inline Json to_json(const Allocation& a) {
  Json arr = Json::array();
  for (const auto& [key, x] : a.entries())
    arr.push_back({{"from", key.first}, {"to", key.second}, {"fraction", to_string(x)}});
  return arr;
}

inline Json to_json(const VertexValues& values) {
  Json obj = Json::object();
  for (const auto& [k, v] : values) obj[k] = to_string(v);
  return obj;
}

inline Json to_json(const FairnessReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json w = nullptr;
    if (c.witness) {
      w = {{"subject", c.witness->subject}, {"relation", c.witness->relation}};
      w["lhs"] = c.witness->lhs ? Json(to_string(*c.witness->lhs)) : Json(nullptr);
      w["rhs"] = c.witness->rhs ? Json(to_string(*c.witness->rhs)) : Json(nullptr);
    }
    conds.push_back({{"name", c.name}, {"holds", c.holds}, {"witness", w}});
  }
  return {{"passed", r.passed}, {"conditions", conds}};
}

inline Json to_json(const RatioLevels& lv) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < lv.levels.size(); ++i)
    levels.push_back({{"level", to_string(lv.levels[i])}, {"vertices", to_json(lv.classes[i])}});
  return {{"beta", to_json(lv.beta)}, {"levels", levels}};
}

inline Json to_json(const FlowNetwork& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes()) nodes.push_back(n.label());
  Json arcs = Json::array();
  for (const auto& a : net.arcs())
    arcs.push_back({{"from", net.node(a.from).label()},
                    {"to", net.node(a.to).label()},
                    {"capacity", a.cap.to_string()}});
  return {{"nodes", nodes}, {"arcs", arcs}};
}

inline Json to_json(const FlowResult& fr) {
  Json j = to_json(fr.network);
  for (std::size_t a = 0; a < fr.flow.size(); ++a) j["arcs"][a]["flow"] = to_string(fr.flow[a]);
  j["value"] = to_string(fr.value);
  return j;
}

namespace detail {

inline Rational rational_field(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

}  // namespace detail

/// Reads an allocation: either an array of {from, to, fraction} or an
/// object with an "allocation" array and optional "prices" map.
inline std::pair<Allocation, std::optional<VertexValues>> allocation_from_json(const Json& j) {
  const Json* entries = &j;
  std::optional<VertexValues> prices;
  if (j.is_object()) {
    if (!j.contains("allocation")) throw InputError("allocation object lacks \"allocation\"");
    entries = &j.at("allocation");
    if (j.contains("prices")) {
      if (!j.at("prices").is_object()) throw InputError("\"prices\" must be an object");
      prices.emplace();
      for (const auto& [k, v] : j.at("prices").items()) (*prices)[k] = detail::rational_field(v, "price");
    }
  }
  if (!entries->is_array()) throw InputError("allocation must be an array");
  Allocation a;
  for (const auto& e : *entries) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("fraction") ||
        !e.at("from").is_string() || !e.at("to").is_string())
      throw InputError("allocation entries need string fields from, to, fraction");
    auto from = e.at("from").get<std::string>();
    auto to = e.at("to").get<std::string>();
    if (sgn(a.get(from, to)) != 0) throw InputError("duplicate allocation entry " + from + "->" + to);
    a.set(from, to, detail::rational_field(e.at("fraction"), "fraction"));
  }
  return {std::move(a), std::move(prices)};
}

}  // namespace bdalloc

#endif  // BDALLOC_IO_HPP
