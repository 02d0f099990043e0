#ifndef BDALLOC_FLOW_HPP
#define BDALLOC_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bdalloc/errors.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

/// Arc capacity: a nonnegative rational or UNBOUNDED.
class Capacity {
 public:
  Capacity() = default;

  static Capacity unbounded() {
    Capacity c;
    c.unbounded_ = true;
    return c;
  }

  static Capacity finite(Rational value) {
    if (sgn(value) < 0) throw InvariantError("negative capacity " + bdalloc::to_string(value));
    Capacity c;
    c.value_ = std::move(value);
    return c;
  }

  bool is_unbounded() const noexcept { return unbounded_; }

  const Rational& value() const {
    if (unbounded_) throw InvariantError("value() on an unbounded capacity");
    return value_;
  }

  std::string to_string() const { return unbounded_ ? "inf" : bdalloc::to_string(value_); }

  friend Capacity operator+(const Capacity& a, const Capacity& b) {
    if (a.unbounded_ || b.unbounded_) return unbounded();
    return finite(a.value_ + b.value_);
  }

  // UNBOUNDED minus anything finite stays UNBOUNDED.
  friend Capacity operator-(const Capacity& a, const Rational& b) {
    if (a.unbounded_) return unbounded();
    return finite(a.value_ - b);
  }

  friend bool operator==(const Capacity& a, const Capacity& b) {
    if (a.unbounded_ || b.unbounded_) return a.unbounded_ == b.unbounded_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const Capacity& a, const Capacity& b) {
    if (a.unbounded_) return false;
    if (b.unbounded_) return true;
    return a.value_ < b.value_;
  }

  friend bool operator==(const Capacity& a, const Rational& b) {
    return !a.unbounded_ && a.value_ == b;
  }

 private:
  bool unbounded_ = false;
  Rational value_{0};
};

enum class NodeKind { kSource, kSink, kLeft, kRight };

struct FlowNode {
  NodeKind kind;
  std::string vertex;  // graph vertex for left/right copies, empty for s and t

  std::string label() const {
    switch (kind) {
      case NodeKind::kSource: return "s";
      case NodeKind::kSink: return "t";
      case NodeKind::kLeft: return "L:" + vertex;
      case NodeKind::kRight: return "R:" + vertex;
    }
    return "?";
  }
};

struct Arc {
  std::size_t from;
  std::size_t to;
  Capacity cap;
};

using NodeSet = std::set<std::size_t>;

/// Bipartite s-t network: node 0 is the source, node 1 the sink, then the
/// left copies, then the right copies (each side in lexicographic vertex
/// order). Node index order doubles as the BFS tie-break order.
class FlowNetwork {
 public:
  static constexpr std::size_t kSource = 0;
  static constexpr std::size_t kSink = 1;

  FlowNetwork(std::vector<std::string> left, std::vector<std::string> right)
      : left_count_(left.size()) {
    nodes_.push_back({NodeKind::kSource, {}});
    nodes_.push_back({NodeKind::kSink, {}});
    for (auto& v : left) nodes_.push_back({NodeKind::kLeft, std::move(v)});
    for (auto& v : right) nodes_.push_back({NodeKind::kRight, std::move(v)});
  }

  std::size_t left(std::size_t i) const { return 2 + i; }
  std::size_t right(std::size_t i) const { return 2 + left_count_ + i; }
  std::size_t left_count() const noexcept { return left_count_; }
  std::size_t right_count() const noexcept { return nodes_.size() - 2 - left_count_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const FlowNode& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<FlowNode>& nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::size_t add_arc(std::size_t from, std::size_t to, Capacity cap) {
    if (from >= nodes_.size() || to >= nodes_.size() || from == to)
      throw InvariantError("malformed arc");
    arcs_.push_back({from, to, std::move(cap)});
    return arcs_.size() - 1;
  }

 private:
  std::vector<FlowNode> nodes_;
  std::vector<Arc> arcs_;
  std::size_t left_count_;
};

struct FlowResult {
  FlowNetwork network;
  std::vector<Rational> flow;  // indexed like network.arcs()
  Rational value;
};

// ---------------------------------------------------------------------------
// Network constructions.

namespace detail {

inline FlowNetwork alpha_network_with_source_caps(const WeightedGraph& g,
                                                  const std::vector<Rational>& source_caps) {
  FlowNetwork net(g.names(), g.names());
  const auto n = g.size();
  for (std::size_t v = 0; v < n; ++v)
    net.add_arc(FlowNetwork::kSource, net.left(v), Capacity::finite(source_caps[v]));
  for (std::size_t v = 0; v < n; ++v)
    net.add_arc(net.right(v), FlowNetwork::kSink, Capacity::finite(Rational{g.weight(v)}));
  for (auto [u, v] : g.edges()) {
    net.add_arc(net.left(u), net.right(v), Capacity::unbounded());
    net.add_arc(net.left(v), net.right(u), Capacity::unbounded());
  }
  return net;
}

}  // namespace detail

/// N(G, α): cap(s,v) = α·w_v, cap(ṽ,t) = w_v, unbounded u→ṽ and v→ũ per edge.
inline FlowNetwork build_alpha_network(const WeightedGraph& g, const Rational& alpha) {
  if (sgn(alpha) < 0) throw InputError("alpha must be nonnegative");
  std::vector<Rational> caps;
  caps.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) caps.emplace_back(alpha * g.weight(v));
  return detail::alpha_network_with_source_caps(g, caps);
}

/// N(G, α*, ε): as N(G, α*) with every source arc raised by ε.
inline FlowNetwork build_perturbed_network(const WeightedGraph& g, const Rational& alpha_star,
                                           const Rational& epsilon) {
  if (sgn(alpha_star) < 0) throw InputError("alpha must be nonnegative");
  if (sgn(epsilon) <= 0) throw InputError("epsilon must be positive");
  std::vector<Rational> caps;
  caps.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    caps.emplace_back(alpha_star * g.weight(v) + epsilon);
  return detail::alpha_network_with_source_caps(g, caps);
}

// ---------------------------------------------------------------------------
// Residual graph shared by the solver and the cut extractors.

namespace detail {

struct ResidualEdge {
  std::size_t arc;
  bool forward;
  std::size_t to;
};

inline std::vector<std::vector<ResidualEdge>> residual_adjacency(const FlowNetwork& net) {
  std::vector<std::vector<ResidualEdge>> out(net.node_count());
  const auto& arcs = net.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    out[arcs[a].from].push_back({a, true, arcs[a].to});
    out[arcs[a].to].push_back({a, false, arcs[a].from});
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [](const ResidualEdge& x, const ResidualEdge& y) {
      return std::tuple(x.to, x.arc, !x.forward) < std::tuple(y.to, y.arc, !y.forward);
    });
  }
  return out;
}

inline bool has_residual(const FlowNetwork& net, const std::vector<Rational>& flow,
                         const ResidualEdge& e) {
  if (!e.forward) return sgn(flow[e.arc]) > 0;
  const auto& cap = net.arcs()[e.arc].cap;
  return cap.is_unbounded() || flow[e.arc] < cap.value();
}

}  // namespace detail

/// Exact maximum flow by shortest augmenting paths (Edmonds-Karp). Neighbors
/// are scanned in node-index order, so the result is deterministic. The
/// number of augmentations is bounded by O(|V||E|) regardless of the
/// capacity values, which keeps exact rational capacities tractable.
inline FlowResult max_flow(FlowNetwork net) {
  const auto adj = detail::residual_adjacency(net);
  const auto& arcs = net.arcs();
  std::vector<Rational> flow(arcs.size(), Rational{0});
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> parent_edge_owner(net.node_count());
  std::vector<const detail::ResidualEdge*> parent(net.node_count());
  for (;;) {
    std::fill(parent.begin(), parent.end(), nullptr);
    std::fill(parent_edge_owner.begin(), parent_edge_owner.end(), kNone);
    parent_edge_owner[FlowNetwork::kSource] = FlowNetwork::kSource;
    std::deque<std::size_t> queue{FlowNetwork::kSource};
    while (!queue.empty() && parent_edge_owner[FlowNetwork::kSink] == kNone) {
      auto x = queue.front();
      queue.pop_front();
      for (const auto& e : adj[x]) {
        if (parent_edge_owner[e.to] != kNone || !detail::has_residual(net, flow, e)) continue;
        parent_edge_owner[e.to] = x;
        parent[e.to] = &e;
        queue.push_back(e.to);
      }
    }
    if (parent_edge_owner[FlowNetwork::kSink] == kNone) break;

    std::optional<Rational> delta;
    for (auto y = FlowNetwork::kSink; y != FlowNetwork::kSource; y = parent_edge_owner[y]) {
      const auto& e = *parent[y];
      if (e.forward) {
        const auto& cap = arcs[e.arc].cap;
        if (cap.is_unbounded()) continue;
        Rational r = cap.value() - flow[e.arc];
        if (!delta || r < *delta) delta = std::move(r);
      } else if (!delta || flow[e.arc] < *delta) {
        delta = flow[e.arc];
      }
    }
    if (!delta) throw InvariantError("augmenting path of unbounded capacity");
    for (auto y = FlowNetwork::kSink; y != FlowNetwork::kSource; y = parent_edge_owner[y]) {
      const auto& e = *parent[y];
      if (e.forward)
        flow[e.arc] += *delta;
      else
        flow[e.arc] -= *delta;
    }
  }

  Rational value{0};
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].from == FlowNetwork::kSource) value += flow[a];
    if (arcs[a].to == FlowNetwork::kSource) value -= flow[a];
  }
  return FlowResult{std::move(net), std::move(flow), std::move(value)};
}

/// Capacity bounds and conservation, checked exactly. Returns a description
/// of the first violation, or nothing.
inline std::optional<std::string> flow_violation(const FlowResult& fr) {
  const auto& net = fr.network;
  const auto& arcs = net.arcs();
  if (fr.flow.size() != arcs.size()) return "flow vector size mismatch";
  std::vector<Rational> excess(net.node_count(), Rational{0});
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (sgn(fr.flow[a]) < 0) return "negative flow on arc " + std::to_string(a);
    if (!arcs[a].cap.is_unbounded() && fr.flow[a] > arcs[a].cap.value())
      return "flow exceeds capacity on arc " + std::to_string(a);
    excess[arcs[a].to] += fr.flow[a];
    excess[arcs[a].from] -= fr.flow[a];
  }
  for (std::size_t x = 2; x < net.node_count(); ++x)
    if (sgn(excess[x]) != 0) return "conservation fails at node " + net.node(x).label();
  if (-excess[FlowNetwork::kSource] != fr.value) return "value differs from source outflow";
  return std::nullopt;
}

/// Source side of the inclusion-minimal minimum cut: nodes reachable from s
/// in the residual network.
inline NodeSet min_cut_minimal(const FlowResult& fr) {
  const auto adj = detail::residual_adjacency(fr.network);
  std::vector<bool> seen(fr.network.node_count(), false);
  std::deque<std::size_t> queue{FlowNetwork::kSource};
  seen[FlowNetwork::kSource] = true;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& e : adj[x]) {
      if (seen[e.to] || !detail::has_residual(fr.network, fr.flow, e)) continue;
      seen[e.to] = true;
      queue.push_back(e.to);
    }
  }
  NodeSet out;
  for (std::size_t x = 0; x < seen.size(); ++x)
    if (seen[x]) out.insert(x);
  return out;
}

/// Source side of the inclusion-maximal minimum cut: every node that has no
/// residual path to t.
inline NodeSet min_cut_maximal(const FlowResult& fr) {
  const auto& net = fr.network;
  const auto adj = detail::residual_adjacency(net);
  std::vector<std::vector<std::size_t>> reverse(net.node_count());
  for (std::size_t x = 0; x < net.node_count(); ++x)
    for (const auto& e : adj[x])
      if (detail::has_residual(net, fr.flow, e)) reverse[e.to].push_back(x);

  std::vector<bool> reaches_sink(net.node_count(), false);
  std::deque<std::size_t> queue{FlowNetwork::kSink};
  reaches_sink[FlowNetwork::kSink] = true;
  while (!queue.empty()) {
    auto y = queue.front();
    queue.pop_front();
    for (auto x : reverse[y]) {
      if (reaches_sink[x]) continue;
      reaches_sink[x] = true;
      queue.push_back(x);
    }
  }
  NodeSet out;
  for (std::size_t x = 0; x < reaches_sink.size(); ++x)
    if (!reaches_sink[x]) out.insert(x);
  return out;
}

/// Total capacity of arcs leaving `source_side`.
inline Capacity cut_capacity(const FlowNetwork& net, const NodeSet& source_side) {
  Capacity total = Capacity::finite(Rational{0});
  for (const auto& arc : net.arcs())
    if (source_side.count(arc.from) && !source_side.count(arc.to)) total = total + arc.cap;
  return total;
}

/// The graph-vertex set B encoded by a finite cut {s} ∪ B ∪ Γ(B̃). Throws
/// InvariantError if the cut does not have that shape.
inline VertexSet corresponding_set(const FlowNetwork& net, const NodeSet& cut_source_side) {
  if (!cut_source_side.count(FlowNetwork::kSource) || cut_source_side.count(FlowNetwork::kSink))
    throw InvariantError("not an s-t cut");
  if (cut_capacity(net, cut_source_side).is_unbounded())
    throw InvariantError("cut has unbounded capacity");

  VertexSet b;
  std::set<std::size_t> expected_right;
  for (const auto& arc : net.arcs()) {
    if (net.node(arc.from).kind == NodeKind::kLeft && net.node(arc.to).kind == NodeKind::kRight &&
        cut_source_side.count(arc.from))
      expected_right.insert(arc.to);
  }
  std::set<std::size_t> actual_right;
  for (auto x : cut_source_side) {
    const auto& node = net.node(x);
    if (node.kind == NodeKind::kLeft) b.insert(node.vertex);
    if (node.kind == NodeKind::kRight) actual_right.insert(x);
  }
  if (actual_right != expected_right)
    throw InvariantError("cut right side is not the neighborhood copy of its left side");
  return b;
}

}  // namespace bdalloc

#endif  // BDALLOC_FLOW_HPP
