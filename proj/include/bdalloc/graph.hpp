#ifndef BDALLOC_GRAPH_HPP
#define BDALLOC_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdalloc/errors.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

using VertexSet = std::set<std::string>;
using Weight = std::int64_t;

struct VertexDecl {
  std::string name;
  Weight weight = 0;
};

struct EdgeDecl {
  std::string u;
  std::string v;
};

// Validation applied when a graph is assembled.
enum class GraphCheck {
  kTopLevel,   // user input: connected, at least two vertices
  kSubgraph,   // produced internally: may be disconnected, no isolated vertex
};

inline bool is_valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
  });
}

/// Simple undirected graph with positive integer vertex weights.
///
/// Vertices are stored in lexicographic name order, so index order is the
/// deterministic order used everywhere for ties and output. Immutable once
/// built.
class WeightedGraph {
 public:
  static WeightedGraph build(std::vector<VertexDecl> vertices, const std::vector<EdgeDecl>& edges,
                             GraphCheck check = GraphCheck::kTopLevel) {
    WeightedGraph g;
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexDecl& a, const VertexDecl& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& v = vertices[i];
      if (!is_valid_vertex_name(v.name)) throw InputError("invalid vertex name '" + v.name + "'");
      if (i > 0 && vertices[i - 1].name == v.name)
        throw InputError("duplicate vertex '" + v.name + "'");
      if (v.weight < 1)
        throw InputError("vertex '" + v.name + "' has non-positive weight " +
                         std::to_string(v.weight));
      if (__builtin_add_overflow(g.total_, v.weight, &g.total_))
        throw InputError("total vertex weight overflows 64 bits");
      g.names_.push_back(v.name);
      g.weights_.push_back(v.weight);
      g.index_.emplace(v.name, i);
    }
    g.adj_.resize(g.names_.size());
    for (const auto& e : edges) {
      auto iu = g.index_of(e.u), iv = g.index_of(e.v);
      if (!iu) throw InputError("edge endpoint '" + e.u + "' is not a declared vertex");
      if (!iv) throw InputError("edge endpoint '" + e.v + "' is not a declared vertex");
      if (*iu == *iv) throw InputError("self-loop on vertex '" + e.u + "'");
      auto [lo, hi] = std::minmax(*iu, *iv);
      g.edges_.emplace_back(lo, hi);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    for (std::size_t k = 1; k < g.edges_.size(); ++k) {
      if (g.edges_[k] == g.edges_[k - 1])
        throw InputError("duplicate edge " + g.names_[g.edges_[k].first] + " " +
                         g.names_[g.edges_[k].second]);
    }
    for (auto [u, v] : g.edges_) {
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());

    if (check == GraphCheck::kTopLevel) {
      if (g.size() < 2) throw InputError("graph needs at least 2 vertices");
      if (!g.is_connected()) throw InputError("graph is disconnected");
    } else {
      if (g.size() == 0) throw InvariantError("empty subgraph");
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g.adj_[i].empty())
          throw InvariantError("subgraph contains isolated vertex '" + g.names_[i] + "'");
    }
    return g;
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& name(std::size_t i) const { return names_.at(i); }
  Weight weight(std::size_t i) const { return weights_.at(i); }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adj_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept {
    return edges_;
  }

  /// w(V).
  Weight total_weight() const noexcept { return total_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw InputError("unknown vertex '" + std::string(name) + "'");
    return *i;
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool is_connected() const {
    if (names_.empty()) return true;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == size();
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Weight> weights_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::map<std::string, std::size_t> index_;
  Weight total_ = 0;
};

// ---------------------------------------------------------------------------
// Index-level helpers. The decomposition works on index lists; the name-level
// API below converts at the boundary.

inline std::vector<std::size_t> to_indices(const WeightedGraph& g, const VertexSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (const auto& name : s) out.push_back(g.require_index(name));
  std::sort(out.begin(), out.end());
  return out;
}

inline VertexSet to_names(const WeightedGraph& g, std::span<const std::size_t> idx) {
  VertexSet out;
  for (auto i : idx) out.insert(g.name(i));
  return out;
}

/// Γ(S) as a sorted index list.
inline std::vector<std::size_t> neighborhood_indices(const WeightedGraph& g,
                                                     std::span<const std::size_t> s) {
  std::vector<bool> mark(g.size(), false);
  for (auto u : s)
    for (auto v : g.neighbors(u)) mark[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

inline Weight weight_of(const WeightedGraph& g, std::span<const std::size_t> s) {
  Weight w = 0;
  for (auto i : s) w += g.weight(i);
  return w;
}

inline Rational alpha_ratio_indices(const WeightedGraph& g, std::span<const std::size_t> s) {
  if (s.empty()) throw InvariantError("alpha ratio of the empty set is undefined");
  auto nb = neighborhood_indices(g, s);
  return make_rational(weight_of(g, nb), weight_of(g, s));
}

// ---------------------------------------------------------------------------
// Name-level operations.

inline VertexSet neighborhood(const WeightedGraph& g, const VertexSet& s) {
  auto idx = to_indices(g, s);
  return to_names(g, neighborhood_indices(g, idx));
}

inline Weight total_weight(const WeightedGraph& g, const VertexSet& s) {
  return weight_of(g, to_indices(g, s));
}

/// α(S) = w(Γ(S)) / w(S). S must be nonempty.
inline Rational alpha_ratio(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw InputError("alpha ratio of the empty set is undefined");
  return alpha_ratio_indices(g, to_indices(g, s));
}

inline WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const std::size_t> keep) {
  if (keep.empty()) throw InputError("induced subgraph on an empty vertex set");
  std::vector<bool> in(g.size(), false);
  std::vector<VertexDecl> verts;
  for (auto i : keep) {
    in.at(i) = true;
    verts.push_back({g.name(i), g.weight(i)});
  }
  std::vector<EdgeDecl> edges;
  for (auto [u, v] : g.edges())
    if (in[u] && in[v]) edges.push_back({g.name(u), g.name(v)});
  return WeightedGraph::build(std::move(verts), edges, GraphCheck::kSubgraph);
}

/// G[keep]. The result may be disconnected; an isolated vertex raises
/// InvariantError.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, const VertexSet& keep) {
  return induced_subgraph(g, to_indices(g, keep));
}

// ---------------------------------------------------------------------------
// Text format:
//   # comment
//   v <name> <weight>
//   e <name> <name>

namespace detail {

inline bool parse_weight(std::string_view tok, Weight& out) {
  if (!all_digits(tok)) return false;
  Weight w = 0;
  for (char c : tok) {
    if (__builtin_mul_overflow(w, Weight{10}, &w) || __builtin_add_overflow(w, Weight{c - '0'}, &w))
      return false;
  }
  out = w;
  return true;
}

}  // namespace detail

inline WeightedGraph parse_graph(std::string_view text) {
  std::vector<VertexDecl> verts;
  std::vector<EdgeDecl> edges;
  std::map<std::string, std::size_t> vertex_line;
  std::map<std::pair<std::string, std::string>, std::size_t> edge_line;
  std::vector<std::size_t> edge_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "v") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'v <name> <weight>'");
      if (!is_valid_vertex_name(tok[1]))
        throw ParseError(lineno, "invalid vertex name '" + tok[1] + "'");
      Weight w = 0;
      if (!detail::parse_weight(tok[2], w) || w < 1)
        throw ParseError(lineno, "weight must be a positive integer, got '" + tok[2] + "'");
      if (!vertex_line.emplace(tok[1], lineno).second)
        throw ParseError(lineno, "duplicate vertex '" + tok[1] + "'");
      verts.push_back({tok[1], w});
    } else if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'e <name> <name>'");
      for (int k = 1; k <= 2; ++k)
        if (!is_valid_vertex_name(tok[k]))
          throw ParseError(lineno, "invalid vertex name '" + tok[k] + "'");
      if (tok[1] == tok[2]) throw ParseError(lineno, "self-loop on vertex '" + tok[1] + "'");
      auto key = std::minmax(tok[1], tok[2]);
      if (!edge_line.emplace(std::pair{key.first, key.second}, lineno).second)
        throw ParseError(lineno, "duplicate edge " + tok[1] + " " + tok[2]);
      edges.push_back({tok[1], tok[2]});
      edge_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown record '" + tok[0] + "'");
    }
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    for (const auto* end : {&edges[k].u, &edges[k].v})
      if (!vertex_line.count(*end))
        throw ParseError(edge_lines[k], "unknown endpoint '" + *end + "'");
  }
  return WeightedGraph::build(std::move(verts), edges, GraphCheck::kTopLevel);
}

inline std::string serialize_graph(const WeightedGraph& g) {
  std::ostringstream out;
  for (std::size_t i = 0; i < g.size(); ++i) out << "v " << g.name(i) << ' ' << g.weight(i) << '\n';
  for (auto [u, v] : g.edges()) out << "e " << g.name(u) << ' ' << g.name(v) << '\n';
  return out.str();
}

}  // namespace bdalloc

#endif  // BDALLOC_GRAPH_HPP
