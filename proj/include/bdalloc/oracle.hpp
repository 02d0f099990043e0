#ifndef BDALLOC_ORACLE_HPP
#define BDALLOC_ORACLE_HPP

// Brute-force reference answers by subset enumeration, plus the seeded
// random graph generator used by the property tests. Nothing here calls the
// flow-based path; the two must stay independent.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/errors.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/rational.hpp"

namespace bdalloc {

struct OracleLimit {
  std::size_t max_vertices = 20;
};

namespace oracle_detail {

using Mask = std::uint32_t;

struct MaskGraph {
  std::vector<Mask> adj;
  std::vector<Weight> weight;

  Weight weight_of(Mask s) const {
    Weight w = 0;
    for (std::size_t v = 0; v < weight.size(); ++v)
      if (s >> v & 1u) w += weight[v];
    return w;
  }

  Mask neighbors(Mask s) const {
    Mask nb = 0;
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (s >> v & 1u) nb |= adj[v];
    return nb;
  }
};

inline MaskGraph to_masks(const WeightedGraph& g, const OracleLimit& limit) {
  if (g.size() > limit.max_vertices || g.size() > 30)
    throw InputError("oracle limited to " + std::to_string(limit.max_vertices) + " vertices, got " +
                     std::to_string(g.size()));
  MaskGraph m;
  m.adj.assign(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    m.weight.push_back(g.weight(v));
    for (auto u : g.neighbors(v)) m.adj[v] |= Mask{1} << u;
  }
  return m;
}

struct Ratio {
  Weight num;
  Weight den;
};

// a/b < c/d with positive denominators.
inline int compare(const Ratio& x, const Ratio& y) {
  __int128 l = static_cast<__int128>(x.num) * y.den;
  __int128 r = static_cast<__int128>(y.num) * x.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

struct Bottleneck {
  Ratio ratio;
  Mask minimizers_union;
};

// Minimum ratio w(Γ(S) ∩ alive)/w(S) over nonempty S ⊆ alive, and the union
// of every S attaining it.
inline Bottleneck enumerate(const MaskGraph& m, Mask alive) {
  std::optional<Ratio> best;
  Mask uni = 0;
  for (Mask s = alive; s != 0; s = (s - 1) & alive) {
    Ratio r{m.weight_of(m.neighbors(s) & alive), m.weight_of(s)};
    if (r.num == 0) throw InvariantError("oracle: subset with empty neighborhood (isolated vertex)");
    int c = best ? compare(r, *best) : -1;
    if (c < 0) {
      best = r;
      uni = s;
    } else if (c == 0) {
      uni |= s;
    }
  }
  Ratio u{m.weight_of(m.neighbors(uni) & alive), m.weight_of(uni)};
  if (compare(u, *best) != 0)
    throw InvariantError("oracle: union of minimizers is not itself a minimizer");
  return {*best, uni};
}

inline VertexSet names_of(const WeightedGraph& g, Mask s) {
  VertexSet out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (s >> v & 1u) out.insert(g.name(v));
  return out;
}

inline Mask all_of(std::size_t n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

}  // namespace oracle_detail

/// min over nonempty S of α(S), by enumerating all 2^n - 1 subsets.
inline Rational brute_minimal_alpha(const WeightedGraph& g, const OracleLimit& limit = {}) {
  auto m = oracle_detail::to_masks(g, limit);
  auto b = oracle_detail::enumerate(m, oracle_detail::all_of(g.size()));
  return make_rational(b.ratio.num, b.ratio.den);
}

/// Union of all minimum-ratio subsets; its own ratio is checked to be the
/// minimum (uniqueness of the maximal bottleneck).
inline VertexSet brute_maximal_bottleneck(const WeightedGraph& g, const OracleLimit& limit = {}) {
  auto m = oracle_detail::to_masks(g, limit);
  auto b = oracle_detail::enumerate(m, oracle_detail::all_of(g.size()));
  return oracle_detail::names_of(g, b.minimizers_union);
}

inline Decomposition brute_decomposition(const WeightedGraph& g, const OracleLimit& limit = {}) {
  auto m = oracle_detail::to_masks(g, limit);
  Decomposition d;
  oracle_detail::Mask alive = oracle_detail::all_of(g.size());
  for (std::size_t round = 1; alive != 0; ++round) {
    auto b = oracle_detail::enumerate(m, alive);
    oracle_detail::Mask c = m.neighbors(b.minimizers_union) & alive;
    d.pairs.push_back({round, oracle_detail::names_of(g, b.minimizers_union),
                       oracle_detail::names_of(g, c), make_rational(b.ratio.num, b.ratio.den)});
    alive &= ~(b.minimizers_union | c);
  }
  return d;
}

/// Brute-force min over all corresponding sets B ⊆ V (∅ included) of the
/// closed-form cut capacity α(w(V) - w(B)) + w(Γ(B)) [+ (n - |B|)·ε].
inline Rational brute_min_cut_capacity(const WeightedGraph& g, const Rational& alpha,
                                       const Rational& epsilon = Rational{0},
                                       const OracleLimit& limit = {}) {
  auto m = oracle_detail::to_masks(g, limit);
  const Weight total = g.total_weight();
  const auto n = static_cast<long>(g.size());
  Rational best = alpha * total + epsilon * n;  // B = ∅
  oracle_detail::Mask all = oracle_detail::all_of(g.size());
  for (oracle_detail::Mask s = all; s != 0; s = (s - 1) & all) {
    long size = __builtin_popcount(s);
    Rational cap = alpha * (total - m.weight_of(s)) + m.weight_of(m.neighbors(s)) +
                   epsilon * (n - size);
    if (cap < best) best = cap;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Random instances.

/// Portable uniform integer in [0, bound): rejection sampling on mt19937_64,
/// whose output sequence is fixed by the standard.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvariantError("uniform_below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

inline std::string generated_vertex_name(std::size_t i, std::size_t n) {
  std::size_t width = std::to_string(n - 1).size();
  std::string digits = std::to_string(i);
  return "v" + std::string(width - digits.size(), '0') + digits;
}

/// Deterministic connected graph for a seed. Draw order: vertex weights
/// uniform in [1, max_weight]; a uniform spanning tree of K_n by random walk
/// (Aldous-Broder); then every remaining pair in index order, kept with
/// probability `edge_density`.
inline WeightedGraph random_connected_graph(std::size_t n, Weight max_weight,
                                            const Rational& edge_density, std::uint64_t seed) {
  if (n < 2) throw InputError("generator needs n >= 2");
  if (max_weight < 1) throw InputError("generator needs max_weight >= 1");
  if (sgn(edge_density) <= 0 || edge_density > 1) throw InputError("density must be in (0, 1]");
  if (!mpz_fits_ulong_p(edge_density.get_den_mpz_t()))
    throw InputError("density denominator too large");
  const std::uint64_t num = edge_density.get_num().get_ui();
  const std::uint64_t den = edge_density.get_den().get_ui();

  std::mt19937_64 rng(seed);
  std::vector<VertexDecl> verts;
  for (std::size_t i = 0; i < n; ++i)
    verts.push_back({generated_vertex_name(i, n),
                     1 + static_cast<Weight>(uniform_below(rng, static_cast<std::uint64_t>(max_weight)))});

  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> visited(n, false);
  std::size_t at = uniform_below(rng, n);
  visited[at] = true;
  for (std::size_t seen = 1; seen < n;) {
    std::size_t next = uniform_below(rng, n - 1);
    if (next >= at) ++next;
    if (!visited[next]) {
      visited[next] = true;
      ++seen;
      edges.insert(std::minmax(at, next));
    }
    at = next;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!edges.count({i, j}) && uniform_below(rng, den) < num) edges.insert({i, j});

  std::vector<EdgeDecl> edge_decls;
  for (auto [i, j] : edges) edge_decls.push_back({verts[i].name, verts[j].name});
  return WeightedGraph::build(std::move(verts), edge_decls, GraphCheck::kTopLevel);
}

}  // namespace bdalloc

#endif  // BDALLOC_ORACLE_HPP
