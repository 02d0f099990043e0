#ifndef BDALLOC_CLI_HPP
#define BDALLOC_CLI_HPP

// Command implementations behind tools/bdalloc.cpp. Kept in the library so
// tests can drive them with string streams.
//
// Exit codes: 0 success, 1 property violated on external data (verify),
// 2 bad input, 3 internal invariant failure.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/fairness.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/io.hpp"
#include "bdalloc/mechanism.hpp"
#include "bdalloc/oracle.hpp"

namespace bdalloc::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyViolated = 1,
  kInputError = 2,
  kInternalError = 3,
};

struct RunConfig {
  std::string command;
  std::string input = "-";
  bool json = false;
  std::size_t oracle_limit = OracleLimit{}.max_vertices;
  std::string allocation_path;
  std::size_t n = 8;
  Weight max_weight = 9;
  std::string density = "1/2";
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  return read_all(f);
}

inline WeightedGraph load_graph(const RunConfig& cfg, std::istream& in) {
  return parse_graph(cfg.input == "-" ? read_all(in) : read_file(cfg.input));
}

inline std::string set_text(const VertexSet& s) {
  std::string out = "{";
  for (const auto& v : s) out += (out.size() > 1 ? ", " : "") + v;
  return out + "}";
}

inline std::string value_text(const Rational& r) {
  std::string exact = to_string(r);
  if (r.get_den() == 1) return exact;
  return exact + " (~" + to_approx_string(r) + ")";
}

inline void print_decomposition(std::ostream& out, const Decomposition& d) {
  out << "bottleneck decomposition (" << d.pairs.size() << " pair" << (d.pairs.size() == 1 ? "" : "s")
      << ")\n";
  for (const auto& p : d.pairs)
    out << "  " << p.index << ": alpha = " << value_text(p.alpha) << "  B = " << set_text(p.b)
        << "  C = " << set_text(p.c) << '\n';
  out << "alpha vector: (";
  for (std::size_t i = 0; i < d.pairs.size(); ++i) out << (i ? ", " : "") << to_string(d.pairs[i].alpha);
  out << ")\n";
}

inline void print_report(std::ostream& out, const std::string& title, const FairnessReport& r) {
  out << title << ": " << (r.passed ? "passed" : "FAILED") << '\n';
  for (const auto& c : r.conditions) {
    out << "  [" << (c.holds ? "ok" : "violated") << "] " << c.name;
    if (c.witness) {
      out << " at " << c.witness->subject << " (" << c.witness->relation;
      if (c.witness->lhs && c.witness->rhs)
        out << ": " << to_string(*c.witness->lhs) << " vs " << to_string(*c.witness->rhs);
      out << ")";
    }
    out << '\n';
  }
}

struct Reports {
  FairnessReport market;
  FairnessReport proportional;
  FairnessReport lex;
  std::optional<RatioLevels> levels;

  bool passed() const { return market.passed && proportional.passed && lex.passed; }
};

inline Reports run_checkers(const WeightedGraph& g, const EquilibriumBundle& bundle) {
  Reports r{check_market_equilibrium(g, bundle),
            check_proportional_response(g, bundle.allocation),
            check_lex_optimal(g, bundle.allocation),
            std::nullopt};
  if (r.market.find(condition::kClearance)->holds)
    r.levels = exchange_ratio_levels(g, bundle.allocation);
  return r;
}

inline Json reports_json(const Reports& r) {
  return {{"market_equilibrium", to_json(r.market)},
          {"proportional_response", to_json(r.proportional)},
          {"lex_optimal", to_json(r.lex)}};
}

inline void print_bundle(std::ostream& out, const WeightedGraph& g, const EquilibriumBundle& b,
                         const Reports& r) {
  out << "allocation (nonzero fractions x_uv):\n";
  for (const auto& [key, x] : b.allocation.entries())
    out << "  " << key.first << " -> " << key.second << ": " << value_text(x) << '\n';
  out << "vertex  weight  price  utility\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& v = g.name(i);
    out << "  " << v << "  " << g.weight(i) << "  "
        << (b.prices.count(v) ? value_text(b.prices.at(v)) : "-") << "  "
        << value_text(b.utilities.at(v)) << '\n';
  }
  if (r.levels) {
    out << "exchange-ratio levels: (";
    for (std::size_t i = 0; i < r.levels->levels.size(); ++i)
      out << (i ? ", " : "") << to_string(r.levels->levels[i]);
    out << ")\n";
  }
  print_report(out, "market equilibrium", r.market);
  print_report(out, "proportional response", r.proportional);
  print_report(out, "lex-optimality", r.lex);
}

}  // namespace detail

inline int cmd_decompose(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  auto g = detail::load_graph(cfg, in);
  auto d = bottleneck_decomposition(g);
  if (cfg.json)
    out << to_json(d).dump(2) << '\n';
  else
    detail::print_decomposition(out, d);
  return kOk;
}

inline int cmd_allocate(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  auto g = detail::load_graph(cfg, in);
  auto bundle = bd_mechanism(g);
  auto reports = detail::run_checkers(g, bundle);
  if (cfg.json) {
    Json j = {{"decomposition", to_json(bundle.decomposition)},
              {"allocation", to_json(bundle.allocation)},
              {"prices", to_json(bundle.prices)},
              {"utilities", to_json(bundle.utilities)},
              {"reports", detail::reports_json(reports)},
              {"passed", reports.passed()}};
    if (reports.levels) j["levels"] = to_json(*reports.levels);
    out << j.dump(2) << '\n';
  } else {
    detail::print_decomposition(out, bundle.decomposition);
    detail::print_bundle(out, g, bundle, reports);
  }
  return reports.passed() ? kOk : kInternalError;
}

inline int cmd_verify(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  auto g = detail::load_graph(cfg, in);
  if (cfg.allocation_path.empty()) throw InputError("verify needs --allocation <path>");
  Json parsed;
  try {
    parsed = Json::parse(detail::read_file(cfg.allocation_path));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("allocation file is not JSON: ") + e.what());
  }
  auto [allocation, prices] = allocation_from_json(parsed);
  validate_allocation_support(g, allocation);

  EquilibriumBundle bundle;
  bundle.allocation = std::move(allocation);
  bundle.prices = prices ? *prices : derived_prices(g, bundle.allocation);
  for (const auto& v : g.names())
    if (!bundle.prices.count(v)) throw InputError("no price for vertex '" + v + "'");
  for (const auto& [v, p] : bundle.prices)
    if (!g.index_of(v)) throw InputError("price for unknown vertex '" + v + "'");
  bundle.utilities = utilities(g, bundle.allocation);
  auto reports = detail::run_checkers(g, bundle);

  if (cfg.json) {
    Json j = {{"prices", to_json(bundle.prices)},
              {"utilities", to_json(bundle.utilities)},
              {"reports", detail::reports_json(reports)},
              {"passed", reports.passed()}};
    out << j.dump(2) << '\n';
  } else {
    detail::print_report(out, "market equilibrium", reports.market);
    detail::print_report(out, "proportional response", reports.proportional);
    detail::print_report(out, "lex-optimality", reports.lex);
  }
  return reports.passed() ? kOk : kPropertyViolated;
}

inline int cmd_oracle(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  auto g = detail::load_graph(cfg, in);
  OracleLimit limit{cfg.oracle_limit};
  auto brute = brute_decomposition(g, limit);
  auto fast = bottleneck_decomposition(g);
  auto fast_alpha = minimal_alpha_ratio(g).alpha_star;
  auto brute_alpha = brute_minimal_alpha(g, limit);
  auto fast_b = maximal_bottleneck(g, fast_alpha);
  auto brute_b = brute_maximal_bottleneck(g, limit);
  bool match = fast == brute && fast_alpha == brute_alpha && fast_b == brute_b;

  if (cfg.json) {
    Json j = {{"fast", to_json(fast)},
              {"oracle", to_json(brute)},
              {"alpha_star", {{"fast", to_string(fast_alpha)}, {"oracle", to_string(brute_alpha)}}},
              {"maximal_bottleneck", {{"fast", to_json(fast_b)}, {"oracle", to_json(brute_b)}}},
              {"match", match}};
    out << j.dump(2) << '\n';
  } else {
    out << "flow-based:\n";
    detail::print_decomposition(out, fast);
    out << "brute force:\n";
    detail::print_decomposition(out, brute);
    out << (match ? "MATCH" : "MISMATCH") << '\n';
  }
  return match ? kOk : kInternalError;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  auto density = parse_rational(cfg.density);
  auto g = random_connected_graph(cfg.n, cfg.max_weight, density, cfg.seed);
  out << "# gen n=" << cfg.n << " max_weight=" << cfg.max_weight << " density=" << to_string(density)
      << " seed=" << cfg.seed << '\n'
      << serialize_graph(g);
  return kOk;
}

/// Runs one command and maps exceptions to exit codes, with diagnostics on
/// `err`.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "decompose") return cmd_decompose(cfg, in, out);
    if (cfg.command == "allocate") return cmd_allocate(cfg, in, out);
    if (cfg.command == "verify") return cmd_verify(cfg, in, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, in, out);
    if (cfg.command == "gen") return cmd_gen(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace bdalloc::cli

#endif  // BDALLOC_CLI_HPP
