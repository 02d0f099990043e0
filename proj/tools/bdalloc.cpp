#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bdalloc/cli.hpp"

int main(int argc, char** argv) {
  using bdalloc::cli::RunConfig;
  RunConfig cfg;

  CLI::App app{"Bottleneck decomposition and BD-mechanism allocation"};
  app.require_subcommand(1);

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("input", cfg.input, "graph file, or '-' for standard input")->capture_default_str();
    sub->add_flag("--json", cfg.json, "emit JSON instead of a table");
  };

  auto* decompose = app.add_subcommand("decompose", "print the bottleneck decomposition");
  add_input(decompose);
  auto* allocate = app.add_subcommand("allocate", "compute the BD allocation, prices and fairness reports");
  add_input(allocate);
  auto* verify = app.add_subcommand("verify", "check an externally supplied allocation");
  add_input(verify);
  verify->add_option("--allocation", cfg.allocation_path, "allocation JSON file")->required();
  auto* oracle = app.add_subcommand("oracle", "compare the flow-based path with brute force");
  add_input(oracle);
  oracle->add_option("--oracle-limit", cfg.oracle_limit, "largest n the oracle accepts")
      ->capture_default_str();
  auto* gen = app.add_subcommand("gen", "print a random connected graph");
  gen->add_option("--n", cfg.n, "number of vertices")->capture_default_str();
  gen->add_option("--max-weight", cfg.max_weight, "weights are uniform in [1, max]")->capture_default_str();
  gen->add_option("--density", cfg.density, "extra-edge probability, 'p/q' or decimal")
      ->capture_default_str();
  gen->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : bdalloc::cli::kInputError;
  }
  for (auto* sub : {decompose, allocate, verify, oracle, gen})
    if (sub->parsed()) cfg.command = sub->get_name();

  return bdalloc::cli::run(cfg, std::cin, std::cout, std::cerr);
}
