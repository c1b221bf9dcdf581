// argalloc: compile argumentation frameworks into general allocators.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "argalloc/cli.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"compile", "Build a general allocator"},
    {"labelings", "Enumerate complete labelings by brute force"},
    {"grounded", "Print the grounded labeling"},
    {"stable", "Enumerate stable labelings through the allocator"},
    {"verify", "Check completeness and generality of an allocator"},
    {"split-solve", "Solve each block of a splitter"},
    {"compose", "Solve a splitter's blocks and compose them"},
    {"influence", "Refined equations between two arguments"},
    {"arity-search", "Compare the arity reached by each order strategy"},
    {"dot", "Dump the dependency graph in DOT"},
};

}  // namespace

int main(int argc, char** argv) {
  argalloc::RunConfig cfg;
  CLI::App app{"Three-valued allocators for argumentation frameworks", "argalloc"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;
  std::string order = "input";
  std::string output = "text";
  std::string pair;
  app.add_option("--input-format", format, "tgf, apx, adfx or blocks-json (default: by extension)")
      ->check(CLI::IsMember({"tgf", "apx", "adfx", "blocks-json", "json"}));
  app.add_option("--order", order, "Equation order strategy")
      ->check(CLI::IsMember({"input", "fvs", "exhaustive"}));
  app.add_flag("--no-elide", [&](std::int64_t) { cfg.elide = false; },
               "Always introduce a fresh variable for self-dependent equations");
  app.add_option("--format", output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-equiv-vars", cfg.bounds.max_equiv_vars,
                 "Variable bound for exhaustive equivalence checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-oracle-args", cfg.bounds.max_oracle_positions,
                 "Argument bound for brute-force labeling enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampled refutation");
  app.add_option("--splitter", cfg.splitter, "Splitter JSON file");
  app.add_option("--pair", pair, "Argument pair a,b for influence");
  app.add_option("--method", cfg.method, "Compilation method")
      ->check(CLI::IsMember({"solve", "legacy"}));
  app.add_option("--allocator", cfg.allocator, "Allocator JSON file to verify");
  app.add_option("--dimacs", cfg.dimacs, "Write the stability condition as DIMACS CNF");
  app.add_flag("--trace", cfg.trace, "Emit solver steps as JSON lines on stderr");

  for (const char* name : argalloc::kCommands) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("input", cfg.input, "Framework file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : argalloc::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.json = output == "json";
  if (!format.empty()) cfg.format = argalloc::parse_format_name(format);
  cfg.order = order == "fvs"          ? argalloc::OrderStrategy::fvs_heuristic
              : order == "exhaustive" ? argalloc::OrderStrategy::min_arity_exhaustive
                                      : argalloc::OrderStrategy::input;
  if (!pair.empty()) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) {
      std::cerr << "--pair expects a,b\n";
      return argalloc::kExitUsage;
    }
    cfg.pair = {pair.substr(0, comma), pair.substr(comma + 1)};
  }

  const argalloc::RunResult r = argalloc::run(cfg);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
