#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "argalloc/eq_solver.hpp"
#include "argalloc/framework.hpp"
#include "argalloc/io.hpp"

namespace argalloc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitCapacity = 3,
  kExitVerification = 4,
};

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<InputFormat> format;
  OrderStrategy order = OrderStrategy::input;
  /// compile only: "solve" or "legacy".
  std::string method = "solve";
  bool elide = true;
  bool json = false;
  Bounds bounds;
  std::uint64_t seed = 0;
  std::optional<std::string> splitter;
  std::optional<std::pair<std::string, std::string>> pair;
  /// verify only: check this allocator file instead of compiling one.
  std::optional<std::string> allocator;
  /// stable only: also write the condition as DIMACS CNF here.
  std::optional<std::string> dimacs;
  /// Emit solver steps as JSON lines on the error stream.
  bool trace = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

inline constexpr const char* kCommands[] = {"compile",  "labelings",   "grounded",
                                            "stable",   "verify",      "split-solve",
                                            "compose",  "influence",   "arity-search",
                                            "dot"};

RunResult run(const RunConfig& config);

}  // namespace argalloc
