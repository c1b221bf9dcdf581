#pragma once

// Local allocation: blocks of a framework whose external attackers are kept
// as free variable arguments, solved independently and composed back into a
// global allocator.

#include <optional>
#include <string>
#include <vector>

#include "argalloc/eq_solver.hpp"
#include "argalloc/framework.hpp"

namespace argalloc {

/// Actual arguments with one condition each over actual and variable
/// arguments. Blocks built from attacks also keep the attack list.
class Block {
 public:
  Block() = default;
  /// Throws UsageError when actual and variable overlap or an attack targets
  /// a non-actual argument or starts outside actual and variable.
  static Block from_attacks(std::vector<std::string> actual, std::vector<std::string> variable,
                            std::vector<Attack> attacks);
  static Block from_conditions(std::vector<std::string> actual,
                               std::vector<std::string> variable, std::vector<Expr> conditions);

  const std::vector<std::string>& actual() const noexcept { return actual_; }
  const std::vector<std::string>& variable() const noexcept { return variable_; }
  const std::vector<Expr>& conditions() const noexcept { return conditions_; }
  const std::optional<std::vector<Attack>>& attacks() const noexcept { return attacks_; }
  bool is_actual(std::string_view name) const;
  bool is_variable(std::string_view name) const;

  /// Actual arguments as network arguments, variable arguments as inputs.
  Network network() const;
  bool empty() const noexcept { return actual_.empty() && variable_.empty(); }

 private:
  std::vector<std::string> actual_;
  std::vector<std::string> variable_;
  std::vector<Expr> conditions_;
  std::optional<std::vector<Attack>> attacks_;
};

/// The block of `actual` inside a framework; attackers outside `actual`
/// become variable arguments in declaration order.
Block block_of(const ArgumentationFramework& f, const std::vector<std::string>& actual);
Block block_of(const Network& n, const std::vector<std::string>& actual);

struct Splitter {
  std::vector<Block> blocks;
};

struct SplitterReport {
  bool valid = true;
  std::vector<std::string> violations;

  explicit operator bool() const noexcept { return valid; }
};

SplitterReport validate_splitter(const ArgumentationFramework& f, const Splitter& s);
/// Conditions must match the network's up to equivalence.
SplitterReport validate_splitter(const Network& n, const Splitter& s);

/// Variable arguments map to themselves. Fresh variables come from `supply`.
Allocator solve_block(const Block& b, FreshSupply& supply, const SolveOptions& options = {});
/// Uses the `_b<id>_v` namespace.
Allocator solve_block(const Block& b, std::size_t block_id, const SolveOptions& options = {});

/// Throws UsageError when the actual sets overlap.
Block compose_blocks(const Block& b1, const Block& b2);

struct ComposedBlock {
  Block block;
  Allocator allocator;
};

/// Solves the cross equations between the two allocators and substitutes the
/// solution into both. Throws UsageError when shared variable arguments are
/// allocated different variables and NamespaceError when other allocation
/// variables overlap.
ComposedBlock compose_allocators(const Block& b1, const Allocator& e1, const Block& b2,
                                 const Allocator& e2, FreshSupply& supply,
                                 const SolveOptions& options = {});

/// Solves every block in its own namespace and folds compose_allocators in
/// block order. The result is listed in the network's argument order.
Allocator compose_splitter(const Network& n, const Splitter& s, const SolveOptions& options = {});
Allocator compose_splitter(const ArgumentationFramework& f, const Splitter& s,
                           const SolveOptions& options = {});

struct Influence {
  Expr on_a;  ///< refined right side for a, mentioning b but not a
  Expr on_b;  ///< refined right side for b, mentioning a but not b
};

Influence pairwise_influence(const Network& n, const std::string& a, const std::string& b);

}  // namespace argalloc
