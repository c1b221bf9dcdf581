#pragma once

// Frameworks, acceptance-condition networks, labelings and allocators, plus
// the brute-force complete-labeling oracle and the pairwise composition
// construction that the equation solver replaces.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "argalloc/tri_logic.hpp"

namespace argalloc {

struct Attack {
  std::string attacker;
  std::string target;
  auto operator<=>(const Attack&) const = default;
};

class ArgumentationFramework {
 public:
  ArgumentationFramework() = default;
  /// Throws UsageError on duplicate or invalid names and on attacks between
  /// undeclared arguments. Duplicate attacks are dropped.
  ArgumentationFramework(std::vector<std::string> args, std::vector<Attack> attacks);

  const std::vector<std::string>& args() const noexcept { return args_; }
  const std::vector<Attack>& attacks() const noexcept { return attacks_; }
  bool contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }
  std::vector<std::string> attackers_of(std::string_view target) const;

 private:
  std::vector<std::string> args_;
  std::vector<Attack> attacks_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Arguments with one acceptance condition each. `inputs` are free variables
/// the conditions may mention without being solved for; they are empty for a
/// plain framework and hold the variable arguments of a block.
class Network {
 public:
  Network() = default;
  Network(std::vector<std::string> args, std::vector<Expr> conditions,
          std::vector<std::string> inputs = {});

  const std::vector<std::string>& args() const noexcept { return args_; }
  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  const std::vector<Expr>& conditions() const noexcept { return conditions_; }
  const Expr& condition(std::size_t i) const { return conditions_.at(i); }
  const Expr& condition(std::string_view arg) const;
  bool contains(std::string_view arg) const { return index_.count(std::string(arg)) != 0; }
  std::size_t index_of(std::string_view arg) const;

  /// Arguments followed by inputs; the index space of labelings.
  std::vector<std::string> positions() const;
  /// True when every condition is T, !B or a conjunction of negated names.
  bool is_attack_shaped() const;

 private:
  std::vector<std::string> args_;
  std::vector<Expr> conditions_;
  std::vector<std::string> inputs_;
  std::unordered_map<std::string, std::size_t> index_;
};

Network af_to_network(const ArgumentationFramework& f);

enum class Label : std::uint8_t { in = 0, undec = 1, out = 2 };

constexpr TriValue to_tri(Label l) noexcept { return static_cast<TriValue>(l); }
constexpr Label to_label(TriValue v) noexcept { return static_cast<Label>(v); }
std::string_view label_name(Label l) noexcept;
std::optional<Label> parse_label(std::string_view s) noexcept;

/// Positional labeling; the positions come from the owning network.
struct Labeling {
  std::vector<Label> labels;
  auto operator<=>(const Labeling&) const = default;

  std::string to_string(const std::vector<std::string>& positions) const;
  bool has_undec() const noexcept;
};

class Allocator {
 public:
  Allocator() = default;
  Allocator(std::vector<std::string> names, std::vector<Expr> exprs);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Expr>& exprs() const noexcept { return exprs_; }
  std::size_t size() const noexcept { return names_.size(); }
  const Expr& at(std::string_view name) const;
  const Expr& at(std::size_t i) const { return exprs_.at(i); }
  bool contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

  std::set<std::string> allocation_vars() const;
  std::size_t node_count() const;
  /// Same mapping listed in the order of `names`; throws UsageError when the
  /// name sets differ.
  Allocator reordered(const std::vector<std::string>& names) const;
  Allocator simplified() const;

  std::string to_string() const;

 private:
  std::vector<std::string> names_;
  std::vector<Expr> exprs_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Bounds {
  int max_equiv_vars = kDefaultMaxEquivVars;
  int max_oracle_positions = 12;
  int max_sat_brute_vars = 20;
};

bool is_complete_labeling(const Network& n, const Labeling& l);

/// All 3^|positions| candidates filtered by completeness, in lexicographic
/// position order with in < undec < out. Throws CapacityError above the bound.
std::vector<Labeling> enumerate_complete_labelings(const Network& n, int max_positions = 12);

/// Least fixpoint of Kleene evaluation from the all-undec labeling.
Labeling grounded_labeling(const Network& n);

Allocator labeling_to_allocator(const Network& n, const Labeling& l);
/// Throws ShapeError unless every expression is a constant.
Labeling allocator_to_labeling(const Allocator& e);

/// Every input maps to a distinct bare variable and every argument's
/// expression is equivalent to its condition with positions replaced by their
/// expressions.
bool is_complete_allocator(const Network& n, const Allocator& e,
                           int max_equiv_vars = kDefaultMaxEquivVars);

/// Throws DomainError for a missing allocation variable.
Allocator instantiate(const Allocator& e, const Valuation& v);

/// Labelings (in the allocator's name order) reached by all 3^k valuations of
/// the allocation variables.
std::set<Labeling> instantiation_set(const Allocator& e, int max_vars = kDefaultMaxEquivVars);

bool is_general(const Network& n, const Allocator& e, const Bounds& bounds = {});

/// a & E1(A) | !a & E2(A) | a & !a where `grounded` is undec, E1(A) elsewhere.
Allocator compose_pair_legacy(const Allocator& e1, const Allocator& e2, const Labeling& grounded,
                              const std::string& fresh);

/// Folds every non-grounded constant allocator through compose_pair_legacy.
Allocator build_general_legacy(const Network& n, const Bounds& bounds = {});

}  // namespace argalloc
