#pragma once

// Stable labelings from a general allocator: the valuations without U that
// make every allocated expression two-valued, found as models of a
// classical formula.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "argalloc/framework.hpp"
#include "argalloc/tri_logic.hpp"

namespace argalloc {

/// Classical propositional formula.
class BoolExpr {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Not, And, Or };

  static BoolExpr constant(bool v);
  static BoolExpr variable(std::string name);
  static BoolExpr negation(BoolExpr child);
  static BoolExpr conjunction(BoolExpr a, BoolExpr b);
  static BoolExpr disjunction(BoolExpr a, BoolExpr b);
  /// Empty gives true (conjunction) or false (disjunction).
  static BoolExpr all_of(std::vector<BoolExpr> items);
  static BoolExpr any_of(std::vector<BoolExpr> items);

  Kind kind() const noexcept;
  bool value() const noexcept;
  const std::string& name() const noexcept;
  const BoolExpr& left() const noexcept;
  const BoolExpr& right() const noexcept;
  const BoolExpr& child() const noexcept { return left(); }
  bool is_constant(bool v) const noexcept { return kind() == Kind::Constant && value() == v; }

  std::string to_string() const;

 private:
  struct Node;
  explicit BoolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using BinaryValuation = std::map<std::string, bool, std::less<>>;

/// Throws DomainError for an unassigned variable.
bool eval(const BoolExpr& p, const BinaryValuation& v);
std::set<std::string> vars(const BoolExpr& p);

/// Conditions under which p evaluates to T (s_true) or F (s_false) with a
/// valuation that never assigns U.
BoolExpr s_true(const Expr& p);
BoolExpr s_false(const Expr& p);

/// Conjunction over every entry of (s_true | s_false).
BoolExpr stable_condition(const Allocator& e);

/// Structural (Tseitin) conversion. Variables 1..originals().size() are the
/// formula's variables in sorted order; the rest are auxiliary.
class Cnf {
 public:
  explicit Cnf(const BoolExpr& p);

  const std::vector<std::string>& originals() const noexcept { return originals_; }
  int num_vars() const noexcept { return num_vars_; }
  const std::vector<std::vector<int>>& clauses() const noexcept { return clauses_; }

  std::string to_dimacs() const;

 private:
  int encode(const BoolExpr& p);

  std::vector<std::string> originals_;
  std::map<std::string, int, std::less<>> index_;
  int num_vars_ = 0;
  std::vector<std::vector<int>> clauses_;
};

enum class SatBackend { automatic, brute_force, dpll };

/// Every model of p over `domain` (which must contain vars(p)), in
/// lexicographic order with false < true. Brute force is used up to
/// `max_brute_vars` under the automatic backend; forcing it beyond throws
/// CapacityError.
std::vector<BinaryValuation> all_models(const BoolExpr& p, const std::set<std::string>& domain,
                                        SatBackend backend = SatBackend::automatic,
                                        int max_brute_vars = 20);

/// Labelings over the network positions reached by the U-free valuations
/// that keep every expression of the general allocator `e` two-valued.
std::set<Labeling> enumerate_stable(const Network& n, const Allocator& e,
                                    SatBackend backend = SatBackend::automatic,
                                    const Bounds& bounds = {});

}  // namespace argalloc
