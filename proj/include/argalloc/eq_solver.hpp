#pragma once

// Compiling a network into a general allocator by solving its completeness
// equations: every self-dependency X = G(X) is rewritten into a refined
// equation without X (possibly introducing one fresh variable), and the result
// is substituted through the remaining equations.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "argalloc/framework.hpp"
#include "argalloc/tri_logic.hpp"

namespace argalloc {

struct VariableEquation {
  std::string lhs;
  Expr rhs;

  std::string to_string() const { return lhs + " = " + rhs.text(); }
  bool operator==(const VariableEquation&) const = default;
};

/// Ordered equations with pairwise distinct left-hand sides.
class EquationSet {
 public:
  EquationSet() = default;
  /// Throws UsageError on a repeated lhs.
  explicit EquationSet(std::vector<VariableEquation> equations);

  const std::vector<VariableEquation>& equations() const noexcept { return equations_; }
  std::size_t size() const noexcept { return equations_.size(); }
  bool contains(std::string_view lhs) const { return index_.count(std::string(lhs)) != 0; }
  /// Throws UsageError for an unknown lhs.
  const VariableEquation& at(std::string_view lhs) const;
  void replace(const VariableEquation& e);

  std::vector<std::string> lhs_vars() const;
  /// Union of the variables of every rhs.
  std::set<std::string> rhs_vars() const;

  bool operator==(const EquationSet& other) const { return equations_ == other.equations_; }

 private:
  std::vector<VariableEquation> equations_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// G = P & X | N & !X | C & X & !X | M with X absent from all four parts.
struct QuadDecomposition {
  Expr p, n, c, m;

  Expr recompose(const std::string& x) const;
};

/// The mutually recursive decomposition around `x`. With `simplified` off the
/// components are the literal case-table output.
QuadDecomposition decompose(const Expr& g, const std::string& x, bool simplified = true);

/// Deterministic fresh names `<prefix><k>` for k = 1, 2, ... skipping anything
/// registered through avoid().
class FreshSupply {
 public:
  explicit FreshSupply(std::string prefix = "_v", std::size_t start = 1);

  /// `_b<id>_v`
  static FreshSupply for_block(std::size_t block_id);

  std::string draw();
  void avoid(const std::string& name) { avoid_.insert(name); }
  template <typename Range>
  void avoid_all(const Range& names) {
    for (const auto& n : names) avoid_.insert(n);
  }
  const std::string& prefix() const noexcept { return prefix_; }
  std::size_t drawn() const noexcept { return drawn_; }
  /// True when `name` could be produced by this supply.
  bool owns(std::string_view name) const;

 private:
  std::string prefix_;
  std::size_t next_;
  std::size_t drawn_ = 0;
  std::set<std::string> avoid_;
};

/// Names reserved for generated variables.
bool is_reserved_name(std::string_view name) noexcept;

struct RefineOptions {
  /// Skip the fresh variable when the positive and complex coefficients are F.
  bool elide = true;
};

VariableEquation refine(const VariableEquation& e, FreshSupply& supply,
                        const RefineOptions& options = {});

/// Replaces S(lhs(e)) by e and substitutes e into every other rhs.
EquationSet substitute_set(const EquationSet& s, const VariableEquation& e);

struct SolveStep {
  std::size_t index;
  const std::string& variable;
  const VariableEquation& refined;
  const EquationSet& after;
};

struct SolveOptions {
  RefineOptions refine;
  std::function<void(const SolveStep&)> trace;
};

/// Refines and substitutes each lhs of `order` in turn. `order` must list the
/// lhs set exactly once each.
EquationSet solve_equations(EquationSet s, const std::vector<std::string>& order,
                            FreshSupply& supply, const SolveOptions& options = {});

/// Network inputs stay free and map to themselves in the result.
Allocator solve(const Network& n, const std::vector<std::string>& order, FreshSupply& supply,
                const SolveOptions& options = {});
/// Declaration order with a default supply.
Allocator solve(const Network& n, const SolveOptions& options = {});

/// v extended by X = eval(S(X), v) for every lhs.
Valuation extend_solution(const EquationSet& s, const Valuation& v);

std::size_t arity(const Allocator& e);

enum class OrderStrategy { input, min_arity_exhaustive, fvs_heuristic };

inline constexpr std::size_t kMaxExhaustiveOrderArgs = 8;

/// Greedy feedback vertex set of the dependency graph (an edge B -> A when
/// cond(A) mentions B), in removal order.
std::vector<std::string> feedback_vertex_set(const Network& n);

std::vector<std::string> order_strategy(const Network& n, OrderStrategy kind,
                                        const SolveOptions& options = {});

}  // namespace argalloc
