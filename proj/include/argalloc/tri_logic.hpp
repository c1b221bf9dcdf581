#pragma once

// Three-valued (strong Kleene) logical expressions.
//
// Expressions are immutable trees with shared structure. Conjunction and
// disjunction are n-ary (at least two children). Every node caches its
// printed form, which doubles as the structural identity and the total order
// used for canonical sorting.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace argalloc {

/// Declaration order T < U < F is used for serialization and enumeration only.
enum class TriValue : std::uint8_t { T = 0, U = 1, F = 2 };

inline constexpr TriValue kTriValues[] = {TriValue::T, TriValue::U, TriValue::F};

constexpr TriValue tri_not(TriValue a) noexcept {
  return a == TriValue::T ? TriValue::F : a == TriValue::F ? TriValue::T : TriValue::U;
}
// With the order T < U < F, Kleene conjunction is max and disjunction is min.
constexpr TriValue tri_and(TriValue a, TriValue b) noexcept { return a < b ? b : a; }
constexpr TriValue tri_or(TriValue a, TriValue b) noexcept { return a < b ? a : b; }

char to_char(TriValue v) noexcept;
std::optional<TriValue> tri_from_char(char c) noexcept;

/// Nonempty-by-construction subset of {T, U, F}.
class ValueRange {
 public:
  constexpr ValueRange() noexcept = default;
  constexpr ValueRange(std::initializer_list<TriValue> values) noexcept {
    for (TriValue v : values) bits_ |= bit(v);
  }
  static constexpr ValueRange all() noexcept { return {TriValue::T, TriValue::U, TriValue::F}; }

  constexpr void insert(TriValue v) noexcept { bits_ |= bit(v); }
  constexpr bool contains(TriValue v) const noexcept { return (bits_ & bit(v)) != 0; }
  constexpr bool subset_of(ValueRange other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool operator==(const ValueRange&) const noexcept = default;

  std::string to_string() const;

 private:
  static constexpr std::uint8_t bit(TriValue v) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v));
  }
  std::uint8_t bits_ = 0;
};

/// `[A-Za-z0-9_]+`, excluding the reserved constant names T, F and U.
bool is_identifier(std::string_view name) noexcept;

class Expr {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Not, And, Or };

  static Expr constant(TriValue v);
  static Expr variable(std::string name);
  static Expr negation(Expr child);
  /// Throws UsageError for fewer than two children.
  static Expr conjunction(std::vector<Expr> children);
  static Expr disjunction(std::vector<Expr> children);
  /// Empty list gives T, a singleton gives its element.
  static Expr all_of(std::vector<Expr> children);
  /// Empty list gives F, a singleton gives its element.
  static Expr any_of(std::vector<Expr> children);

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_constant(TriValue v) const noexcept { return is_constant() && value() == v; }
  bool is_variable() const noexcept { return kind() == Kind::Variable; }
  bool is_list() const noexcept { return kind() == Kind::And || kind() == Kind::Or; }

  TriValue value() const noexcept;
  const std::string& name() const noexcept;
  std::span<const Expr> children() const noexcept;
  const Expr& child() const noexcept { return children().front(); }

  /// Deterministic printed form: `!`, `&`, `|`, parentheses only where needed
  /// to reproduce the exact tree on parsing.
  const std::string& text() const noexcept;
  /// Number of nodes in the tree.
  std::size_t size() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b) noexcept;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return *node_; }
  std::shared_ptr<const Node> node_;

  friend bool detail_is_canonical(const Expr& p) noexcept;
  friend void detail_mark_canonical(const Expr& p) noexcept;
};

Expr operator!(Expr p);
Expr operator&(Expr a, Expr b);
Expr operator|(Expr a, Expr b);

/// Total mapping from a finite set of variables to TriValue.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::initializer_list<std::pair<const std::string, TriValue>> entries)
      : values_(entries) {}

  /// v_U restricted to `domain`.
  static Valuation undecided(const std::set<std::string>& domain);

  void set(const std::string& name, TriValue v) { values_[name] = v; }
  bool contains(std::string_view name) const { return values_.find(name) != values_.end(); }
  /// Throws DomainError when `name` is outside the domain.
  TriValue at(std::string_view name) const;
  const std::map<std::string, TriValue, std::less<>>& entries() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool operator==(const Valuation&) const = default;

 private:
  std::map<std::string, TriValue, std::less<>> values_;
};

inline constexpr int kDefaultMaxEquivVars = 12;
/// Below this many variables value_range is exact.
inline constexpr int kExactRangeVars = 8;

/// Kleene evaluation. Throws DomainError naming the first undeclared variable.
TriValue eval(const Expr& p, const Valuation& v);
/// Evaluation under v_U without building a valuation.
TriValue eval_undecided(const Expr& p);

std::set<std::string> vars(const Expr& p);
bool mentions(const Expr& p, std::string_view x);

/// p[q/x]
Expr substitute(const Expr& p, std::string_view x, const Expr& q);
/// Simultaneous substitution of every mapped variable.
Expr substitute(const Expr& p, const std::map<std::string, Expr, std::less<>>& replacements);

/// Exhaustive 3^k check over the union of variables. Throws CapacityError
/// when more than `max_vars` variables are involved.
bool equivalent(const Expr& p, const Expr& q, int max_vars = kDefaultMaxEquivVars);

enum class RefutationOutcome { Refuted, NotDisproved };
struct RefutationResult {
  RefutationOutcome outcome;
  std::optional<Valuation> witness;
};
/// Sampling fallback for variable counts beyond the exhaustive bound. Never
/// concludes equivalence.
RefutationResult refute_randomly(const Expr& p, const Expr& q, std::size_t samples,
                                 std::uint64_t seed);

enum class ConstantClass { EquivT, EquivF, NonConstant };
ConstantClass classify_constant(const Expr& p);

/// Sound over-approximation of the reachable values of p; exact while p has
/// at most kExactRangeVars variables.
ValueRange value_range(const Expr& p);

/// Canonical, equivalence-preserving and idempotent rewriting. See README for
/// the rule set.
Expr simplify(const Expr& p);

/// Negation pushed to variables and conjunction distributed over disjunction.
/// Can grow exponentially; never applied implicitly.
Expr distribute(const Expr& p);

/// Parses the printed grammar:
///   or  := and ('|' and)*      and := unary ('&' unary)*
///   unary := '!' unary | atom  atom := 'T' | 'U' | 'F' | ident | '(' or ')'
Expr parse_expression(std::string_view text);

}  // namespace argalloc
