#pragma once

// Bit-parallel tabulation of expressions over every valuation of a small
// variable set. Valuation index j assigns variable i the base-3 digit of j at
// position i counted from the most significant end (digit 0 = T, 1 = U,
// 2 = F), so increasing j enumerates valuations lexicographically in variable
// order with T < U < F.

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "argalloc/tri_logic.hpp"

namespace argalloc::detail {

/// Per-valuation results: bit j of `t` (`f`) is set when the value at
/// valuation j is T (F); neither bit means U.
struct TriVector {
  std::vector<std::uint64_t> t;
  std::vector<std::uint64_t> f;

  TriValue at(std::size_t j) const noexcept {
    const std::uint64_t m = std::uint64_t{1} << (j % 64);
    if (t[j / 64] & m) return TriValue::T;
    if (f[j / 64] & m) return TriValue::F;
    return TriValue::U;
  }
  bool operator==(const TriVector&) const = default;
};

class ValuationSpace {
 public:
  /// Hard ceiling independent of user bounds (3^16 bits per vector).
  static constexpr std::size_t kMaxVars = 16;

  explicit ValuationSpace(std::vector<std::string> vars);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t words() const noexcept { return words_; }

  TriValue digit(std::size_t index, std::size_t var) const noexcept;
  Valuation valuation_at(std::size_t index) const;

  /// Throws DomainError for a variable outside the space.
  TriVector tabulate(const Expr& p) const;
  TriVector constant(TriValue v) const;
  const TriVector& variable(std::size_t var) const { return var_tables_[var]; }
  /// Mask of bits j where `a` and `b` agree.
  std::vector<std::uint64_t> agreement(const TriVector& a, const TriVector& b) const;
  ValueRange range(const TriVector& a) const;

 private:
  std::vector<std::string> vars_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t size_ = 1;
  std::size_t words_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<std::uint64_t> valid_;
  std::vector<TriVector> var_tables_;
};

template <typename F>
void for_each_set_bit(const std::vector<std::uint64_t>& mask, F&& f) {
  for (std::size_t w = 0; w < mask.size(); ++w) {
    std::uint64_t bits = mask[w];
    while (bits != 0) {
      const int b = __builtin_ctzll(bits);
      f(w * 64 + static_cast<std::size_t>(b));
      bits &= bits - 1;
    }
  }
}

}  // namespace argalloc::detail
