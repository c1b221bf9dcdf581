#include "argalloc/detail/truth_table.hpp"

#include "argalloc/error.hpp"

namespace argalloc::detail {

ValuationSpace::ValuationSpace(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVars) {
    throw CapacityError("valuation space over " + std::to_string(vars_.size()) +
                        " variables exceeds the hard limit of " + std::to_string(kMaxVars));
  }
  const std::size_t k = vars_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!index_.emplace(vars_[i], i).second) {
      throw UsageError("duplicate variable '" + vars_[i] + "' in valuation space");
    }
    size_ *= 3;
  }
  words_ = (size_ + 63) / 64;

  strides_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) strides_[i - 1] = strides_[i] * 3;

  valid_.assign(words_, ~std::uint64_t{0});
  if (size_ % 64 != 0) valid_.back() = (std::uint64_t{1} << (size_ % 64)) - 1;

  var_tables_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    TriVector& tv = var_tables_[i];
    tv.t.assign(words_, 0);
    tv.f.assign(words_, 0);
    for (std::size_t j = 0; j < size_; ++j) {
      const std::size_t d = (j / strides_[i]) % 3;
      const std::uint64_t m = std::uint64_t{1} << (j % 64);
      if (d == 0) tv.t[j / 64] |= m;
      if (d == 2) tv.f[j / 64] |= m;
    }
  }
}

TriValue ValuationSpace::digit(std::size_t index, std::size_t var) const noexcept {
  return static_cast<TriValue>((index / strides_[var]) % 3);
}

Valuation ValuationSpace::valuation_at(std::size_t index) const {
  Valuation v;
  for (std::size_t i = 0; i < vars_.size(); ++i) v.set(vars_[i], digit(index, i));
  return v;
}

TriVector ValuationSpace::constant(TriValue v) const {
  TriVector out{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)};
  if (v == TriValue::T) out.t = valid_;
  if (v == TriValue::F) out.f = valid_;
  return out;
}

TriVector ValuationSpace::tabulate(const Expr& p) const {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return constant(p.value());
    case Expr::Kind::Variable: {
      auto it = index_.find(p.name());
      if (it == index_.end()) throw DomainError(p.name());
      return var_tables_[it->second];
    }
    case Expr::Kind::Not: {
      TriVector c = tabulate(p.child());
      std::swap(c.t, c.f);
      return c;
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      const bool conj = p.kind() == Expr::Kind::And;
      auto kids = p.children();
      TriVector acc = tabulate(kids[0]);
      for (std::size_t i = 1; i < kids.size(); ++i) {
        const TriVector c = tabulate(kids[i]);
        for (std::size_t w = 0; w < words_; ++w) {
          if (conj) {
            acc.t[w] &= c.t[w];
            acc.f[w] |= c.f[w];
          } else {
            acc.t[w] |= c.t[w];
            acc.f[w] &= c.f[w];
          }
        }
      }
      return acc;
    }
  }
  return constant(TriValue::U);
}

std::vector<std::uint64_t> ValuationSpace::agreement(const TriVector& a,
                                                     const TriVector& b) const {
  std::vector<std::uint64_t> out(words_);
  for (std::size_t w = 0; w < words_; ++w) {
    const std::uint64_t au = ~(a.t[w] | a.f[w]);
    const std::uint64_t bu = ~(b.t[w] | b.f[w]);
    out[w] = ((a.t[w] & b.t[w]) | (a.f[w] & b.f[w]) | (au & bu)) & valid_[w];
  }
  return out;
}

ValueRange ValuationSpace::range(const TriVector& a) const {
  ValueRange r;
  for (std::size_t w = 0; w < words_; ++w) {
    if (a.t[w]) r.insert(TriValue::T);
    if (a.f[w]) r.insert(TriValue::F);
    if (~(a.t[w] | a.f[w]) & valid_[w]) r.insert(TriValue::U);
  }
  return r;
}

}  // namespace argalloc::detail
