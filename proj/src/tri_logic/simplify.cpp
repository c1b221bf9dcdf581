#include <algorithm>
#include <random>

#include "argalloc/detail/truth_table.hpp"
#include "argalloc/error.hpp"
#include "argalloc/tri_logic.hpp"

namespace argalloc {

bool equivalent(const Expr& p, const Expr& q, int max_vars) {
  if (p == q) return true;
  std::set<std::string> all = vars(p);
  all.merge(vars(q));
  if (static_cast<int>(all.size()) > max_vars) {
    throw CapacityError("equivalence check over " + std::to_string(all.size()) +
                        " variables exceeds the bound of " + std::to_string(max_vars));
  }
  detail::ValuationSpace space({all.begin(), all.end()});
  return space.tabulate(p) == space.tabulate(q);
}

RefutationResult refute_randomly(const Expr& p, const Expr& q, std::size_t samples,
                                 std::uint64_t seed) {
  std::set<std::string> all = vars(p);
  all.merge(vars(q));
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Valuation v;
    for (const auto& x : all) v.set(x, kTriValues[rng() % 3]);
    if (eval(p, v) != eval(q, v)) return {RefutationOutcome::Refuted, v};
  }
  return {RefutationOutcome::NotDisproved, std::nullopt};
}

ConstantClass classify_constant(const Expr& p) {
  switch (eval_undecided(p)) {
    case TriValue::T:
      return ConstantClass::EquivT;
    case TriValue::F:
      return ConstantClass::EquivF;
    case TriValue::U:
      break;
  }
  return ConstantClass::NonConstant;
}

namespace {

ValueRange apply_binary(ValueRange a, ValueRange b, bool conj) {
  ValueRange out;
  for (TriValue x : kTriValues) {
    if (!a.contains(x)) continue;
    for (TriValue y : kTriValues) {
      if (b.contains(y)) out.insert(conj ? tri_and(x, y) : tri_or(x, y));
    }
  }
  return out;
}

// A list holding both q and !q can never be T (conjunction) or F (disjunction).
bool has_complementary_pair(std::span<const Expr> kids) {
  for (const Expr& k : kids) {
    if (k.kind() != Expr::Kind::Not) continue;
    for (const Expr& other : kids) {
      if (other == k.child()) return true;
    }
  }
  return false;
}

ValueRange pointwise_range(const Expr& p) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return {p.value()};
    case Expr::Kind::Variable:
      return ValueRange::all();
    case Expr::Kind::Not: {
      const ValueRange c = pointwise_range(p.child());
      ValueRange out;
      for (TriValue v : kTriValues) {
        if (c.contains(v)) out.insert(tri_not(v));
      }
      return out;
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      const bool conj = p.kind() == Expr::Kind::And;
      auto kids = p.children();
      ValueRange acc = pointwise_range(kids[0]);
      for (std::size_t i = 1; i < kids.size(); ++i) {
        acc = apply_binary(acc, pointwise_range(kids[i]), conj);
      }
      if (has_complementary_pair(kids)) {
        ValueRange trimmed;
        for (TriValue v : kTriValues) {
          if (acc.contains(v) && v != (conj ? TriValue::T : TriValue::F)) trimmed.insert(v);
        }
        if (!trimmed.empty()) acc = trimmed;
      }
      return acc;
    }
  }
  return ValueRange::all();
}

}  // namespace

ValueRange value_range(const Expr& p) {
  if (p.is_constant()) return {p.value()};
  const std::set<std::string> vs = vars(p);
  if (static_cast<int>(vs.size()) <= kExactRangeVars) {
    detail::ValuationSpace space({vs.begin(), vs.end()});
    return space.range(space.tabulate(p));
  }
  return pointwise_range(p);
}

bool detail_is_canonical(const Expr& p) noexcept;
void detail_mark_canonical(const Expr& p) noexcept;

namespace {

Expr canonical(Expr e) {
  detail_mark_canonical(e);
  return e;
}

Expr build_list(Expr::Kind kind, std::vector<Expr> kids) {
  return kind == Expr::Kind::And ? Expr::conjunction(std::move(kids))
                                 : Expr::disjunction(std::move(kids));
}

Expr simplify_basic(const Expr& p);

Expr simplify_list(const Expr& p) {
  const Expr::Kind kind = p.kind();
  const bool conj = kind == Expr::Kind::And;
  const TriValue absorbing = conj ? TriValue::F : TriValue::T;
  const TriValue identity = conj ? TriValue::T : TriValue::F;

  std::vector<Expr> flat;
  for (const Expr& c : p.children()) {
    Expr s = simplify_basic(c);
    if (s.is_constant(absorbing)) return s;
    if (s.is_constant(identity)) continue;
    if (s.kind() == kind) {
      for (const Expr& g : s.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(s));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());

  auto u = std::find_if(flat.begin(), flat.end(),
                        [](const Expr& e) { return e.is_constant(TriValue::U); });
  if (u != flat.end() && flat.size() > 1) {
    std::vector<Expr> rest;
    for (auto it = flat.begin(); it != flat.end(); ++it) {
      if (it != u) rest.push_back(*it);
    }
    const ValueRange r = value_range(rest.size() == 1 ? rest.front() : build_list(kind, rest));
    const bool never_t = r.subset_of({TriValue::F, TriValue::U});
    const bool never_f = r.subset_of({TriValue::T, TriValue::U});
    // U & p = p when p is never T; U & p = U when p is never F; dually for |.
    if (conj ? never_t : never_f) {
      flat = std::move(rest);
    } else if (conj ? never_f : never_t) {
      return Expr::constant(TriValue::U);
    }
  }

  if (flat.empty()) return Expr::constant(identity);
  if (flat.size() == 1) return flat.front();
  const auto kids = p.children();
  if (flat.size() == kids.size() && std::equal(flat.begin(), flat.end(), kids.begin())) {
    return canonical(p);
  }
  return canonical(build_list(kind, std::move(flat)));
}

Expr simplify_basic(const Expr& p) {
  if (detail_is_canonical(p)) return p;
  switch (p.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      return p;
    case Expr::Kind::Not: {
      Expr c = simplify_basic(p.child());
      if (c.is_constant()) return Expr::constant(tri_not(c.value()));
      if (c.kind() == Expr::Kind::Not) return c.child();
      if (c == p.child()) return canonical(p);
      return canonical(Expr::negation(std::move(c)));
    }
    case Expr::Kind::And:
    case Expr::Kind::Or:
      return simplify_list(p);
  }
  return p;
}

constexpr std::size_t kCompactMinSize = 24;
constexpr std::size_t kCompactMaxVars = 10;

// Rebuilds a large expression over few variables from its truth table as
// A | U & !B, with A (B) the disjunction of the prime implicants of the
// valuations reaching T (F). Exact for every Kleene expression since those
// are monotone when U is read as "unassigned".
Expr compact(const Expr& s) {
  if (s.size() <= kCompactMinSize) return s;
  const std::set<std::string> vs = vars(s);
  if (vs.size() > kCompactMaxVars) return s;
  const detail::ValuationSpace space({vs.begin(), vs.end()});
  const detail::TriVector table = space.tabulate(s);
  const std::size_t k = vs.size();
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * 3;

  std::vector<Expr> on_t, on_f;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const TriValue v = table.at(j);
    if (v == TriValue::U) continue;
    bool prime = true;
    std::vector<Expr> lits;
    for (std::size_t i = 0; i < k && prime; ++i) {
      const TriValue d = space.digit(j, i);
      if (d == TriValue::U) continue;
      const std::size_t widened = d == TriValue::T ? j + stride[i] : j - stride[i];
      prime = table.at(widened) != v;
      const Expr x = Expr::variable(space.vars()[i]);
      lits.push_back(d == TriValue::T ? x : Expr::negation(x));
    }
    if (prime) (v == TriValue::T ? on_t : on_f).push_back(Expr::all_of(std::move(lits)));
  }
  const Expr a = simplify_basic(Expr::any_of(std::move(on_t)));
  const Expr not_b = simplify_basic(Expr::negation(Expr::any_of(std::move(on_f))));
  // Either half alone is enough when the other adds no U-valued points.
  Expr best = s;
  for (const Expr& c : {a, not_b, simplify_basic(a | (Expr::constant(TriValue::U) & not_b))}) {
    if (c.size() < best.size() && space.tabulate(c) == table) best = c;
  }
  return best;
}

}  // namespace

Expr simplify(const Expr& p) {
  if (detail_is_canonical(p)) return p;
  return compact(simplify_basic(p));
}

namespace {

// Negation normal form: ! only on variables.
Expr to_nnf(const Expr& p, bool negated) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return Expr::constant(negated ? tri_not(p.value()) : p.value());
    case Expr::Kind::Variable:
      return negated ? Expr::negation(p) : p;
    case Expr::Kind::Not:
      return to_nnf(p.child(), !negated);
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      std::vector<Expr> kids;
      for (const Expr& c : p.children()) kids.push_back(to_nnf(c, negated));
      const bool conj = (p.kind() == Expr::Kind::And) != negated;
      return conj ? Expr::conjunction(std::move(kids)) : Expr::disjunction(std::move(kids));
    }
  }
  return p;
}

// Sum of products over NNF input; each product is a list of literals.
std::vector<std::vector<Expr>> products(const Expr& p) {
  switch (p.kind()) {
    case Expr::Kind::Or: {
      std::vector<std::vector<Expr>> out;
      for (const Expr& c : p.children()) {
        auto sub = products(c);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Expr::Kind::And: {
      std::vector<std::vector<Expr>> acc{{}};
      for (const Expr& c : p.children()) {
        std::vector<std::vector<Expr>> next;
        for (const auto& left : acc) {
          for (const auto& right : products(c)) {
            auto merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      return {{p}};
  }
}

}  // namespace

Expr distribute(const Expr& p) {
  std::vector<Expr> terms;
  for (auto& lits : products(to_nnf(p, false))) terms.push_back(Expr::all_of(std::move(lits)));
  return Expr::any_of(std::move(terms));
}

}  // namespace argalloc
