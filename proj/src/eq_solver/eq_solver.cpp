#include "argalloc/eq_solver.hpp"

#include <algorithm>
#include <numeric>

#include "argalloc/error.hpp"

namespace argalloc {

EquationSet::EquationSet(std::vector<VariableEquation> equations)
    : equations_(std::move(equations)) {
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    if (!index_.emplace(equations_[i].lhs, i).second) {
      throw UsageError("equation set has two equations for '" + equations_[i].lhs + "'");
    }
  }
}

const VariableEquation& EquationSet::at(std::string_view lhs) const {
  auto it = index_.find(std::string(lhs));
  if (it == index_.end()) throw UsageError("no equation for '" + std::string(lhs) + "'");
  return equations_[it->second];
}

void EquationSet::replace(const VariableEquation& e) {
  auto it = index_.find(e.lhs);
  if (it == index_.end()) throw UsageError("no equation for '" + e.lhs + "'");
  equations_[it->second] = e;
}

std::vector<std::string> EquationSet::lhs_vars() const {
  std::vector<std::string> out;
  out.reserve(equations_.size());
  for (const auto& e : equations_) out.push_back(e.lhs);
  return out;
}

std::set<std::string> EquationSet::rhs_vars() const {
  std::set<std::string> out;
  for (const auto& e : equations_) out.merge(vars(e.rhs));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const Expr kT = Expr::constant(TriValue::T);
const Expr kF = Expr::constant(TriValue::F);
const Expr kU = Expr::constant(TriValue::U);

class Decomposer {
 public:
  Decomposer(const std::string& x, bool simplified) : x_(x), simplified_(simplified) {}

  // Rx(g) when !negated, the barred variant (which handles !g) otherwise.
  QuadDecomposition run(const Expr& g, bool negated) const {
    if (simplified_ && !mentions(g, x_)) {
      return {kF, kF, kF, simplify(negated ? !g : g)};
    }
    switch (g.kind()) {
      case Expr::Kind::Constant:
        return {kF, kF, kF, Expr::constant(negated ? tri_not(g.value()) : g.value())};
      case Expr::Kind::Variable:
        if (g.name() == x_) return negated ? QuadDecomposition{kF, kT, kF, kF}
                                           : QuadDecomposition{kT, kF, kF, kF};
        return {kF, kF, kF, negated ? !g : g};
      case Expr::Kind::Not:
        return run(g.child(), !negated);
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        // Under negation a conjunction behaves like a disjunction and vice versa.
        const bool product = (g.kind() == Expr::Kind::And) != negated;
        auto kids = g.children();
        QuadDecomposition acc = run(kids[0], negated);
        for (std::size_t i = 1; i < kids.size(); ++i) {
          const QuadDecomposition next = run(kids[i], negated);
          acc = product ? multiply(acc, next) : add(acc, next);
        }
        return acc;
      }
    }
    return {kF, kF, kF, g};
  }

 private:
  Expr tidy(Expr e) const { return simplified_ ? simplify(e) : e; }
  Expr conj(const Expr& a, const Expr& b) const { return tidy(a & b); }
  Expr disj(std::vector<Expr> kids) const { return tidy(Expr::any_of(std::move(kids))); }

  QuadDecomposition add(const QuadDecomposition& a, const QuadDecomposition& b) const {
    return {disj({a.p, b.p}), disj({a.n, b.n}), disj({a.c, b.c}), disj({a.m, b.m})};
  }

  QuadDecomposition multiply(const QuadDecomposition& a, const QuadDecomposition& b) const {
    return {
        disj({conj(a.p, b.p), conj(a.p, b.m), conj(b.p, a.m)}),
        disj({conj(a.n, b.n), conj(a.n, b.m), conj(b.n, a.m)}),
        disj({conj(disj({a.p, a.n, a.m}), b.c), conj(disj({b.p, b.n, b.m}), a.c),
              conj(a.c, b.c), conj(a.p, b.n), conj(a.n, b.p)}),
        conj(a.m, b.m),
    };
  }

  const std::string& x_;
  bool simplified_;
};

}  // namespace

Expr QuadDecomposition::recompose(const std::string& x) const {
  const Expr v = Expr::variable(x);
  return Expr::disjunction({p & v, n & !v, Expr::conjunction({c, v, !v}), m});
}

QuadDecomposition decompose(const Expr& g, const std::string& x, bool simplified) {
  if (!is_identifier(x)) throw UsageError("invalid variable name '" + x + "'");
  return Decomposer(x, simplified).run(g, false);
}

// ---------------------------------------------------------------------------

FreshSupply::FreshSupply(std::string prefix, std::size_t start)
    : prefix_(std::move(prefix)), next_(start) {}

FreshSupply FreshSupply::for_block(std::size_t block_id) {
  return FreshSupply("_b" + std::to_string(block_id) + "_v");
}

std::string FreshSupply::draw() {
  std::string name;
  do {
    name = prefix_ + std::to_string(next_++);
  } while (avoid_.count(name));
  avoid_.insert(name);
  ++drawn_;
  return name;
}

bool FreshSupply::owns(std::string_view name) const {
  if (name.size() <= prefix_.size() || name.substr(0, prefix_.size()) != prefix_) return false;
  const auto rest = name.substr(prefix_.size());
  return std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_reserved_name(std::string_view name) noexcept {
  return name.starts_with("_v") || name.starts_with("_b");
}

VariableEquation refine(const VariableEquation& e, FreshSupply& supply,
                        const RefineOptions& options) {
  if (!mentions(e.rhs, e.lhs)) return e;
  const QuadDecomposition q = decompose(e.rhs, e.lhs);
  if (options.elide && classify_constant(q.p) == ConstantClass::EquivF &&
      classify_constant(q.c) == ConstantClass::EquivF) {
    return {e.lhs, simplify((kU & q.n) | q.m)};
  }
  supply.avoid_all(vars(e.rhs));
  supply.avoid(e.lhs);
  const Expr x = Expr::variable(supply.draw());
  return {e.lhs, simplify(Expr::disjunction({q.p & x, kU & (q.n | (q.c & x)), q.m}))};
}

EquationSet substitute_set(const EquationSet& s, const VariableEquation& e) {
  if (!s.contains(e.lhs)) throw UsageError("no equation for '" + e.lhs + "'");
  if (mentions(e.rhs, e.lhs)) {
    throw UsageError("equation for '" + e.lhs + "' still depends on itself");
  }
  std::vector<VariableEquation> out;
  out.reserve(s.size());
  for (const auto& other : s.equations()) {
    if (other.lhs == e.lhs) {
      out.push_back(e);
    } else if (mentions(other.rhs, e.lhs)) {
      out.push_back({other.lhs, simplify(substitute(other.rhs, e.lhs, e.rhs))});
    } else {
      out.push_back(other);
    }
  }
  return EquationSet(std::move(out));
}

EquationSet solve_equations(EquationSet s, const std::vector<std::string>& order,
                            FreshSupply& supply, const SolveOptions& options) {
  std::vector<std::string> expected = s.lhs_vars();
  std::vector<std::string> given = order;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given) throw UsageError("solve order must list every equation exactly once");

  supply.avoid_all(expected);
  supply.avoid_all(s.rhs_vars());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VariableEquation refined = refine(s.at(order[i]), supply, options.refine);
    s = substitute_set(s, refined);
    if (options.trace) options.trace(SolveStep{i, order[i], refined, s});
  }
  return s;
}

Allocator solve(const Network& n, const std::vector<std::string>& order, FreshSupply& supply,
                const SolveOptions& options) {
  for (const auto& name : n.positions()) {
    if (supply.owns(name)) {
      throw NamespaceError("'" + name + "' collides with generated variable names");
    }
  }
  std::vector<VariableEquation> equations;
  equations.reserve(n.args().size());
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    equations.push_back({n.args()[i], simplify(n.condition(i))});
  }
  supply.avoid_all(n.inputs());
  const EquationSet solved = solve_equations(EquationSet(std::move(equations)), order, supply,
                                             options);
  std::vector<Expr> exprs;
  for (const auto& a : n.args()) exprs.push_back(simplify(solved.at(a).rhs));
  for (const auto& x : n.inputs()) exprs.push_back(Expr::variable(x));
  return Allocator(n.positions(), std::move(exprs));
}

Allocator solve(const Network& n, const SolveOptions& options) {
  FreshSupply supply;
  return solve(n, n.args(), supply, options);
}

Valuation extend_solution(const EquationSet& s, const Valuation& v) {
  const std::set<std::string> rv = s.rhs_vars();
  for (const auto& x : s.lhs_vars()) {
    if (rv.count(x)) throw UsageError("'" + x + "' is still mentioned on a right-hand side");
  }
  for (const auto& x : rv) {
    if (!v.contains(x)) throw UsageError("valuation does not assign '" + x + "'");
  }
  Valuation out = v;
  for (const auto& e : s.equations()) out.set(e.lhs, eval(e.rhs, v));
  return out;
}

std::size_t arity(const Allocator& e) { return e.simplified().allocation_vars().size(); }

// ---------------------------------------------------------------------------

std::vector<std::string> feedback_vertex_set(const Network& n) {
  const std::size_t k = n.args().size();
  std::vector<std::set<std::size_t>> succ(k), pred(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (const auto& b : vars(n.condition(a))) {
      if (!n.contains(b)) continue;
      const std::size_t bi = n.index_of(b);
      succ[bi].insert(a);
      pred[a].insert(bi);
    }
  }
  std::vector<bool> alive(k, true);
  auto remove = [&](std::size_t v) {
    alive[v] = false;
    for (std::size_t s : succ[v]) pred[s].erase(v);
    for (std::size_t p : pred[v]) succ[p].erase(v);
    succ[v].clear();
    pred[v].clear();
  };

  std::vector<std::string> fvs;
  while (true) {
    // Vertices without incoming or outgoing edges lie on no cycle.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < k; ++v) {
        if (alive[v] && (pred[v].empty() || succ[v].empty())) {
          remove(v);
          changed = true;
        }
      }
    }
    // Self-loops must be cut; otherwise take the vertex on the most paths.
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < k && !pick; ++v) {
      if (alive[v] && succ[v].count(v)) pick = v;
    }
    std::size_t best = 0;
    for (std::size_t v = 0; v < k && !pick; ++v) {
      if (!alive[v]) continue;
      best = std::max(best, pred[v].size() * succ[v].size());
    }
    for (std::size_t v = 0; v < k && !pick; ++v) {
      if (alive[v] && pred[v].size() * succ[v].size() == best) pick = v;
    }
    if (!pick) break;
    fvs.push_back(n.args()[*pick]);
    remove(*pick);
  }
  return fvs;
}

std::vector<std::string> order_strategy(const Network& n, OrderStrategy kind,
                                        const SolveOptions& options) {
  switch (kind) {
    case OrderStrategy::input:
      return n.args();
    case OrderStrategy::fvs_heuristic: {
      const auto fvs = feedback_vertex_set(n);
      const std::set<std::string> in_fvs(fvs.begin(), fvs.end());
      std::vector<std::string> order;
      for (const auto& a : n.args()) {
        if (!in_fvs.count(a)) order.push_back(a);
      }
      for (const auto& a : n.args()) {
        if (in_fvs.count(a)) order.push_back(a);
      }
      return order;
    }
    case OrderStrategy::min_arity_exhaustive: {
      if (n.args().size() > kMaxExhaustiveOrderArgs) {
        throw CapacityError("exhaustive order search over " + std::to_string(n.args().size()) +
                            " arguments exceeds the bound of " +
                            std::to_string(kMaxExhaustiveOrderArgs));
      }
      SolveOptions quiet = options;
      quiet.trace = nullptr;
      std::vector<std::size_t> perm(n.args().size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::string> best_order = n.args();
      std::optional<std::size_t> best;
      do {
        std::vector<std::string> order;
        for (std::size_t i : perm) order.push_back(n.args()[i]);
        FreshSupply supply;
        const std::size_t a = arity(solve(n, order, supply, quiet));
        if (!best || a < *best) {
          best = a;
          best_order = std::move(order);
        }
      } while (*best > 0 && std::next_permutation(perm.begin(), perm.end()));
      return best_order;
    }
  }
  return n.args();
}

}  // namespace argalloc
