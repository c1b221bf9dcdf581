#include "argalloc/stability.hpp"

#include <functional>

#include "argalloc/error.hpp"

namespace argalloc {

struct BoolExpr::Node {
  Kind kind;
  bool value = false;
  std::string name;
  std::vector<BoolExpr> kids;
};

BoolExpr BoolExpr::constant(bool v) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Constant, v, {}, {}}));
}

BoolExpr BoolExpr::variable(std::string name) {
  if (!is_identifier(name)) throw UsageError("invalid variable name '" + name + "'");
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Variable, false, std::move(name), {}}));
}

BoolExpr BoolExpr::negation(BoolExpr child) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Not, false, {}, {std::move(child)}}));
}

BoolExpr BoolExpr::conjunction(BoolExpr a, BoolExpr b) {
  return BoolExpr(
      std::make_shared<const Node>(Node{Kind::And, false, {}, {std::move(a), std::move(b)}}));
}

BoolExpr BoolExpr::disjunction(BoolExpr a, BoolExpr b) {
  return BoolExpr(
      std::make_shared<const Node>(Node{Kind::Or, false, {}, {std::move(a), std::move(b)}}));
}

BoolExpr BoolExpr::all_of(std::vector<BoolExpr> items) {
  if (items.empty()) return constant(true);
  BoolExpr acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = conjunction(acc, items[i]);
  return acc;
}

BoolExpr BoolExpr::any_of(std::vector<BoolExpr> items) {
  if (items.empty()) return constant(false);
  BoolExpr acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = disjunction(acc, items[i]);
  return acc;
}

BoolExpr::Kind BoolExpr::kind() const noexcept { return node_->kind; }
bool BoolExpr::value() const noexcept { return node_->value; }
const std::string& BoolExpr::name() const noexcept { return node_->name; }
const BoolExpr& BoolExpr::left() const noexcept { return node_->kids[0]; }
const BoolExpr& BoolExpr::right() const noexcept { return node_->kids[1]; }

std::string BoolExpr::to_string() const {
  switch (kind()) {
    case Kind::Constant:
      return value() ? "true" : "false";
    case Kind::Variable:
      return name();
    case Kind::Not:
      return "!" + (child().kind() == Kind::And || child().kind() == Kind::Or
                        ? "(" + child().to_string() + ")"
                        : child().to_string());
    case Kind::And:
      return "(" + left().to_string() + " & " + right().to_string() + ")";
    case Kind::Or:
      return "(" + left().to_string() + " | " + right().to_string() + ")";
  }
  return "?";
}

bool eval(const BoolExpr& p, const BinaryValuation& v) {
  switch (p.kind()) {
    case BoolExpr::Kind::Constant:
      return p.value();
    case BoolExpr::Kind::Variable: {
      auto it = v.find(p.name());
      if (it == v.end()) throw DomainError(p.name());
      return it->second;
    }
    case BoolExpr::Kind::Not:
      return !eval(p.child(), v);
    case BoolExpr::Kind::And:
      return eval(p.left(), v) && eval(p.right(), v);
    case BoolExpr::Kind::Or:
      return eval(p.left(), v) || eval(p.right(), v);
  }
  return false;
}

namespace {

void collect(const BoolExpr& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case BoolExpr::Kind::Constant:
      return;
    case BoolExpr::Kind::Variable:
      out.insert(p.name());
      return;
    case BoolExpr::Kind::Not:
      collect(p.child(), out);
      return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
      collect(p.left(), out);
      collect(p.right(), out);
      return;
  }
}

BoolExpr s_of(const Expr& p, bool want_true);

BoolExpr s_list(const Expr& p, bool want_true) {
  // Conjunction is T when all parts are, F when any part is; dually for |.
  const bool all = (p.kind() == Expr::Kind::And) == want_true;
  std::vector<BoolExpr> parts;
  for (const Expr& c : p.children()) parts.push_back(s_of(c, want_true));
  return all ? BoolExpr::all_of(std::move(parts)) : BoolExpr::any_of(std::move(parts));
}

BoolExpr s_of(const Expr& p, bool want_true) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return BoolExpr::constant(p.value() == (want_true ? TriValue::T : TriValue::F));
    case Expr::Kind::Variable:
      return want_true ? BoolExpr::variable(p.name())
                       : BoolExpr::negation(BoolExpr::variable(p.name()));
    case Expr::Kind::Not:
      return s_of(p.child(), !want_true);
    case Expr::Kind::And:
    case Expr::Kind::Or:
      return s_list(p, want_true);
  }
  return BoolExpr::constant(false);
}

}  // namespace

std::set<std::string> vars(const BoolExpr& p) {
  std::set<std::string> out;
  collect(p, out);
  return out;
}

BoolExpr s_true(const Expr& p) { return s_of(p, true); }
BoolExpr s_false(const Expr& p) { return s_of(p, false); }

BoolExpr stable_condition(const Allocator& e) {
  std::vector<BoolExpr> parts;
  for (const Expr& x : e.exprs()) parts.push_back(BoolExpr::disjunction(s_true(x), s_false(x)));
  return BoolExpr::all_of(std::move(parts));
}

// ---------------------------------------------------------------------------

Cnf::Cnf(const BoolExpr& p) {
  for (const auto& x : argalloc::vars(p)) {
    originals_.push_back(x);
    index_.emplace(x, ++num_vars_);
  }
  clauses_.push_back({encode(p)});
}

int Cnf::encode(const BoolExpr& p) {
  switch (p.kind()) {
    case BoolExpr::Kind::Constant: {
      const int g = ++num_vars_;
      clauses_.push_back({p.value() ? g : -g});
      return g;
    }
    case BoolExpr::Kind::Variable:
      return index_.at(p.name());
    case BoolExpr::Kind::Not:
      return -encode(p.child());
    case BoolExpr::Kind::And: {
      const int a = encode(p.left());
      const int b = encode(p.right());
      const int g = ++num_vars_;
      clauses_.push_back({-g, a});
      clauses_.push_back({-g, b});
      clauses_.push_back({g, -a, -b});
      return g;
    }
    case BoolExpr::Kind::Or: {
      const int a = encode(p.left());
      const int b = encode(p.right());
      const int g = ++num_vars_;
      clauses_.push_back({g, -a});
      clauses_.push_back({g, -b});
      clauses_.push_back({-g, a, b});
      return g;
    }
  }
  return 0;
}

std::string Cnf::to_dimacs() const {
  std::string out;
  for (std::size_t i = 0; i < originals_.size(); ++i) {
    out += "c " + std::to_string(i + 1) + " " + originals_[i] + "\n";
  }
  out += "p cnf " + std::to_string(num_vars_) + " " + std::to_string(clauses_.size()) + "\n";
  for (const auto& c : clauses_) {
    for (int lit : c) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

namespace {

class AllModelsSearch {
 public:
  AllModelsSearch(const BoolExpr& p, const std::vector<std::string>& domain)
      : formula_(p), cnf_(p), domain_(domain) {
    for (const auto& x : domain_) {
      int id = 0;
      for (std::size_t i = 0; i < cnf_.originals().size(); ++i) {
        if (cnf_.originals()[i] == x) id = static_cast<int>(i) + 1;
      }
      ids_.push_back(id);
    }
  }

  std::vector<BinaryValuation> run() {
    std::vector<signed char> assign(static_cast<std::size_t>(cnf_.num_vars()) + 1, 0);
    if (propagate(assign)) search(0, assign);
    return std::move(models_);
  }

 private:
  static signed char value_of(const std::vector<signed char>& a, int lit) {
    const signed char v = a[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit < 0 ? static_cast<signed char>(-v) : v;
  }

  // Unit propagation to a fixpoint; false on a falsified clause.
  bool propagate(std::vector<signed char>& a) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& clause : cnf_.clauses()) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          const signed char v = value_of(a, lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          a[static_cast<std::size_t>(last < 0 ? -last : last)] = last < 0 ? -1 : 1;
          changed = true;
        }
      }
    }
    return true;
  }

  void search(std::size_t depth, const std::vector<signed char>& a) {
    if (depth == domain_.size()) {
      BinaryValuation v;
      for (std::size_t i = 0; i < domain_.size(); ++i) v[domain_[i]] = current_[i];
      if (eval(formula_, v)) models_.push_back(std::move(v));
      return;
    }
    const int id = ids_[depth];
    current_.resize(domain_.size());
    for (bool value : {false, true}) {
      if (id != 0) {
        const signed char forced = a[static_cast<std::size_t>(id)];
        if (forced != 0 && (forced > 0) != value) continue;
        std::vector<signed char> next = a;
        next[static_cast<std::size_t>(id)] = value ? 1 : -1;
        if (!propagate(next)) continue;
        current_[depth] = value;
        search(depth + 1, next);
      } else {
        current_[depth] = value;
        search(depth + 1, a);
      }
    }
  }

  const BoolExpr& formula_;
  Cnf cnf_;
  const std::vector<std::string>& domain_;
  std::vector<int> ids_;
  std::vector<bool> current_;
  std::vector<BinaryValuation> models_;
};

}  // namespace

std::vector<BinaryValuation> all_models(const BoolExpr& p, const std::set<std::string>& domain,
                                        SatBackend backend, int max_brute_vars) {
  for (const auto& x : vars(p)) {
    if (!domain.count(x)) throw UsageError("model domain misses variable '" + x + "'");
  }
  const std::vector<std::string> names(domain.begin(), domain.end());
  const bool brute = backend == SatBackend::brute_force ||
                     (backend == SatBackend::automatic &&
                      static_cast<int>(names.size()) <= max_brute_vars);
  if (!brute) return AllModelsSearch(p, names).run();

  if (static_cast<int>(names.size()) > max_brute_vars) {
    throw CapacityError("brute-force model search over " + std::to_string(names.size()) +
                        " variables exceeds the bound of " + std::to_string(max_brute_vars));
  }
  std::vector<BinaryValuation> out;
  const std::size_t k = names.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    BinaryValuation v;
    // The first variable is the most significant bit.
    for (std::size_t i = 0; i < k; ++i) v[names[i]] = (bits >> (k - 1 - i)) & 1u;
    if (eval(p, v)) out.push_back(std::move(v));
  }
  return out;
}

std::set<Labeling> enumerate_stable(const Network& n, const Allocator& e, SatBackend backend,
                                    const Bounds& bounds) {
  const Allocator aligned = e.reordered(n.positions());
  const auto models = all_models(stable_condition(aligned), aligned.allocation_vars(), backend,
                                 bounds.max_sat_brute_vars);
  std::set<Labeling> out;
  for (const auto& m : models) {
    Valuation v;
    for (const auto& [x, b] : m) v.set(x, b ? TriValue::T : TriValue::F);
    out.insert(allocator_to_labeling(instantiate(aligned, v)));
  }
  return out;
}

}  // namespace argalloc
