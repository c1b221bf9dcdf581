#include "argalloc/framework.hpp"

#include <algorithm>

#include "argalloc/detail/truth_table.hpp"
#include "argalloc/error.hpp"

namespace argalloc {

namespace {

void index_names(const std::vector<std::string>& names,
                 std::unordered_map<std::string, std::size_t>& index, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!is_identifier(names[i])) {
      throw UsageError(std::string("invalid ") + what + " name '" + names[i] + "'");
    }
    if (!index.emplace(names[i], i).second) {
      throw UsageError(std::string("duplicate ") + what + " '" + names[i] + "'");
    }
  }
}

}  // namespace

ArgumentationFramework::ArgumentationFramework(std::vector<std::string> args,
                                               std::vector<Attack> attacks)
    : args_(std::move(args)) {
  index_names(args_, index_, "argument");
  std::set<Attack> seen;
  for (auto& a : attacks) {
    if (!contains(a.attacker) || !contains(a.target)) {
      throw UsageError("attack (" + a.attacker + ", " + a.target +
                       ") references an undeclared argument");
    }
    if (seen.insert(a).second) attacks_.push_back(std::move(a));
  }
}

std::vector<std::string> ArgumentationFramework::attackers_of(std::string_view target) const {
  std::vector<std::string> out;
  for (const auto& a : attacks_) {
    if (a.target == target) out.push_back(a.attacker);
  }
  return out;
}

Network::Network(std::vector<std::string> args, std::vector<Expr> conditions,
                 std::vector<std::string> inputs)
    : args_(std::move(args)), conditions_(std::move(conditions)), inputs_(std::move(inputs)) {
  if (args_.size() != conditions_.size()) {
    throw UsageError("network needs exactly one condition per argument");
  }
  index_names(args_, index_, "argument");
  std::unordered_map<std::string, std::size_t> input_index;
  index_names(inputs_, input_index, "input");
  for (const auto& x : inputs_) {
    if (contains(x)) throw UsageError("'" + x + "' is both an argument and an input");
  }
  for (std::size_t i = 0; i < args_.size(); ++i) {
    for (const auto& x : vars(conditions_[i])) {
      if (!contains(x) && !input_index.count(x)) {
        throw UsageError("condition of '" + args_[i] + "' mentions undeclared '" + x + "'");
      }
    }
  }
}

const Expr& Network::condition(std::string_view arg) const { return conditions_[index_of(arg)]; }

std::size_t Network::index_of(std::string_view arg) const {
  auto it = index_.find(std::string(arg));
  if (it == index_.end()) throw UsageError("unknown argument '" + std::string(arg) + "'");
  return it->second;
}

std::vector<std::string> Network::positions() const {
  std::vector<std::string> out = args_;
  out.insert(out.end(), inputs_.begin(), inputs_.end());
  return out;
}

bool Network::is_attack_shaped() const {
  auto negated_name = [](const Expr& e) {
    return e.kind() == Expr::Kind::Not && e.child().is_variable();
  };
  for (const Expr& c : conditions_) {
    if (c.is_constant(TriValue::T) || negated_name(c)) continue;
    if (c.kind() != Expr::Kind::And) return false;
    for (const Expr& k : c.children()) {
      if (!negated_name(k)) return false;
    }
  }
  return true;
}

Network af_to_network(const ArgumentationFramework& f) {
  std::vector<Expr> conditions;
  conditions.reserve(f.args().size());
  for (const auto& a : f.args()) {
    std::vector<Expr> negs;
    for (const auto& b : f.attackers_of(a)) negs.push_back(!Expr::variable(b));
    conditions.push_back(Expr::all_of(std::move(negs)));
  }
  return Network(f.args(), std::move(conditions));
}

std::string_view label_name(Label l) noexcept {
  switch (l) {
    case Label::in:
      return "in";
    case Label::undec:
      return "undec";
    case Label::out:
      return "out";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view s) noexcept {
  if (s == "in") return Label::in;
  if (s == "out") return Label::out;
  if (s == "undec") return Label::undec;
  return std::nullopt;
}

std::string Labeling::to_string(const std::vector<std::string>& positions) const {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += (i < positions.size() ? positions[i] : "?") + ":" + std::string(label_name(labels[i]));
  }
  return out + "}";
}

bool Labeling::has_undec() const noexcept {
  return std::find(labels.begin(), labels.end(), Label::undec) != labels.end();
}

Allocator::Allocator(std::vector<std::string> names, std::vector<Expr> exprs)
    : names_(std::move(names)), exprs_(std::move(exprs)) {
  if (names_.size() != exprs_.size()) throw UsageError("allocator needs one expression per name");
  index_names(names_, index_, "allocator entry");
}

const Expr& Allocator::at(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UsageError("allocator has no entry '" + std::string(name) + "'");
  return exprs_[it->second];
}

std::set<std::string> Allocator::allocation_vars() const {
  std::set<std::string> out;
  for (const Expr& e : exprs_) out.merge(vars(e));
  return out;
}

std::size_t Allocator::node_count() const {
  std::size_t n = 0;
  for (const Expr& e : exprs_) n += e.size();
  return n;
}

Allocator Allocator::reordered(const std::vector<std::string>& names) const {
  if (names.size() != names_.size()) throw UsageError("allocator name sets differ");
  std::vector<Expr> exprs;
  exprs.reserve(names.size());
  for (const auto& n : names) exprs.push_back(at(n));
  return Allocator(names, std::move(exprs));
}

Allocator Allocator::simplified() const {
  std::vector<Expr> exprs;
  exprs.reserve(exprs_.size());
  for (const Expr& e : exprs_) exprs.push_back(simplify(e));
  return Allocator(names_, std::move(exprs));
}

std::string Allocator::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    out += names_[i] + " = " + exprs_[i].text() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_complete_labeling(const Network& n, const Labeling& l) {
  const auto positions = n.positions();
  if (l.labels.size() != positions.size()) {
    throw UsageError("labeling is not total over the network");
  }
  Valuation v;
  for (std::size_t i = 0; i < positions.size(); ++i) v.set(positions[i], to_tri(l.labels[i]));
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    if (eval(n.condition(i), v) != to_tri(l.labels[i])) return false;
  }
  return true;
}

std::vector<Labeling> enumerate_complete_labelings(const Network& n, int max_positions) {
  const auto positions = n.positions();
  if (static_cast<int>(positions.size()) > max_positions) {
    throw CapacityError("oracle over " + std::to_string(positions.size()) +
                        " positions exceeds the bound of " + std::to_string(max_positions));
  }
  detail::ValuationSpace space(positions);
  std::vector<std::uint64_t> ok(space.words(), ~std::uint64_t{0});
  if (space.size() % 64 != 0) ok.back() = (std::uint64_t{1} << (space.size() % 64)) - 1;
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    const auto agree = space.agreement(space.tabulate(n.condition(i)), space.variable(i));
    for (std::size_t w = 0; w < ok.size(); ++w) ok[w] &= agree[w];
  }
  std::vector<Labeling> out;
  detail::for_each_set_bit(ok, [&](std::size_t j) {
    Labeling l;
    l.labels.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) l.labels.push_back(to_label(space.digit(j, i)));
    out.push_back(std::move(l));
  });
  return out;
}

Labeling grounded_labeling(const Network& n) {
  if (!n.inputs().empty()) throw UsageError("grounded labeling needs a network without inputs");
  Valuation v = Valuation::undecided({n.args().begin(), n.args().end()});
  // Each round only moves undec values to in/out, so |args| + 1 rounds suffice.
  for (std::size_t round = 0; round <= n.args().size(); ++round) {
    Valuation next;
    for (std::size_t i = 0; i < n.args().size(); ++i) next.set(n.args()[i], eval(n.condition(i), v));
    if (next == v) break;
    v = std::move(next);
  }
  Labeling l;
  for (const auto& a : n.args()) l.labels.push_back(to_label(v.at(a)));
  return l;
}

Allocator labeling_to_allocator(const Network& n, const Labeling& l) {
  const auto positions = n.positions();
  if (l.labels.size() != positions.size()) throw UsageError("labeling is not total");
  std::vector<Expr> exprs;
  for (Label x : l.labels) exprs.push_back(Expr::constant(to_tri(x)));
  return Allocator(positions, std::move(exprs));
}

Labeling allocator_to_labeling(const Allocator& e) {
  Labeling l;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e.at(i).is_constant()) {
      throw ShapeError("allocator entry '" + e.names()[i] + "' is not a constant: " +
                       e.at(i).text());
    }
    l.labels.push_back(to_label(e.at(i).value()));
  }
  return l;
}

bool is_complete_allocator(const Network& n, const Allocator& e, int max_equiv_vars) {
  const Allocator aligned = e.reordered(n.positions());
  const std::set<std::string> alloc_vars = aligned.allocation_vars();
  for (const auto& a : n.args()) {
    if (alloc_vars.count(a)) {
      throw NamespaceError("allocation variable '" + a + "' collides with an argument name");
    }
  }
  std::set<std::string> seen;
  for (const auto& x : n.inputs()) {
    const Expr& ex = aligned.at(x);
    if (!ex.is_variable() || !seen.insert(ex.name()).second) return false;
  }
  std::map<std::string, Expr, std::less<>> replacements;
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    replacements.emplace(aligned.names()[i], aligned.at(i));
  }
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    if (!equivalent(aligned.at(i), substitute(n.condition(i), replacements), max_equiv_vars)) {
      return false;
    }
  }
  return true;
}

Allocator instantiate(const Allocator& e, const Valuation& v) {
  std::vector<Expr> exprs;
  exprs.reserve(e.size());
  for (const Expr& x : e.exprs()) exprs.push_back(Expr::constant(eval(x, v)));
  return Allocator(e.names(), std::move(exprs));
}

std::set<Labeling> instantiation_set(const Allocator& e, int max_vars) {
  const std::set<std::string> av = e.allocation_vars();
  if (static_cast<int>(av.size()) > max_vars) {
    throw CapacityError("instantiation over " + std::to_string(av.size()) +
                        " allocation variables exceeds the bound of " + std::to_string(max_vars));
  }
  detail::ValuationSpace space({av.begin(), av.end()});
  std::vector<detail::TriVector> tables;
  tables.reserve(e.size());
  for (const Expr& x : e.exprs()) tables.push_back(space.tabulate(x));
  std::set<Labeling> out;
  for (std::size_t j = 0; j < space.size(); ++j) {
    Labeling l;
    l.labels.reserve(tables.size());
    for (const auto& t : tables) l.labels.push_back(to_label(t.at(j)));
    out.insert(std::move(l));
  }
  return out;
}

bool is_general(const Network& n, const Allocator& e, const Bounds& bounds) {
  const Allocator aligned = e.reordered(n.positions());
  if (!is_complete_allocator(n, aligned, bounds.max_equiv_vars)) return false;
  const auto oracle = enumerate_complete_labelings(n, bounds.max_oracle_positions);
  const std::set<Labeling> expected(oracle.begin(), oracle.end());
  return instantiation_set(aligned, bounds.max_equiv_vars) == expected;
}

Allocator compose_pair_legacy(const Allocator& e1, const Allocator& e2, const Labeling& grounded,
                              const std::string& fresh) {
  if (!is_identifier(fresh)) throw UsageError("invalid variable name '" + fresh + "'");
  const Allocator e2a = e2.reordered(e1.names());
  if (grounded.labels.size() != e1.size()) throw UsageError("grounded labeling is not total");
  for (const auto& x : e1.names()) {
    if (x == fresh) throw NamespaceError("'" + fresh + "' is an argument name");
  }
  std::set<std::string> used = e1.allocation_vars();
  used.merge(e2a.allocation_vars());
  if (used.count(fresh)) throw NamespaceError("'" + fresh + "' is not fresh");

  const Expr a = Expr::variable(fresh);
  std::vector<Expr> exprs;
  for (std::size_t i = 0; i < e1.size(); ++i) {
    if (grounded.labels[i] != Label::undec) {
      exprs.push_back(e1.at(i));
      continue;
    }
    exprs.push_back(simplify(Expr::disjunction(
        {a & e1.at(i), (!a) & e2a.at(i), a & !a})));
  }
  return Allocator(e1.names(), std::move(exprs));
}

Allocator build_general_legacy(const Network& n, const Bounds& bounds) {
  if (!n.inputs().empty()) throw UsageError("legacy construction needs a network without inputs");
  const auto labelings = enumerate_complete_labelings(n, bounds.max_oracle_positions);
  const Labeling grounded = grounded_labeling(n);
  std::vector<Labeling> others;
  for (const auto& l : labelings) {
    if (l != grounded) others.push_back(l);
  }
  if (others.empty()) return labeling_to_allocator(n, grounded);

  std::set<std::string> taken(n.args().begin(), n.args().end());
  std::size_t counter = 0;
  auto fresh = [&] {
    std::string name;
    do {
      name = "_v" + std::to_string(++counter);
    } while (taken.count(name));
    taken.insert(name);
    return name;
  };

  // Two labelings still need one variable to tell them apart.
  Allocator acc = labeling_to_allocator(n, others.front());
  if (others.size() == 1) return compose_pair_legacy(acc, acc, grounded, fresh());
  for (std::size_t i = 1; i < others.size(); ++i) {
    acc = compose_pair_legacy(acc, labeling_to_allocator(n, others[i]), grounded, fresh());
  }
  return acc;
}

}  // namespace argalloc
