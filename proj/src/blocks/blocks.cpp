#include "argalloc/blocks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "argalloc/error.hpp"

namespace argalloc {

namespace {

bool has(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void check_disjoint(const std::vector<std::string>& actual,
                    const std::vector<std::string>& variable) {
  std::set<std::string> seen;
  for (const auto& x : actual) {
    if (!seen.insert(x).second) throw UsageError("argument '" + x + "' is listed twice in a block");
  }
  for (const auto& x : variable) {
    if (!seen.insert(x).second) {
      throw UsageError("'" + x + "' is listed twice or is both actual and variable in a block");
    }
  }
}

}  // namespace

Block Block::from_attacks(std::vector<std::string> actual, std::vector<std::string> variable,
                          std::vector<Attack> attacks) {
  check_disjoint(actual, variable);
  std::vector<std::vector<Expr>> negs(actual.size());
  std::set<Attack> seen;
  std::vector<Attack> kept;
  for (auto& a : attacks) {
    const auto target = std::find(actual.begin(), actual.end(), a.target);
    if (target == actual.end()) {
      throw UsageError("block attack (" + a.attacker + ", " + a.target +
                       ") does not target an actual argument");
    }
    if (!has(actual, a.attacker) && !has(variable, a.attacker)) {
      throw UsageError("block attack (" + a.attacker + ", " + a.target +
                       ") starts outside the block");
    }
    if (!seen.insert(a).second) continue;
    negs[static_cast<std::size_t>(target - actual.begin())].push_back(!Expr::variable(a.attacker));
    kept.push_back(std::move(a));
  }
  Block b;
  b.actual_ = std::move(actual);
  b.variable_ = std::move(variable);
  for (auto& n : negs) b.conditions_.push_back(Expr::all_of(std::move(n)));
  b.attacks_ = std::move(kept);
  return b;
}

Block Block::from_conditions(std::vector<std::string> actual, std::vector<std::string> variable,
                             std::vector<Expr> conditions) {
  check_disjoint(actual, variable);
  if (conditions.size() != actual.size()) {
    throw UsageError("block needs exactly one condition per actual argument");
  }
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    for (const auto& x : vars(conditions[i])) {
      if (!has(actual, x) && !has(variable, x)) {
        throw UsageError("condition of '" + actual[i] + "' mentions '" + x +
                         "', which is not in the block");
      }
    }
  }
  Block b;
  b.actual_ = std::move(actual);
  b.variable_ = std::move(variable);
  b.conditions_ = std::move(conditions);
  return b;
}

bool Block::is_actual(std::string_view name) const { return has(actual_, name); }
bool Block::is_variable(std::string_view name) const { return has(variable_, name); }

Network Block::network() const { return Network(actual_, conditions_, variable_); }

Block block_of(const ArgumentationFramework& f, const std::vector<std::string>& actual) {
  const std::set<std::string> inside(actual.begin(), actual.end());
  std::set<std::string> outside;
  std::vector<Attack> attacks;
  for (const auto& a : f.attacks()) {
    if (!inside.count(a.target)) continue;
    attacks.push_back(a);
    if (!inside.count(a.attacker)) outside.insert(a.attacker);
  }
  std::vector<std::string> variable;
  for (const auto& x : f.args()) {
    if (outside.count(x)) variable.push_back(x);
  }
  return Block::from_attacks(actual, std::move(variable), std::move(attacks));
}

Block block_of(const Network& n, const std::vector<std::string>& actual) {
  const std::set<std::string> inside(actual.begin(), actual.end());
  std::set<std::string> outside;
  std::vector<Expr> conditions;
  for (const auto& a : actual) {
    conditions.push_back(n.condition(a));
    for (const auto& x : vars(conditions.back())) {
      if (!inside.count(x)) outside.insert(x);
    }
  }
  std::vector<std::string> variable;
  for (const auto& x : n.positions()) {
    if (outside.count(x)) variable.push_back(x);
  }
  return Block::from_conditions(actual, std::move(variable), std::move(conditions));
}

namespace {

// Checks shared by both splitter flavours: coverage and disjointness of the
// actual sets, and variable arguments drawn from the framework.
void check_partition(const std::vector<std::string>& args, const Splitter& s,
                     SplitterReport& report) {
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };
  const std::set<std::string> all(args.begin(), args.end());
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    for (const auto& x : s.blocks[i].actual()) {
      if (!all.count(x)) fail("block " + std::to_string(i + 1) + " has unknown argument '" + x + "'");
      auto [it, fresh] = owner.emplace(x, i);
      if (!fresh) {
        fail("argument '" + x + "' is actual in blocks " + std::to_string(it->second + 1) +
             " and " + std::to_string(i + 1));
      }
    }
    for (const auto& x : s.blocks[i].variable()) {
      if (!all.count(x)) {
        fail("block " + std::to_string(i + 1) + " has unknown variable argument '" + x + "'");
      }
    }
  }
  for (const auto& x : args) {
    if (!owner.count(x)) fail("argument '" + x + "' is not actual in any block");
  }
}

}  // namespace

SplitterReport validate_splitter(const ArgumentationFramework& f, const Splitter& s) {
  SplitterReport report;
  check_partition(f.args(), s, report);
  const std::set<Attack> expected(f.attacks().begin(), f.attacks().end());
  std::set<Attack> covered;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const auto& attacks = s.blocks[i].attacks();
    if (!attacks) {
      report.valid = false;
      report.violations.push_back("block " + std::to_string(i + 1) + " has no attack list");
      continue;
    }
    for (const auto& a : *attacks) {
      if (!expected.count(a)) {
        report.valid = false;
        report.violations.push_back("block " + std::to_string(i + 1) + " has attack (" +
                                    a.attacker + ", " + a.target +
                                    ") that is not in the framework");
      }
      covered.insert(a);
    }
  }
  for (const auto& a : expected) {
    if (!covered.count(a)) {
      report.valid = false;
      report.violations.push_back("attack (" + a.attacker + ", " + a.target +
                                  ") is not in any block");
    }
  }
  return report;
}

SplitterReport validate_splitter(const Network& n, const Splitter& s) {
  SplitterReport report;
  check_partition(n.positions(), s, report);
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const Block& b = s.blocks[i];
    for (std::size_t j = 0; j < b.actual().size(); ++j) {
      const std::string& a = b.actual()[j];
      if (!n.contains(a)) continue;
      const Expr& mine = b.conditions()[j];
      const Expr& theirs = n.condition(a);
      if (!(simplify(mine) == simplify(theirs)) && !equivalent(mine, theirs)) {
        report.valid = false;
        report.violations.push_back("block " + std::to_string(i + 1) + " gives '" + a +
                                    "' a condition that differs from the network's");
      }
    }
  }
  return report;
}

Allocator solve_block(const Block& b, FreshSupply& supply, const SolveOptions& options) {
  const Network n = b.network();
  for (const auto& x : n.positions()) {
    if (is_reserved_name(x)) {
      throw NamespaceError("block argument '" + x + "' uses a reserved variable prefix");
    }
  }
  return solve(n, n.args(), supply, options);
}

Allocator solve_block(const Block& b, std::size_t block_id, const SolveOptions& options) {
  FreshSupply supply = FreshSupply::for_block(block_id);
  return solve_block(b, supply, options);
}

Block compose_blocks(const Block& b1, const Block& b2) {
  for (const auto& x : b2.actual()) {
    if (b1.is_actual(x)) throw UsageError("blocks share actual argument '" + x + "'");
  }
  std::vector<std::string> actual = b1.actual();
  actual.insert(actual.end(), b2.actual().begin(), b2.actual().end());
  std::vector<std::string> variable;
  for (const auto* b : {&b1, &b2}) {
    for (const auto& x : b->variable()) {
      if (!has(actual, x) && !has(variable, x)) variable.push_back(x);
    }
  }
  if (b1.attacks() && b2.attacks()) {
    std::vector<Attack> attacks = *b1.attacks();
    attacks.insert(attacks.end(), b2.attacks()->begin(), b2.attacks()->end());
    return Block::from_attacks(std::move(actual), std::move(variable), std::move(attacks));
  }
  std::vector<Expr> conditions = b1.conditions();
  conditions.insert(conditions.end(), b2.conditions().begin(), b2.conditions().end());
  return Block::from_conditions(std::move(actual), std::move(variable), std::move(conditions));
}

namespace {

const std::string& bare_variable(const Allocator& e, const std::string& v) {
  const Expr& x = e.at(v);
  if (!x.is_variable()) {
    throw ShapeError("variable argument '" + v + "' is not allocated a bare variable: " + x.text());
  }
  return x.name();
}

}  // namespace

ComposedBlock compose_allocators(const Block& b1, const Allocator& e1, const Block& b2,
                                 const Allocator& e2, FreshSupply& supply,
                                 const SolveOptions& options) {
  Block composed = compose_blocks(b1, b2);

  std::set<std::string> shared_vars;
  for (const auto& v : b1.variable()) {
    if (!b2.is_variable(v)) continue;
    const std::string& n1 = bare_variable(e1, v);
    if (n1 != bare_variable(e2, v)) {
      throw UsageError("shared variable argument '" + v + "' is allocated different variables");
    }
    shared_vars.insert(n1);
  }
  const std::set<std::string> av1 = e1.allocation_vars();
  const std::set<std::string> av2 = e2.allocation_vars();
  for (const auto& x : av1) {
    if (av2.count(x) && !shared_vars.count(x)) {
      throw NamespaceError("allocation variable '" + x + "' occurs in both allocators");
    }
  }

  // V = E2(V) for variables of b1 defined in b2, and the converse.
  std::vector<VariableEquation> cross;
  for (const auto& v : b1.variable()) {
    if (b2.is_actual(v)) cross.push_back({bare_variable(e1, v), e2.at(v)});
  }
  for (const auto& v : b2.variable()) {
    if (b1.is_actual(v)) cross.push_back({bare_variable(e2, v), e1.at(v)});
  }
  std::vector<std::string> order;
  for (const auto& eq : cross) order.push_back(eq.lhs);
  supply.avoid_all(av1);
  supply.avoid_all(av2);
  const EquationSet solved = solve_equations(EquationSet(std::move(cross)), order, supply, options);

  std::map<std::string, Expr, std::less<>> replacements;
  for (const auto& eq : solved.equations()) replacements.emplace(eq.lhs, eq.rhs);

  std::vector<std::string> names;
  std::vector<Expr> exprs;
  for (const auto& x : composed.actual()) {
    const Allocator& src = b1.is_actual(x) ? e1 : e2;
    names.push_back(x);
    exprs.push_back(simplify(substitute(src.at(x), replacements)));
  }
  for (const auto& x : composed.variable()) {
    const Allocator& src = b1.is_variable(x) ? e1 : e2;
    names.push_back(x);
    exprs.push_back(simplify(substitute(src.at(x), replacements)));
  }
  return {std::move(composed), Allocator(std::move(names), std::move(exprs))};
}

Allocator compose_splitter(const Network& n, const Splitter& s, const SolveOptions& options) {
  if (!n.inputs().empty()) throw UsageError("splitter composition needs a network without inputs");
  const SplitterReport report = validate_splitter(n, s);
  if (!report) throw UsageError("invalid splitter: " + report.violations.front());
  if (s.blocks.empty()) return Allocator();

  const std::size_t m = s.blocks.size();
  ComposedBlock acc{s.blocks[0], solve_block(s.blocks[0], 1, options)};
  for (std::size_t i = 1; i < m; ++i) {
    const Allocator next = solve_block(s.blocks[i], i + 1, options);
    FreshSupply supply = FreshSupply::for_block(m + i);
    acc = compose_allocators(acc.block, acc.allocator, s.blocks[i], next, supply, options);
  }
  return acc.allocator.reordered(n.args());
}

Allocator compose_splitter(const ArgumentationFramework& f, const Splitter& s,
                           const SolveOptions& options) {
  const SplitterReport report = validate_splitter(f, s);
  if (!report) throw UsageError("invalid splitter: " + report.violations.front());
  return compose_splitter(af_to_network(f), s, options);
}

Influence pairwise_influence(const Network& n, const std::string& a, const std::string& b) {
  if (a == b) throw UsageError("influence needs two distinct arguments");
  if (!n.contains(a) || !n.contains(b)) throw UsageError("influence pair must name arguments");
  if (!n.inputs().empty()) throw UsageError("influence needs a network without inputs");

  std::vector<std::string> rest;
  for (const auto& x : n.args()) {
    if (x != a && x != b) rest.push_back(x);
  }
  std::vector<Expr> conditions;
  for (const auto& x : rest) conditions.push_back(n.condition(x));
  const Block others = Block::from_conditions(rest, {a, b}, std::move(conditions));
  const Allocator e = solve_block(others, 1);

  std::map<std::string, Expr, std::less<>> replacements;
  for (const auto& x : rest) replacements.emplace(x, e.at(x));
  FreshSupply supply;
  supply.avoid_all(e.allocation_vars());
  const VariableEquation ra =
      refine({a, simplify(substitute(n.condition(a), replacements))}, supply);
  const VariableEquation rb =
      refine({b, simplify(substitute(n.condition(b), replacements))}, supply);
  return {ra.rhs, rb.rhs};
}

}  // namespace argalloc
