#include <doctest.h>

#include "argalloc/error.hpp"
#include "support.hpp"

using namespace argalloc;
using namespace testsupport;

namespace {

Expr P(const char* s) { return parse_expression(s); }
const Expr kT = Expr::constant(TriValue::T);
const Expr kU = Expr::constant(TriValue::U);
const Expr kF = Expr::constant(TriValue::F);

EquationSet equations_of(const Network& n) {
  std::vector<VariableEquation> eqs;
  for (std::size_t i = 0; i < n.args().size(); ++i) eqs.push_back({n.args()[i], n.condition(i)});
  return EquationSet(std::move(eqs));
}

std::set<std::string> entangled(const EquationSet& s) {
  std::set<std::string> out;
  const auto rv = s.rhs_vars();
  for (const auto& l : s.lhs_vars()) {
    if (rv.count(l)) out.insert(l);
  }
  return out;
}

void check_quad_invariants(const Expr& g, const std::string& x, const QuadDecomposition& d,
                           bool exact_vars) {
  for (const Expr* part : {&d.p, &d.n, &d.c, &d.m}) CHECK_FALSE(mentions(*part, x));
  std::set<std::string> got;
  for (const Expr* part : {&d.p, &d.n, &d.c, &d.m}) got.merge(vars(*part));
  std::set<std::string> want = vars(g);
  want.erase(x);
  if (exact_vars) {
    CHECK(got == want);
  } else {
    CHECK(std::includes(want.begin(), want.end(), got.begin(), got.end()));
  }
  CHECK(ref_equivalent(d.recompose(x), g));
}

}  // namespace

TEST_SUITE("eq_solver") {

TEST_CASE("equation sets reject duplicate left sides") {
  CHECK_THROWS_AS(EquationSet({{"a", kT}, {"a", kF}}), UsageError);
  EquationSet s({{"a", P("!b")}, {"b", P("!a")}});
  CHECK(s.contains("a"));
  CHECK(s.at("b").rhs == P("!a"));
  CHECK_THROWS_AS((void)s.at("c"), UsageError);
  CHECK(s.rhs_vars() == std::set<std::string>{"a", "b"});
  s.replace({"a", kU});
  CHECK(s.at("a").rhs == kU);
  CHECK_THROWS_AS(s.replace({"z", kU}), UsageError);
}

TEST_CASE("decompose examples") {
  const auto x = decompose(P("X"), "X");
  CHECK(x.p == kT);
  CHECK(x.n == kF);
  CHECK(x.c == kF);
  CHECK(x.m == kF);

  const auto nx = decompose(P("!X"), "X");
  CHECK(nx.p == kF);
  CHECK(nx.n == kT);
  CHECK(nx.c == kF);
  CHECK(nx.m == kF);

  const auto ux = decompose(P("U & X"), "X");
  CHECK(ux.p == kU);
  CHECK(ux.n == kF);
  CHECK(ux.c == kF);
  CHECK(ux.m == kF);
  CHECK(ref_equivalent(ux.recompose("X"), P("U & X")));

  const auto contra = decompose(P("X & !X"), "X");
  CHECK(classify_constant(contra.c) == ConstantClass::EquivT);
  CHECK(ref_equivalent(contra.recompose("X"), P("X & !X")));
}

TEST_CASE("decomposition invariants on random expressions") {
  ExprGen gen(606, 4);
  for (int i = 0; i < 1000; ++i) {
    const Expr g = gen(4);
    const std::string x = gen.names()[i % 4];
    check_quad_invariants(g, x, decompose(g, x, false), true);
    check_quad_invariants(g, x, decompose(g, x, true), false);
  }
}

TEST_CASE("refine examples") {
  FreshSupply s;
  const auto a = refine({"X", P("U & X")}, s);
  CHECK(a.lhs == "X");
  CHECK(a.rhs == P("U & _v1"));
  CHECK(s.drawn() == 1);

  const auto b = refine({"X", P("!X")}, s);
  CHECK(b.rhs == kU);
  CHECK(s.drawn() == 1);

  const auto c = refine({"X", P("n & !X")}, s);
  CHECK(c.rhs == P("U & n"));

  const VariableEquation free{"X", P("a | !b")};
  CHECK(refine(free, s) == free);
  CHECK(s.drawn() == 1);

  const auto d = refine({"X", P("!X")}, s, RefineOptions{false});
  CHECK(d.rhs == kU);
  CHECK(s.drawn() == 2);
}

TEST_CASE("refined equations reproduce every row of the constant table") {
  for (TriValue p : kTriValues) {
    for (TriValue n : kTriValues) {
      for (TriValue c : kTriValues) {
        for (TriValue m : kTriValues) {
          const QuadDecomposition q{Expr::constant(p), Expr::constant(n), Expr::constant(c),
                                    Expr::constant(m)};
          const Expr g = q.recompose("X");
          std::set<TriValue> solutions;
          for (TriValue xv : kTriValues) {
            if (ref_eval(g, {{"X", xv}}) == xv) solutions.insert(xv);
          }
          CHECK_FALSE(solutions.empty());
          for (bool elide : {true, false}) {
            FreshSupply s;
            const auto r = refine({"X", g}, s, RefineOptions{elide});
            CHECK_FALSE(mentions(r.rhs, "X"));
            std::set<TriValue> reached;
            for (TriValue xv : kTriValues) {
              reached.insert(ref_eval(r.rhs, {{"_v1", xv}}));
            }
            CHECK(reached == solutions);
          }
        }
      }
    }
  }
}

TEST_CASE("refine keeps the other variables") {
  ExprGen gen(31, 4);
  for (int i = 0; i < 500; ++i) {
    const Expr g = gen(4);
    const std::string x = gen.names()[0];
    FreshSupply s;
    const auto r = refine({x, g}, s);
    std::set<std::string> before = vars(g);
    before.erase(x);
    std::set<std::string> after = vars(r.rhs);
    after.erase("_v1");
    CHECK_FALSE(mentions(r.rhs, x));
    CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
  }
}

TEST_CASE("the unsimplified refined form keeps the other variables exactly") {
  ExprGen gen(32, 4);
  for (int i = 0; i < 500; ++i) {
    const Expr g = gen(4);
    const std::string x = gen.names()[1];
    const auto d = decompose(g, x, false);
    const Expr fresh = Expr::variable("_v1");
    const Expr raw = Expr::disjunction(
        {d.p & fresh, kU & (d.n | (d.c & fresh)), d.m});
    std::set<std::string> before = vars(g);
    before.erase(x);
    std::set<std::string> after = vars(raw);
    after.erase("_v1");
    CHECK(before == after);
  }
}

TEST_CASE("substitute_set examples") {
  const EquationSet s({{"A1", P("!A2")}, {"A2", P("!A1")}});
  const EquationSet r = substitute_set(s, {"A1", P("!A2")});
  CHECK(r.at("A1").rhs == P("!A2"));
  CHECK(ref_equivalent(r.at("A2").rhs, P("!!A2")));

  const EquationSet one({{"X", P("U & X")}});
  FreshSupply supply;
  const auto refined = refine(one.at("X"), supply);
  const EquationSet solved = substitute_set(one, refined);
  CHECK(solved.size() == 1);
  CHECK(solved.at("X") == refined);

  const EquationSet three({{"a", P("!b")}, {"b", P("c")}, {"c", P("T")}});
  const EquationSet after = substitute_set(three, {"c", kT});
  CHECK(after.at("a") == three.at("a"));
  CHECK(after.at("b").rhs == kT);

  CHECK_THROWS_AS(substitute_set(three, {"z", kT}), UsageError);
  CHECK_THROWS_AS(substitute_set(three, {"a", P("!a")}), UsageError);
}

TEST_CASE("each step removes its own variable from the entangled set") {
  for (const auto& f : corpus(100)) {
    const Network n = af_to_network(f);
    EquationSet s = equations_of(n);
    FreshSupply supply;
    for (const auto& x : n.args()) {
      auto allowed = entangled(s);
      allowed.erase(x);
      s = substitute_set(s, refine(s.at(x), supply));
      const auto now = entangled(s);
      CHECK_FALSE(now.count(x));
      CHECK(std::includes(allowed.begin(), allowed.end(), now.begin(), now.end()));
    }
    CHECK(entangled(s).empty());
  }
}

TEST_CASE("solve examples") {
  const Network f3 = af_to_network(two_pairs());
  const Allocator e = solve(f3);
  CHECK(equivalent_up_to_renaming(e.exprs(),
                                  parse_all({"!a2", "a2", "!a4", "a4", "!a2 & !a4"})));
  CHECK(arity(e) == 2);

  const Network t1 = af_to_network(mutual_chain());
  const Allocator e1 = solve(t1);
  CHECK(instantiation_set(e1) == std::set<Labeling>{Labeling{{Label::in, Label::out, Label::out,
                                                              Label::in}},
                                                     Labeling{{Label::undec, Label::undec,
                                                               Label::undec, Label::undec}},
                                                     Labeling{{Label::out, Label::in, Label::out,
                                                               Label::in}}});

  const Allocator self = solve(af_to_network(make_af({"1"}, {{"1", "1"}})));
  CHECK(self.at("1") == kU);
}

TEST_CASE("solve rejects bad orders and reserved names") {
  const Network t1 = af_to_network(mutual_chain());
  FreshSupply s;
  CHECK_THROWS_AS(solve(t1, {"1", "2", "3"}, s), UsageError);
  CHECK_THROWS_AS(solve(t1, {"1", "2", "3", "3"}, s), UsageError);
  CHECK_THROWS_AS(solve(t1, {"1", "2", "3", "9"}, s), UsageError);
  const Network bad({"_v1"}, {kT});
  CHECK_THROWS_AS(solve(bad), NamespaceError);
}

TEST_CASE("solve is general on the corpus in input order") {
  for (const auto& f : corpus(80)) {
    const Network n = af_to_network(f);
    const Allocator e = solve(n);
    CHECK(is_general(n, e));
    for (const auto& v : e.allocation_vars()) CHECK_FALSE(n.contains(v));
  }
}

TEST_CASE("solve is deterministic") {
  for (const auto& f : corpus(30)) {
    const Network n = af_to_network(f);
    const Allocator a = solve(n);
    const Allocator b = solve(n);
    CHECK(a.names() == b.names());
    CHECK(a.exprs() == b.exprs());
  }
}

TEST_CASE("trace reports every step") {
  const Network f3 = af_to_network(two_pairs());
  std::vector<std::string> seen;
  SolveOptions opts;
  opts.trace = [&](const SolveStep& step) {
    CHECK(step.index == seen.size());
    CHECK(step.refined.lhs == step.variable);
    CHECK(step.after.at(step.variable) == step.refined);
    seen.push_back(step.variable);
  };
  (void)solve(f3, opts);
  CHECK(seen == numbered(5));
}

TEST_CASE("turning elision off keeps the allocator general") {
  for (const auto& f : corpus(40)) {
    const Network n = af_to_network(f);
    FreshSupply s1, s2;
    SolveOptions plain;
    plain.refine.elide = false;
    const Allocator a = solve(n, n.args(), s1);
    const Allocator b = solve(n, n.args(), s2, plain);
    CHECK(instantiation_set(a) == instantiation_set(b));
    CHECK(is_complete_allocator(n, b));
    CHECK(s2.drawn() >= s1.drawn());
    CHECK(arity(a) <= arity(b));
  }
}

TEST_CASE("fresh supply") {
  FreshSupply s;
  s.avoid("_v2");
  CHECK(s.draw() == "_v1");
  CHECK(s.draw() == "_v3");
  CHECK(s.drawn() == 2);
  CHECK(s.owns("_v7"));
  CHECK_FALSE(s.owns("_vx"));
  CHECK_FALSE(s.owns("_b1_v1"));

  FreshSupply b = FreshSupply::for_block(3);
  CHECK(b.prefix() == "_b3_v");
  CHECK(b.draw() == "_b3_v1");

  std::set<std::string> names;
  FreshSupply t;
  for (int i = 0; i < 100; ++i) names.insert(t.draw());
  CHECK(names.size() == 100);

  CHECK(is_reserved_name("_v1"));
  CHECK(is_reserved_name("_b2_v1"));
  CHECK_FALSE(is_reserved_name("v1"));
}

TEST_CASE("extend_solution examples") {
  const Network f3 = af_to_network(two_pairs());
  FreshSupply supply;
  const EquationSet solved = solve_equations(equations_of(f3), f3.args(), supply);
  const Valuation ext = extend_solution(solved, {{"_v1", TriValue::T}, {"_v2", TriValue::T}});
  const std::vector<TriValue> want = {TriValue::F, TriValue::T, TriValue::F, TriValue::T,
                                      TriValue::F};
  for (std::size_t i = 0; i < 5; ++i) CHECK(ext.at(f3.args()[i]) == want[i]);

  Labeling l;
  for (const auto& a : f3.args()) l.labels.push_back(to_label(ext.at(a)));
  CHECK(is_complete_labeling(f3, l));

  const Valuation vu = extend_solution(solved, Valuation::undecided({"_v1", "_v2"}));
  for (const auto& a : f3.args()) CHECK(vu.at(a) == TriValue::U);

  const Valuation v{{"q", TriValue::F}};
  CHECK(extend_solution(EquationSet{}, v) == v);

  CHECK_THROWS_AS(extend_solution(equations_of(f3), {}), UsageError);
}

TEST_CASE("distinct valuations extend to distinct solutions") {
  const Network f3 = af_to_network(two_pairs());
  FreshSupply supply;
  const EquationSet solved = solve_equations(equations_of(f3), f3.args(), supply);
  std::set<std::vector<TriValue>> seen;
  for_each_valuation({"_v1", "_v2"}, [&](const auto& m) {
    const Valuation ext = extend_solution(solved, to_valuation(m));
    std::vector<TriValue> row;
    for (const auto& [k, x] : ext.entries()) row.push_back(x);
    seen.insert(row);
  });
  CHECK(seen.size() == 9);
}

TEST_CASE("arity and order examples") {
  const Network t1 = af_to_network(mutual_chain());
  CHECK(arity(solve(t1)) == 1);

  const Network ex = af_to_network(order_example());
  FreshSupply s1, s2;
  CHECK(arity(solve(ex, {"1", "2", "3"}, s1)) == 2);
  const Allocator e231 = solve(ex, {"2", "3", "1"}, s2);
  CHECK(arity(e231) == 1);
  CHECK(equivalent_up_to_renaming(e231.exprs(), parse_all({"x1", "!x1", "!x1"})));
}

TEST_CASE("order strategies") {
  const Network ex = af_to_network(order_example());
  const auto best = order_strategy(ex, OrderStrategy::min_arity_exhaustive);
  FreshSupply s;
  CHECK(arity(solve(ex, best, s)) == 1);
  CHECK(order_strategy(ex, OrderStrategy::input) == ex.args());

  const Network ch = af_to_network(chain5());
  for (auto k : {OrderStrategy::input, OrderStrategy::fvs_heuristic,
                 OrderStrategy::min_arity_exhaustive}) {
    FreshSupply t;
    CHECK(arity(solve(ch, order_strategy(ch, k), t)) == 0);
  }

  const Network f3 = af_to_network(two_pairs());
  FreshSupply u;
  CHECK(arity(solve(f3, order_strategy(f3, OrderStrategy::fvs_heuristic), u)) == 2);
  FreshSupply w;
  CHECK(arity(solve(f3, order_strategy(f3, OrderStrategy::min_arity_exhaustive), w)) == 2);

  const Network nine = af_to_network(make_af(numbered(9), {}));
  CHECK_THROWS_AS(order_strategy(nine, OrderStrategy::min_arity_exhaustive), CapacityError);
}

TEST_CASE("feedback vertex set breaks every cycle") {
  for (const auto& f : corpus(100)) {
    const Network n = af_to_network(f);
    const auto fvs = feedback_vertex_set(n);
    const std::set<std::string> removed(fvs.begin(), fvs.end());
    // Kahn's algorithm on the remaining graph must consume every vertex.
    std::map<std::string, int> indeg;
    for (const auto& a : n.args()) {
      if (!removed.count(a)) indeg[a] = 0;
    }
    for (const auto& [a, d] : indeg) {
      for (const auto& b : vars(n.condition(a))) {
        if (indeg.count(b)) ++indeg[a];
      }
    }
    std::vector<std::string> ready;
    for (const auto& [a, d] : indeg) {
      if (d == 0) ready.push_back(a);
    }
    std::size_t done = 0;
    while (!ready.empty()) {
      const std::string b = ready.back();
      ready.pop_back();
      ++done;
      for (auto& [a, d] : indeg) {
        if (a != b && mentions(n.condition(a), b) && --d == 0) ready.push_back(a);
      }
    }
    CHECK(done == indeg.size());

    const auto ord = order_strategy(n, OrderStrategy::fvs_heuristic);
    CHECK(std::is_permutation(ord.begin(), ord.end(), n.args().begin(), n.args().end()));
  }
}

TEST_CASE("exhaustive order is never worse than the others") {
  for (const auto& f : corpus(40)) {
    const Network n = af_to_network(f);
    FreshSupply a, b, c;
    const auto ex = arity(solve(n, order_strategy(n, OrderStrategy::min_arity_exhaustive), a));
    CHECK(ex <= arity(solve(n, n.args(), b)));
    CHECK(ex <= arity(solve(n, order_strategy(n, OrderStrategy::fvs_heuristic), c)));
  }
}

}  // TEST_SUITE
