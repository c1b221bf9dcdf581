#pragma once

// Shared fixtures and independent reference implementations for the tests.
// Nothing here calls into the library's own oracle or solver.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "argalloc/blocks.hpp"
#include "argalloc/eq_solver.hpp"
#include "argalloc/framework.hpp"
#include "argalloc/tri_logic.hpp"

namespace testsupport {

using namespace argalloc;

inline constexpr std::uint64_t kCorpusSeed = 20240611;
inline constexpr std::size_t kCorpusSize = 200;

inline ArgumentationFramework make_af(std::vector<std::string> args,
                                      std::vector<std::pair<std::string, std::string>> edges) {
  std::vector<Attack> attacks;
  for (auto& [a, b] : edges) attacks.push_back({a, b});
  return ArgumentationFramework(std::move(args), std::move(attacks));
}

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline ArgumentationFramework mutual_chain() {
  return make_af(numbered(4), {{"1", "2"}, {"2", "1"}, {"1", "3"}, {"2", "3"}, {"3", "4"}});
}

inline ArgumentationFramework two_pairs() {
  return make_af(numbered(5),
                 {{"1", "2"}, {"2", "1"}, {"3", "4"}, {"4", "3"}, {"2", "5"}, {"4", "5"}});
}

inline ArgumentationFramework three_cycle() {
  return make_af(numbered(3), {{"1", "2"}, {"2", "3"}, {"3", "1"}});
}

inline ArgumentationFramework order_example() {
  return make_af(numbered(3), {{"1", "2"}, {"2", "1"}, {"1", "3"}, {"3", "1"}});
}

inline ArgumentationFramework chain5() {
  return make_af(numbered(5), {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}});
}

/// Two halves, each a 2-cycle feeding a third argument; the third argument of
/// one half attacks into the other.
inline ArgumentationFramework mirrored_blocks() {
  return make_af(numbered(6), {{"1", "2"},
                               {"2", "1"},
                               {"6", "2"},
                               {"1", "3"},
                               {"2", "3"},
                               {"4", "5"},
                               {"5", "4"},
                               {"3", "5"},
                               {"4", "6"},
                               {"5", "6"}});
}

/// Seeded Erdos-Renyi corpus: 3 to 7 arguments, each ordered pair of
/// distinct arguments attacks with probability 0.3.
inline std::vector<ArgumentationFramework> corpus(std::size_t size = kCorpusSize,
                                                  std::uint64_t seed = kCorpusSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count(3, 7);
  std::bernoulli_distribution edge(0.3);
  std::vector<ArgumentationFramework> out;
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t n = count(rng);
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i != j && edge(rng)) edges.push_back({std::to_string(i), std::to_string(j)});
      }
    }
    out.push_back(make_af(numbered(n), std::move(edges)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference Kleene semantics, written out as tables rather than via the
// library's ordering trick.

inline TriValue ref_not(TriValue a) {
  static const std::map<TriValue, TriValue> t = {
      {TriValue::T, TriValue::F}, {TriValue::U, TriValue::U}, {TriValue::F, TriValue::T}};
  return t.at(a);
}

inline TriValue ref_and(TriValue a, TriValue b) {
  static const std::map<std::pair<TriValue, TriValue>, TriValue> t = {
      {{TriValue::T, TriValue::T}, TriValue::T}, {{TriValue::T, TriValue::U}, TriValue::U},
      {{TriValue::T, TriValue::F}, TriValue::F}, {{TriValue::U, TriValue::T}, TriValue::U},
      {{TriValue::U, TriValue::U}, TriValue::U}, {{TriValue::U, TriValue::F}, TriValue::F},
      {{TriValue::F, TriValue::T}, TriValue::F}, {{TriValue::F, TriValue::U}, TriValue::F},
      {{TriValue::F, TriValue::F}, TriValue::F}};
  return t.at({a, b});
}

inline TriValue ref_or(TriValue a, TriValue b) {
  static const std::map<std::pair<TriValue, TriValue>, TriValue> t = {
      {{TriValue::T, TriValue::T}, TriValue::T}, {{TriValue::T, TriValue::U}, TriValue::T},
      {{TriValue::T, TriValue::F}, TriValue::T}, {{TriValue::U, TriValue::T}, TriValue::T},
      {{TriValue::U, TriValue::U}, TriValue::U}, {{TriValue::U, TriValue::F}, TriValue::U},
      {{TriValue::F, TriValue::T}, TriValue::T}, {{TriValue::F, TriValue::U}, TriValue::U},
      {{TriValue::F, TriValue::F}, TriValue::F}};
  return t.at({a, b});
}

inline TriValue ref_eval(const Expr& p, const std::map<std::string, TriValue>& v) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return p.value();
    case Expr::Kind::Variable:
      return v.at(p.name());
    case Expr::Kind::Not:
      return ref_not(ref_eval(p.child(), v));
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      const bool conj = p.kind() == Expr::Kind::And;
      TriValue acc = ref_eval(p.children()[0], v);
      for (std::size_t i = 1; i < p.children().size(); ++i) {
        const TriValue c = ref_eval(p.children()[i], v);
        acc = conj ? ref_and(acc, c) : ref_or(acc, c);
      }
      return acc;
    }
  }
  return TriValue::U;
}

/// Calls f on every valuation of `names`.
inline void for_each_valuation(const std::vector<std::string>& names,
                               const std::function<void(const std::map<std::string, TriValue>&)>& f) {
  std::map<std::string, TriValue> v;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == names.size()) {
      f(v);
      return;
    }
    for (TriValue t : kTriValues) {
      v[names[i]] = t;
      rec(i + 1);
    }
  };
  rec(0);
}

inline bool ref_equivalent(const Expr& p, const Expr& q) {
  std::set<std::string> all = vars(p);
  all.merge(vars(q));
  bool same = true;
  for_each_valuation({all.begin(), all.end()}, [&](const auto& v) {
    if (same && ref_eval(p, v) != ref_eval(q, v)) same = false;
  });
  return same;
}

// ---------------------------------------------------------------------------
// Reference complete labelings via Caminada's local conditions, not via
// condition evaluation.

using Labels = std::map<std::string, Label>;

inline std::set<Labels> ref_complete_labelings(const ArgumentationFramework& f) {
  std::set<Labels> out;
  const auto& args = f.args();
  std::vector<Label> current(args.size(), Label::in);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == args.size()) {
      Labels l;
      for (std::size_t k = 0; k < args.size(); ++k) l[args[k]] = current[k];
      for (const auto& a : args) {
        bool all_out = true;
        bool some_in = false;
        for (const auto& b : f.attackers_of(a)) {
          all_out = all_out && l[b] == Label::out;
          some_in = some_in || l[b] == Label::in;
        }
        const Label want = all_out ? Label::in : some_in ? Label::out : Label::undec;
        if (l[a] != want) return;
      }
      out.insert(std::move(l));
      return;
    }
    for (Label x : {Label::in, Label::undec, Label::out}) {
      current[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Grounded labeling by iterating the characteristic function from the
/// empty labeling.
inline Labels ref_grounded(const ArgumentationFramework& f) {
  std::set<std::string> in, out;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : f.args()) {
      if (in.count(a) || out.count(a)) continue;
      const auto att = f.attackers_of(a);
      if (std::all_of(att.begin(), att.end(), [&](const std::string& b) { return out.count(b); })) {
        in.insert(a);
        changed = true;
      } else if (std::any_of(att.begin(), att.end(),
                             [&](const std::string& b) { return in.count(b); })) {
        out.insert(a);
        changed = true;
      }
    }
  }
  Labels l;
  for (const auto& a : f.args()) {
    l[a] = in.count(a) ? Label::in : out.count(a) ? Label::out : Label::undec;
  }
  return l;
}

/// Labelings reached by an allocator, evaluated with the reference semantics.
inline std::set<Labels> ref_instantiations(const Allocator& e,
                                           const std::vector<std::string>& positions) {
  const auto av = e.allocation_vars();
  std::set<Labels> out;
  for_each_valuation({av.begin(), av.end()}, [&](const auto& v) {
    Labels l;
    for (const auto& p : positions) l[p] = to_label(ref_eval(e.at(p), v));
    out.insert(std::move(l));
  });
  return out;
}

inline Labels to_labels(const std::vector<std::string>& positions, const Labeling& l) {
  Labels out;
  for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] = l.labels[i];
  return out;
}

inline std::set<Labels> to_labels(const std::vector<std::string>& positions,
                                  const std::set<Labeling>& ls) {
  std::set<Labels> out;
  for (const auto& l : ls) out.insert(to_labels(positions, l));
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence up to renaming of allocation variables: a bijection between
// the variable sets where each variable may also be replaced by its negation.

inline bool equivalent_up_to_renaming(const std::vector<Expr>& actual,
                                      const std::vector<Expr>& expected,
                                      const std::set<std::string>& keep = {}) {
  if (actual.size() != expected.size()) return false;
  std::set<std::string> av, ev;
  for (const auto& e : actual) av.merge(vars(e));
  for (const auto& e : expected) ev.merge(vars(e));
  for (const auto& k : keep) {
    av.erase(k);
    ev.erase(k);
  }
  if (av.size() != ev.size()) return false;
  std::vector<std::string> from(ev.begin(), ev.end());
  std::vector<std::string> to(av.begin(), av.end());
  std::sort(to.begin(), to.end());
  do {
    for (std::uint32_t signs = 0; signs < (1u << from.size()); ++signs) {
      std::map<std::string, Expr, std::less<>> ren;
      for (std::size_t i = 0; i < from.size(); ++i) {
        const Expr target = Expr::variable(to[i]);
        ren.emplace(from[i], (signs >> i) & 1u ? !target : target);
      }
      bool all = true;
      for (std::size_t i = 0; i < actual.size() && all; ++i) {
        all = ref_equivalent(actual[i], substitute(expected[i], ren));
      }
      if (all) return true;
    }
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

inline std::vector<Expr> parse_all(const std::vector<std::string>& texts) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(parse_expression(t));
  return out;
}

// ---------------------------------------------------------------------------
// Random expressions.

class ExprGen {
 public:
  ExprGen(std::uint64_t seed, std::size_t num_vars) : rng_(seed) {
    for (std::size_t i = 0; i < num_vars; ++i) names_.push_back("v" + std::to_string(i));
  }

  Expr operator()(int depth = 4) {
    std::uniform_int_distribution<int> pick(0, 9);
    const int r = pick(rng_);
    if (depth <= 0 || r < 3) return leaf();
    if (r < 5) return !(*this)(depth - 1);
    std::uniform_int_distribution<int> width(2, 3);
    std::vector<Expr> kids;
    for (int i = width(rng_); i > 0; --i) kids.push_back((*this)(depth - 1));
    return r < 8 ? Expr::conjunction(std::move(kids)) : Expr::disjunction(std::move(kids));
  }

  Expr leaf() {
    std::uniform_int_distribution<int> pick(0, 9);
    if (pick(rng_) < 2) return Expr::constant(kTriValues[rng_() % 3]);
    return Expr::variable(names_[rng_() % names_.size()]);
  }

  std::map<std::string, TriValue> valuation() {
    std::map<std::string, TriValue> v;
    for (const auto& n : names_) v[n] = kTriValues[rng_() % 3];
    return v;
  }

  const std::vector<std::string>& names() const { return names_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> names_;
};

inline Valuation to_valuation(const std::map<std::string, TriValue>& m) {
  Valuation v;
  for (const auto& [k, x] : m) v.set(k, x);
  return v;
}

/// Random partition of the arguments into `parts` nonempty blocks (fewer
/// when there are not enough arguments).
inline Splitter random_splitter(const ArgumentationFramework& f, std::size_t parts,
                                std::mt19937_64& rng) {
  std::vector<std::string> args = f.args();
  std::shuffle(args.begin(), args.end(), rng);
  parts = std::min(parts, args.size());
  std::vector<std::vector<std::string>> groups(parts);
  for (std::size_t i = 0; i < args.size(); ++i) {
    groups[i < parts ? i : rng() % parts].push_back(args[i]);
  }
  Splitter s;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    s.blocks.push_back(block_of(f, g));
  }
  return s;
}

}  // namespace testsupport
