#include <atomic>
#include <cctype>
#include <utility>

#include "argalloc/error.hpp"
#include "argalloc/tri_logic.hpp"

namespace argalloc {

struct Expr::Node {
  Kind kind;
  TriValue value = TriValue::U;
  std::string name;
  std::vector<Expr> children;
  std::string text;
  std::size_t size = 1;
  mutable std::atomic<bool> canonical{false};
};

namespace {

bool needs_parens(Expr::Kind parent, const Expr& child) {
  switch (parent) {
    case Expr::Kind::Not:
      return child.is_list();
    case Expr::Kind::And:
      return child.is_list();
    case Expr::Kind::Or:
      return child.kind() == Expr::Kind::Or;
    default:
      return false;
  }
}

void append_child(std::string& out, Expr::Kind parent, const Expr& child) {
  if (needs_parens(parent, child)) {
    out += '(';
    out += child.text();
    out += ')';
  } else {
    out += child.text();
  }
}

}  // namespace

char to_char(TriValue v) noexcept {
  switch (v) {
    case TriValue::T:
      return 'T';
    case TriValue::U:
      return 'U';
    case TriValue::F:
      return 'F';
  }
  return '?';
}

std::optional<TriValue> tri_from_char(char c) noexcept {
  switch (c) {
    case 'T':
      return TriValue::T;
    case 'U':
      return TriValue::U;
    case 'F':
      return TriValue::F;
    default:
      return std::nullopt;
  }
}

std::string ValueRange::to_string() const {
  std::string out = "{";
  for (TriValue v : kTriValues) {
    if (!contains(v)) continue;
    if (out.size() > 1) out += ',';
    out += to_char(v);
  }
  return out + "}";
}

bool is_identifier(std::string_view name) noexcept {
  if (name.empty()) return false;
  if (name == "T" || name == "F" || name == "U") return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

Expr Expr::constant(TriValue v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = v;
  n->text = std::string(1, to_char(v));
  n->canonical = true;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  if (!is_identifier(name)) throw UsageError("invalid variable name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->text = name;
  n->name = std::move(name);
  n->canonical = true;
  return Expr(std::move(n));
}

Expr Expr::negation(Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->text = "!";
  append_child(n->text, Kind::Not, child);
  n->size = 1 + child.size();
  n->children.push_back(std::move(child));
  return Expr(std::move(n));
}

Expr Expr::conjunction(std::vector<Expr> children) {
  if (children.size() < 2) throw UsageError("conjunction needs at least two children");
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) n->text += " & ";
    append_child(n->text, Kind::And, children[i]);
    n->size += children[i].size();
  }
  n->children = std::move(children);
  return Expr(std::move(n));
}

Expr Expr::disjunction(std::vector<Expr> children) {
  if (children.size() < 2) throw UsageError("disjunction needs at least two children");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) n->text += " | ";
    append_child(n->text, Kind::Or, children[i]);
    n->size += children[i].size();
  }
  n->children = std::move(children);
  return Expr(std::move(n));
}

Expr Expr::all_of(std::vector<Expr> children) {
  if (children.empty()) return constant(TriValue::T);
  if (children.size() == 1) return std::move(children.front());
  return conjunction(std::move(children));
}

Expr Expr::any_of(std::vector<Expr> children) {
  if (children.empty()) return constant(TriValue::F);
  if (children.size() == 1) return std::move(children.front());
  return disjunction(std::move(children));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
TriValue Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }
const std::string& Expr::text() const noexcept { return node_->text; }
std::size_t Expr::size() const noexcept { return node_->size; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  return a.node_ == b.node_ || a.node_->text == b.node_->text;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return a.node_->text <=> b.node_->text;
}

bool detail_is_canonical(const Expr& p) noexcept {
  return p.node_->canonical.load(std::memory_order_relaxed);
}

void detail_mark_canonical(const Expr& p) noexcept {
  p.node_->canonical.store(true, std::memory_order_relaxed);
}

Expr operator!(Expr p) { return Expr::negation(std::move(p)); }
Expr operator&(Expr a, Expr b) { return Expr::conjunction({std::move(a), std::move(b)}); }
Expr operator|(Expr a, Expr b) { return Expr::disjunction({std::move(a), std::move(b)}); }

// ---------------------------------------------------------------------------
// Valuations, evaluation, variables, substitution.

Valuation Valuation::undecided(const std::set<std::string>& domain) {
  Valuation v;
  for (const auto& x : domain) v.set(x, TriValue::U);
  return v;
}

TriValue Valuation::at(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw DomainError(std::string(name));
  return it->second;
}

TriValue eval(const Expr& p, const Valuation& v) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return p.value();
    case Expr::Kind::Variable:
      return v.at(p.name());
    case Expr::Kind::Not:
      return tri_not(eval(p.child(), v));
    case Expr::Kind::And: {
      TriValue acc = TriValue::T;
      for (const Expr& c : p.children()) acc = tri_and(acc, eval(c, v));
      return acc;
    }
    case Expr::Kind::Or: {
      TriValue acc = TriValue::F;
      for (const Expr& c : p.children()) acc = tri_or(acc, eval(c, v));
      return acc;
    }
  }
  return TriValue::U;
}

TriValue eval_undecided(const Expr& p) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return p.value();
    case Expr::Kind::Variable:
      return TriValue::U;
    case Expr::Kind::Not:
      return tri_not(eval_undecided(p.child()));
    case Expr::Kind::And: {
      TriValue acc = TriValue::T;
      for (const Expr& c : p.children()) {
        acc = tri_and(acc, eval_undecided(c));
        if (acc == TriValue::F) break;
      }
      return acc;
    }
    case Expr::Kind::Or: {
      TriValue acc = TriValue::F;
      for (const Expr& c : p.children()) {
        acc = tri_or(acc, eval_undecided(c));
        if (acc == TriValue::T) break;
      }
      return acc;
    }
  }
  return TriValue::U;
}

namespace {

void collect_vars(const Expr& p, std::set<std::string>& out) {
  if (p.is_variable()) {
    out.insert(p.name());
    return;
  }
  for (const Expr& c : p.children()) collect_vars(c, out);
}

template <typename Replace>
Expr rebuild(const Expr& p, const Replace& replace) {
  switch (p.kind()) {
    case Expr::Kind::Constant:
      return p;
    case Expr::Kind::Variable:
      return replace(p);
    case Expr::Kind::Not: {
      Expr c = rebuild(p.child(), replace);
      if (c == p.child()) return p;
      return Expr::negation(std::move(c));
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      std::vector<Expr> kids;
      kids.reserve(p.children().size());
      bool changed = false;
      for (const Expr& c : p.children()) {
        kids.push_back(rebuild(c, replace));
        changed = changed || !(kids.back() == c);
      }
      if (!changed) return p;
      return p.kind() == Expr::Kind::And ? Expr::conjunction(std::move(kids))
                                         : Expr::disjunction(std::move(kids));
    }
  }
  return p;
}

}  // namespace

std::set<std::string> vars(const Expr& p) {
  std::set<std::string> out;
  collect_vars(p, out);
  return out;
}

bool mentions(const Expr& p, std::string_view x) {
  if (p.is_variable()) return p.name() == x;
  for (const Expr& c : p.children()) {
    if (mentions(c, x)) return true;
  }
  return false;
}

Expr substitute(const Expr& p, std::string_view x, const Expr& q) {
  if (!mentions(p, x)) return p;
  return rebuild(p, [&](const Expr& leaf) { return leaf.name() == x ? q : leaf; });
}

Expr substitute(const Expr& p, const std::map<std::string, Expr, std::less<>>& replacements) {
  if (replacements.empty()) return p;
  return rebuild(p, [&](const Expr& leaf) {
    auto it = replacements.find(leaf.name());
    return it == replacements.end() ? leaf : it->second;
  });
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression: " + what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_or() {
    std::vector<Expr> items{parse_and()};
    while (accept('|')) items.push_back(parse_and());
    return items.size() == 1 ? std::move(items.front()) : Expr::disjunction(std::move(items));
  }

  Expr parse_and() {
    std::vector<Expr> items{parse_unary()};
    while (accept('&')) items.push_back(parse_unary());
    return items.size() == 1 ? std::move(items.front()) : Expr::conjunction(std::move(items));
  }

  Expr parse_unary() {
    if (accept('!')) return Expr::negation(parse_unary());
    return parse_atom();
  }

  Expr parse_atom() {
    if (accept('(')) {
      Expr e = parse_or();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      if (pos_ == text_.size()) fail("unexpected end of input");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word.size() == 1) {
      if (auto c = tri_from_char(word[0])) return Expr::constant(*c);
    }
    return Expr::variable(std::string(word));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace argalloc
