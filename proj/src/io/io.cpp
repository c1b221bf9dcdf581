#include "argalloc/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "argalloc/eq_solver.hpp"
#include "argalloc/error.hpp"

namespace argalloc {

std::string_view format_name(InputFormat f) noexcept {
  switch (f) {
    case InputFormat::tgf:
      return "tgf";
    case InputFormat::apx:
      return "apx";
    case InputFormat::adfx:
      return "adfx";
    case InputFormat::blocks_json:
      return "blocks-json";
  }
  return "?";
}

std::optional<InputFormat> parse_format_name(std::string_view name) noexcept {
  if (name == "tgf") return InputFormat::tgf;
  if (name == "apx") return InputFormat::apx;
  if (name == "adfx") return InputFormat::adfx;
  if (name == "blocks-json" || name == "json") return InputFormat::blocks_json;
  return std::nullopt;
}

std::optional<InputFormat> format_from_path(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext.empty()) return std::nullopt;
  return parse_format_name(std::string_view(ext).substr(1));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

void check_name(std::string_view name, std::size_t line) {
  if (!is_identifier(name)) {
    throw ParseError("invalid argument name '" + std::string(name) + "'", line);
  }
  if (is_reserved_name(name)) {
    throw ParseError("argument name '" + std::string(name) + "' uses a reserved prefix", line);
  }
}

struct Declarations {
  std::vector<std::string> names;
  std::set<std::string, std::less<>> seen;

  void add(std::string_view name, std::size_t line) {
    check_name(name, line);
    if (!seen.emplace(name).second) {
      throw ParseError("argument '" + std::string(name) + "' declared twice", line);
    }
    names.emplace_back(name);
  }
  void require(std::string_view name, std::size_t line) const {
    if (!seen.count(name)) {
      throw ParseError("undeclared argument '" + std::string(name) + "'", line);
    }
  }
};

}  // namespace

ArgumentationFramework parse_tgf(std::string_view text) {
  Declarations decl;
  std::vector<std::pair<Attack, std::size_t>> edges;
  bool in_edges = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line == "#") {
      if (in_edges) throw ParseError("second '#' separator", line_no);
      in_edges = true;
      continue;
    }
    const auto tokens = split_ws(line);
    if (!in_edges) {
      // Anything after the node name is a label.
      decl.add(tokens[0], line_no);
    } else {
      if (tokens.size() < 2) throw ParseError("edge line needs two nodes", line_no);
      edges.push_back({{std::string(tokens[0]), std::string(tokens[1])}, line_no});
    }
  }
  std::vector<Attack> attacks;
  for (auto& [a, line] : edges) {
    decl.require(a.attacker, line);
    decl.require(a.target, line);
    attacks.push_back(std::move(a));
  }
  return ArgumentationFramework(std::move(decl.names), std::move(attacks));
}

namespace {

struct Statement {
  std::string directive;
  std::string body;
  std::size_t line;
};

// `name(body).` statements with balanced parentheses inside the body.
std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::size_t i = 0;
  std::size_t line = 1;
  auto advance = [&] {
    if (text[i] == '\n') ++line;
    ++i;
  };
  while (true) {
    while (i < text.size()) {
      if (text[i] == '%') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
        advance();
      } else {
        break;
      }
    }
    if (i >= text.size()) break;
    const std::size_t start_line = line;
    const std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      ++i;
    }
    std::string directive(text.substr(start, i - start));
    while (i < text.size() && text[i] != '\n' && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (directive.empty() || i >= text.size() || text[i] != '(') {
      throw ParseError("expected a statement of the form name(...).", start_line);
    }
    advance();
    const std::size_t body_start = i;
    int depth = 1;
    while (i < text.size() && depth > 0) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      if (depth > 0) advance();
    }
    if (depth != 0) throw ParseError("unbalanced parentheses", start_line);
    std::string body(text.substr(body_start, i - body_start));
    advance();
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i >= text.size() || text[i] != '.') throw ParseError("expected '.'", line);
    advance();
    out.push_back({std::move(directive), std::move(body), start_line});
  }
  return out;
}

std::pair<std::string, std::string> split_pair(const Statement& s) {
  const auto comma = s.body.find(',');
  if (comma == std::string::npos) throw ParseError(s.directive + " needs two arguments", s.line);
  return {std::string(trim(std::string_view(s.body).substr(0, comma))),
          std::string(trim(std::string_view(s.body).substr(comma + 1)))};
}

}  // namespace

ArgumentationFramework parse_apx(std::string_view text) {
  const auto statements = split_statements(text);
  Declarations decl;
  for (const auto& s : statements) {
    if (s.directive == "arg") decl.add(trim(s.body), s.line);
  }
  std::vector<Attack> attacks;
  for (const auto& s : statements) {
    if (s.directive == "arg") continue;
    if (s.directive != "att") throw ParseError("unknown directive '" + s.directive + "'", s.line);
    auto [a, b] = split_pair(s);
    decl.require(a, s.line);
    decl.require(b, s.line);
    attacks.push_back({std::move(a), std::move(b)});
  }
  return ArgumentationFramework(std::move(decl.names), std::move(attacks));
}

Network parse_adfx(std::string_view text) {
  const auto statements = split_statements(text);
  Declarations decl;
  for (const auto& s : statements) {
    if (s.directive == "arg") decl.add(trim(s.body), s.line);
  }
  std::map<std::string, Expr> conditions;
  for (const auto& s : statements) {
    if (s.directive == "arg") continue;
    if (s.directive != "cond") throw ParseError("unknown directive '" + s.directive + "'", s.line);
    auto [name, body] = split_pair(s);
    decl.require(name, s.line);
    Expr e = [&] {
      try {
        return parse_expression(body);
      } catch (const ParseError& err) {
        throw ParseError(err.what(), s.line);
      } catch (const UsageError& err) {
        throw ParseError(err.what(), s.line);
      }
    }();
    for (const auto& x : vars(e)) decl.require(x, s.line);
    if (!conditions.emplace(name, std::move(e)).second) {
      throw ParseError("argument '" + name + "' has two conditions", s.line);
    }
  }
  std::vector<Expr> conds;
  for (const auto& a : decl.names) {
    auto it = conditions.find(a);
    conds.push_back(it == conditions.end() ? Expr::constant(TriValue::T) : it->second);
  }
  return Network(std::move(decl.names), std::move(conds));
}

std::string write_tgf(const ArgumentationFramework& f) {
  std::string out;
  for (const auto& a : f.args()) out += a + "\n";
  out += "#\n";
  for (const auto& a : f.attacks()) out += a.attacker + " " + a.target + "\n";
  return out;
}

std::string write_apx(const ArgumentationFramework& f) {
  std::string out;
  for (const auto& a : f.args()) out += "arg(" + a + ").\n";
  for (const auto& a : f.attacks()) out += "att(" + a.attacker + "," + a.target + ").\n";
  return out;
}

std::string write_adfx(const Network& n) {
  std::string out;
  for (const auto& a : n.args()) out += "arg(" + a + ").\n";
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    out += "cond(" + n.args()[i] + ", " + n.condition(i).text() + ").\n";
  }
  return out;
}

std::string write_dot(const Network& n) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = "digraph framework {\n";
  for (const auto& a : n.args()) out += "  " + quote(a) + ";\n";
  for (const auto& x : n.inputs()) out += "  " + quote(x) + " [style=dashed];\n";
  const bool attacks = n.is_attack_shaped();
  for (std::size_t i = 0; i < n.args().size(); ++i) {
    for (const auto& x : vars(n.condition(i))) {
      out += "  " + quote(x) + " -> " + quote(n.args()[i]);
      out += attacks ? ";\n" : " [label=" + quote(n.condition(i).text()) + "];\n";
    }
  }
  return out + "}\n";
}

// ---------------------------------------------------------------------------

InputDocument parse_input(std::string_view text, InputFormat format) {
  switch (format) {
    case InputFormat::tgf: {
      auto f = parse_tgf(text);
      Network n = af_to_network(f);
      return {format, std::move(f), std::move(n), std::nullopt};
    }
    case InputFormat::apx: {
      auto f = parse_apx(text);
      Network n = af_to_network(f);
      return {format, std::move(f), std::move(n), std::nullopt};
    }
    case InputFormat::adfx:
      return {format, std::nullopt, parse_adfx(text), std::nullopt};
    case InputFormat::blocks_json: {
      Json j;
      try {
        j = Json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what());
      }
      Splitter s = splitter_from_json(j);
      Network n = splitter_network(s);
      std::optional<ArgumentationFramework> f;
      if (std::all_of(s.blocks.begin(), s.blocks.end(),
                      [](const Block& b) { return b.attacks().has_value(); })) {
        std::vector<Attack> attacks;
        for (const auto& b : s.blocks) {
          attacks.insert(attacks.end(), b.attacks()->begin(), b.attacks()->end());
        }
        f = ArgumentationFramework(n.args(), std::move(attacks));
      }
      return {format, std::move(f), std::move(n), std::move(s)};
    }
  }
  throw UsageError("unknown input format");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputDocument load_input(const std::filesystem::path& path, std::optional<InputFormat> format) {
  if (!format) format = format_from_path(path);
  if (!format) throw UsageError("cannot infer the format of '" + path.string() + "'");
  return parse_input(read_file(path), *format);
}

// ---------------------------------------------------------------------------

Json allocator_to_json(const Allocator& e) {
  Json entries = Json::object();
  for (std::size_t i = 0; i < e.size(); ++i) entries[e.names()[i]] = e.at(i).text();
  Json vars = Json::array();
  for (const auto& x : e.allocation_vars()) vars.push_back(x);
  return Json{{"allocator", std::move(entries)}, {"allocation_variables", std::move(vars)}};
}

namespace {

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("json: missing field '") + key + "'");
  }
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string("json: ") + what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> name_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("json: ") + what + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    std::string name = as_string(x, what);
    check_name(name, 0);
    out.push_back(std::move(name));
  }
  return out;
}

}  // namespace

Allocator allocator_from_json(const Json& j) {
  const Json& entries = require_field(j, "allocator");
  if (!entries.is_object()) throw ParseError("json: allocator must be an object");
  std::vector<std::string> names;
  std::vector<Expr> exprs;
  for (const auto& [k, v] : entries.items()) {
    names.push_back(k);
    exprs.push_back(parse_expression(as_string(v, "allocator entry")));
  }
  return Allocator(std::move(names), std::move(exprs));
}

Json labeling_to_json(const std::vector<std::string>& positions, const Labeling& l) {
  Json out = Json::object();
  for (std::size_t i = 0; i < positions.size() && i < l.labels.size(); ++i) {
    out[positions[i]] = std::string(label_name(l.labels[i]));
  }
  return out;
}

Labeling labeling_from_json(const std::vector<std::string>& positions, const Json& j) {
  if (!j.is_object()) throw ParseError("json: labeling must be an object");
  if (j.size() != positions.size()) throw ParseError("json: labeling is not total");
  Labeling l;
  for (const auto& p : positions) {
    const auto label = parse_label(as_string(require_field(j, p.c_str()), "label"));
    if (!label) throw ParseError("json: unknown label for '" + p + "'");
    l.labels.push_back(*label);
  }
  return l;
}

Json splitter_to_json(const Splitter& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    Json jb{{"actual", b.actual()}, {"variable", b.variable()}};
    if (b.attacks()) {
      Json attacks = Json::array();
      for (const auto& a : *b.attacks()) attacks.push_back({a.attacker, a.target});
      jb["attacks"] = std::move(attacks);
    } else {
      Json conds = Json::object();
      for (std::size_t i = 0; i < b.actual().size(); ++i) {
        conds[b.actual()[i]] = b.conditions()[i].text();
      }
      jb["conditions"] = std::move(conds);
    }
    blocks.push_back(std::move(jb));
  }
  return Json{{"blocks", std::move(blocks)}};
}

Splitter splitter_from_json(const Json& j) {
  const Json& blocks = require_field(j, "blocks");
  if (!blocks.is_array()) throw ParseError("json: blocks must be an array");
  Splitter s;
  try {
    for (const auto& jb : blocks) {
      auto actual = name_list(require_field(jb, "actual"), "actual");
      auto variable =
          jb.contains("variable") ? name_list(jb.at("variable"), "variable") : std::vector<std::string>{};
      if (jb.contains("attacks")) {
        std::vector<Attack> attacks;
        for (const auto& ja : jb.at("attacks")) {
          if (!ja.is_array() || ja.size() != 2) {
            throw ParseError("json: an attack must be a pair [attacker, target]");
          }
          attacks.push_back({as_string(ja[0], "attacker"), as_string(ja[1], "target")});
        }
        s.blocks.push_back(Block::from_attacks(std::move(actual), std::move(variable),
                                               std::move(attacks)));
      } else {
        const Json& jc = require_field(jb, "conditions");
        std::vector<Expr> conds;
        for (const auto& a : actual) {
          conds.push_back(jc.contains(a) ? parse_expression(as_string(jc.at(a), "condition"))
                                         : Expr::constant(TriValue::T));
        }
        s.blocks.push_back(Block::from_conditions(std::move(actual), std::move(variable),
                                                  std::move(conds)));
      }
    }
  } catch (const UsageError& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  return s;
}

Network splitter_network(const Splitter& s) {
  std::vector<std::string> args;
  std::vector<Expr> conds;
  for (const auto& b : s.blocks) {
    args.insert(args.end(), b.actual().begin(), b.actual().end());
    conds.insert(conds.end(), b.conditions().begin(), b.conditions().end());
  }
  try {
    return Network(std::move(args), std::move(conds));
  } catch (const UsageError& e) {
    throw ParseError(std::string("splitter: ") + e.what());
  }
}

}  // namespace argalloc
