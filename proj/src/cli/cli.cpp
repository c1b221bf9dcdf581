#include "argalloc/cli.hpp"

#include <chrono>
#include <fstream>

#include "argalloc/blocks.hpp"
#include "argalloc/error.hpp"
#include "argalloc/stability.hpp"

namespace argalloc {

namespace {

struct Output {
  Json result = Json::object();
  std::string text;
  std::optional<std::size_t> node_count;
  std::optional<std::size_t> arity;
  int exit_code = kExitOk;
};

class Runner {
 public:
  explicit Runner(const RunConfig& config) : cfg_(config) {
    options_.refine.elide = config.elide;
    if (config.trace) {
      options_.trace = [this](const SolveStep& step) {
        Json equations = Json::object();
        for (const auto& e : step.after.equations()) equations[e.lhs] = e.rhs.text();
        Json line{{"step", step.index},
                  {"variable", step.variable},
                  {"refined", step.refined.rhs.text()},
                  {"equations", std::move(equations)}};
        trace_ += line.dump() + "\n";
      };
    }
  }

  Output dispatch() {
    const std::string& c = cfg_.command;
    doc_ = load_input(cfg_.input, cfg_.format);
    if (c == "compile") return compile();
    if (c == "labelings") return labelings();
    if (c == "grounded") return grounded();
    if (c == "stable") return stable();
    if (c == "verify") return verify();
    if (c == "split-solve") return split_solve();
    if (c == "compose") return compose();
    if (c == "influence") return influence();
    if (c == "arity-search") return arity_search();
    if (c == "dot") return dot();
    throw UsageError("unknown command '" + c + "'");
  }

  const std::string& trace() const noexcept { return trace_; }

 private:
  const Network& network() const { return doc_->network; }

  std::vector<std::string> order(OrderStrategy kind) const {
    return order_strategy(network(), kind, options_);
  }

  Allocator solved(const std::vector<std::string>& ord) const {
    FreshSupply supply;
    return solve(network(), ord, supply, options_);
  }

  static void describe_allocator(Output& out, const Allocator& e) {
    out.node_count = e.node_count();
    out.arity = arity(e);
    out.text += e.to_string();
    out.text += "arity: " + std::to_string(*out.arity) + "\n";
  }

  Json labeling_list(const std::vector<Labeling>& ls, std::string& text) const {
    const auto positions = network().positions();
    Json arr = Json::array();
    for (const auto& l : ls) {
      arr.push_back(labeling_to_json(positions, l));
      text += l.to_string(positions) + "\n";
    }
    text += "count: " + std::to_string(ls.size()) + "\n";
    return arr;
  }

  Output compile() {
    Output out;
    Allocator e;
    if (cfg_.method == "legacy") {
      e = build_general_legacy(network(), cfg_.bounds);
    } else if (cfg_.method == "solve") {
      const auto ord = order(cfg_.order);
      e = solved(ord);
      out.result["order"] = ord;
    } else {
      throw UsageError("unknown method '" + cfg_.method + "'");
    }
    out.result.update(allocator_to_json(e));
    describe_allocator(out, e);
    return out;
  }

  Output labelings() {
    Output out;
    const auto ls = enumerate_complete_labelings(network(), cfg_.bounds.max_oracle_positions);
    out.result["labelings"] = labeling_list(ls, out.text);
    out.result["count"] = ls.size();
    return out;
  }

  Output grounded() {
    Output out;
    const Labeling l = grounded_labeling(network());
    out.result["labeling"] = labeling_to_json(network().positions(), l);
    out.text = l.to_string(network().positions()) + "\n";
    return out;
  }

  Output stable() {
    Output out;
    const Allocator e = solved(order(cfg_.order));
    const auto found = enumerate_stable(network(), e, SatBackend::automatic, cfg_.bounds);
    if (cfg_.dimacs) {
      std::ofstream f(*cfg_.dimacs);
      if (!f) throw UsageError("cannot write '" + *cfg_.dimacs + "'");
      f << Cnf(stable_condition(e)).to_dimacs();
    }
    out.result["labelings"] = labeling_list({found.begin(), found.end()}, out.text);
    out.result["count"] = found.size();
    out.node_count = e.node_count();
    out.arity = arity(e);
    return out;
  }

  Output verify() {
    Output out;
    const Network& n = network();
    Allocator e;
    if (cfg_.allocator) {
      e = allocator_from_json(Json::parse(read_file(*cfg_.allocator)));
    } else {
      e = solved(order(cfg_.order));
    }
    e = e.reordered(n.positions());
    out.node_count = e.node_count();
    out.arity = arity(e);

    // Exhaustive when within bounds, sampled refutation otherwise.
    Json complete;
    try {
      complete = is_complete_allocator(n, e, cfg_.bounds.max_equiv_vars);
    } catch (const CapacityError&) {
      std::map<std::string, Expr, std::less<>> repl;
      for (std::size_t i = 0; i < e.size(); ++i) repl.emplace(e.names()[i], e.at(i));
      complete = "not disproved";
      for (std::size_t i = 0; i < n.args().size(); ++i) {
        const auto r = refute_randomly(e.at(i), substitute(n.condition(i), repl), 4096,
                                       cfg_.seed + i);
        if (r.outcome == RefutationOutcome::Refuted) complete = false;
      }
    }

    Json general = "unchecked";
    Json count = nullptr;
    if (static_cast<int>(n.positions().size()) <= cfg_.bounds.max_oracle_positions &&
        static_cast<int>(e.allocation_vars().size()) <= cfg_.bounds.max_equiv_vars) {
      const auto oracle = enumerate_complete_labelings(n, cfg_.bounds.max_oracle_positions);
      const std::set<Labeling> expected(oracle.begin(), oracle.end());
      general = complete == true && instantiation_set(e, cfg_.bounds.max_equiv_vars) == expected;
      count = oracle.size();
    }
    out.result = Json{{"complete", complete}, {"general", general}, {"labelings", count}};
    out.text = "complete: " + (complete.is_string() ? complete.get<std::string>() : complete.dump()) +
               "\ngeneral: " + (general.is_string() ? general.get<std::string>() : general.dump()) +
               "\nlabelings: " + (count.is_null() ? "unknown" : count.dump()) + "\n";
    if (complete == false || general == false) out.exit_code = kExitVerification;
    return out;
  }

  Splitter splitter() const {
    Splitter s;
    if (cfg_.splitter) {
      s = splitter_from_json(Json::parse(read_file(*cfg_.splitter)));
    } else if (doc_->splitter) {
      s = *doc_->splitter;
    } else {
      throw UsageError("this command needs --splitter or a blocks-json input");
    }
    SplitterReport report = doc_->framework && std::all_of(s.blocks.begin(), s.blocks.end(),
                                                           [](const Block& b) {
                                                             return b.attacks().has_value();
                                                           })
                                ? validate_splitter(*doc_->framework, s)
                                : validate_splitter(network(), s);
    if (!report) {
      std::string msg = "invalid splitter:";
      for (const auto& v : report.violations) msg += "\n  " + v;
      throw UsageError(msg);
    }
    return s;
  }

  Output split_solve() {
    Output out;
    const Splitter s = splitter();
    Json blocks = Json::array();
    std::size_t nodes = 0;
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      const Allocator e = solve_block(s.blocks[i], i + 1, options_);
      nodes += e.node_count();
      Json jb{{"actual", s.blocks[i].actual()}, {"variable", s.blocks[i].variable()}};
      jb.update(allocator_to_json(e));
      blocks.push_back(std::move(jb));
      out.text += "block " + std::to_string(i + 1) + "\n" + e.to_string();
    }
    out.result["blocks"] = std::move(blocks);
    out.node_count = nodes;
    return out;
  }

  Output compose() {
    Output out;
    const Allocator e = compose_splitter(network(), splitter(), options_);
    out.result.update(allocator_to_json(e));
    describe_allocator(out, e);
    return out;
  }

  Output influence() {
    if (!cfg_.pair) throw UsageError("influence needs --pair a,b");
    const auto& [a, b] = *cfg_.pair;
    const Influence inf = pairwise_influence(network(), a, b);
    Output out;
    out.result = Json{{"a", a}, {"b", b}, {"on_a", inf.on_a.text()}, {"on_b", inf.on_b.text()}};
    out.text = a + " = " + inf.on_a.text() + "\n" + b + " = " + inf.on_b.text() + "\n";
    return out;
  }

  Output arity_search() {
    Output out;
    Json rows = Json::array();
    std::optional<std::size_t> best;
    auto add = [&](const char* name, OrderStrategy kind) {
      const auto ord = order(kind);
      const std::size_t a = arity(solved(ord));
      rows.push_back(Json{{"strategy", name}, {"order", ord}, {"arity", a}});
      std::string joined;
      for (const auto& x : ord) joined += (joined.empty() ? "" : " ") + x;
      out.text += std::string(name) + ": arity " + std::to_string(a) + " order " + joined + "\n";
      if (!best || a < *best) best = a;
    };
    add("input", OrderStrategy::input);
    add("fvs", OrderStrategy::fvs_heuristic);
    if (network().args().size() <= kMaxExhaustiveOrderArgs) {
      add("exhaustive", OrderStrategy::min_arity_exhaustive);
    }
    out.result["strategies"] = std::move(rows);
    out.arity = best;
    return out;
  }

  Output dot() {
    Output out;
    out.text = write_dot(network());
    out.result["dot"] = out.text;
    return out;
  }

  const RunConfig& cfg_;
  SolveOptions options_;
  std::optional<InputDocument> doc_;
  std::string trace_;
};

Json error_json(const char* kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult r;
  const auto start = std::chrono::steady_clock::now();
  Runner runner(config);
  auto fail = [&](int code, const char* kind, const std::string& message) {
    r.exit_code = code;
    if (config.json) {
      r.out = error_json(kind, message).dump(2) + "\n";
    } else {
      r.err += std::string("error (") + kind + "): " + message + "\n";
    }
  };
  try {
    Output out = runner.dispatch();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.exit_code = out.exit_code;
    if (config.json) {
      Json stats{{"node_count", out.node_count ? Json(*out.node_count) : Json(nullptr)},
                 {"arity", out.arity ? Json(*out.arity) : Json(nullptr)},
                 {"wall_time", wall}};
      Json doc{{"command", config.command},
               {"input", config.input},
               {"result", std::move(out.result)},
               {"stats", std::move(stats)}};
      r.out = doc.dump(2) + "\n";
    } else {
      r.out = std::move(out.text);
    }
  } catch (const ParseError& e) {
    fail(kExitParse, "parse", e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(kExitParse, "parse", e.what());
  } catch (const CapacityError& e) {
    fail(kExitCapacity, "capacity", e.what());
  } catch (const Error& e) {
    fail(kExitUsage, "usage", e.what());
  } catch (const std::exception& e) {
    fail(kExitUsage, "internal", e.what());
  }
  r.err = runner.trace() + r.err;
  return r;
}

}  // namespace argalloc
