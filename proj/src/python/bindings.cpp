#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "argalloc/blocks.hpp"
#include "argalloc/cli.hpp"
#include "argalloc/error.hpp"
#include "argalloc/eq_solver.hpp"
#include "argalloc/framework.hpp"
#include "argalloc/io.hpp"
#include "argalloc/stability.hpp"
#include "argalloc/tri_logic.hpp"

namespace py = pybind11;
using namespace argalloc;

namespace {

// Labelings cross the boundary as {argument: "in" | "out" | "undec"}.
using PyLabeling = std::map<std::string, std::string>;

PyLabeling to_py(const std::vector<std::string>& positions, const Labeling& l) {
  PyLabeling out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out[positions[i]] = std::string(label_name(l.labels[i]));
  }
  return out;
}

std::vector<PyLabeling> to_py(const std::vector<std::string>& positions,
                              const std::set<Labeling>& ls) {
  std::vector<PyLabeling> out;
  for (const auto& l : ls) out.push_back(to_py(positions, l));
  return out;
}

Valuation to_valuation(const std::map<std::string, TriValue>& m) {
  Valuation v;
  for (const auto& [k, x] : m) v.set(k, x);
  return v;
}

Network as_network(const py::object& o) {
  if (py::isinstance<ArgumentationFramework>(o)) return af_to_network(o.cast<ArgumentationFramework>());
  return o.cast<Network>();
}

OrderStrategy strategy_named(const std::string& s) {
  if (s == "input") return OrderStrategy::input;
  if (s == "exhaustive") return OrderStrategy::min_arity_exhaustive;
  if (s == "fvs") return OrderStrategy::fvs_heuristic;
  throw UsageError("unknown order strategy '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compile argumentation frameworks into general allocators.";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<UsageError>(m, "UsageError", error.ptr());

  py::enum_<TriValue>(m, "TriValue")
      .value("T", TriValue::T)
      .value("U", TriValue::U)
      .value("F", TriValue::F);

  py::class_<Expr>(m, "Expr")
      .def(py::init([](const std::string& text) { return parse_expression(text); }))
      .def_static("constant", &Expr::constant)
      .def_static("variable", [](const std::string& n) { return Expr::variable(n); })
      .def("__str__", [](const Expr& e) { return e.text(); })
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.text() + "')"; })
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; })
      .def("__hash__", [](const Expr& e) { return std::hash<std::string>{}(e.text()); })
      .def("__invert__", [](const Expr& e) { return !e; })
      .def("__and__", [](const Expr& a, const Expr& b) { return a & b; })
      .def("__or__", [](const Expr& a, const Expr& b) { return a | b; })
      .def_property_readonly("size", &Expr::size)
      .def("vars", [](const Expr& e) { return vars(e); })
      .def("eval", [](const Expr& e, const std::map<std::string, TriValue>& v) {
        return eval(e, to_valuation(v));
      });

  m.def("parse_expression", [](const std::string& s) { return parse_expression(s); });
  m.def("simplify", &simplify);
  m.def("equivalent", &equivalent, py::arg("p"), py::arg("q"),
        py::arg("max_vars") = kDefaultMaxEquivVars);
  m.def("substitute",
        [](const Expr& p, const std::string& x, const Expr& q) { return substitute(p, x, q); });

  py::class_<ArgumentationFramework>(m, "ArgumentationFramework")
      .def(py::init([](std::vector<std::string> args,
                       const std::vector<std::pair<std::string, std::string>>& attacks) {
             std::vector<Attack> atts;
             for (const auto& [a, b] : attacks) atts.push_back({a, b});
             return ArgumentationFramework(std::move(args), std::move(atts));
           }),
           py::arg("args"), py::arg("attacks"))
      .def_property_readonly("args", &ArgumentationFramework::args)
      .def_property_readonly("attacks", [](const ArgumentationFramework& f) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& a : f.attacks()) out.emplace_back(a.attacker, a.target);
        return out;
      });

  py::class_<Network>(m, "Network")
      .def(py::init([](std::vector<std::string> args, const std::vector<std::string>& conds,
                       std::vector<std::string> inputs) {
             std::vector<Expr> exprs;
             for (const auto& c : conds) exprs.push_back(parse_expression(c));
             return Network(std::move(args), std::move(exprs), std::move(inputs));
           }),
           py::arg("args"), py::arg("conditions"), py::arg("inputs") = std::vector<std::string>{})
      .def_property_readonly("args", &Network::args)
      .def_property_readonly("inputs", &Network::inputs)
      .def("condition", [](const Network& n, const std::string& a) { return n.condition(a); });

  m.def("af_to_network", &af_to_network);

  py::class_<Allocator>(m, "Allocator")
      .def_property_readonly("names", &Allocator::names)
      .def_property_readonly("exprs", &Allocator::exprs)
      .def("__getitem__", [](const Allocator& e, const std::string& a) { return e.at(a); })
      .def("__len__", &Allocator::size)
      .def("__str__", &Allocator::to_string)
      .def_property_readonly("allocation_vars", &Allocator::allocation_vars)
      .def_property_readonly("arity", [](const Allocator& e) { return arity(e); })
      .def("as_dict", [](const Allocator& e) {
        std::map<std::string, std::string> out;
        for (std::size_t i = 0; i < e.size(); ++i) out[e.names()[i]] = e.at(i).text();
        return out;
      });

  m.def("parse_tgf", [](const std::string& s) { return parse_tgf(s); });
  m.def("parse_apx", [](const std::string& s) { return parse_apx(s); });
  m.def("parse_adfx", [](const std::string& s) { return parse_adfx(s); });

  m.def(
      "solve",
      [](const py::object& f, std::optional<std::vector<std::string>> order, bool elide,
         const std::string& strategy) {
        const Network n = as_network(f);
        SolveOptions opts;
        opts.refine.elide = elide;
        FreshSupply supply;
        const auto ord = order ? *order : order_strategy(n, strategy_named(strategy), opts);
        return solve(n, ord, supply, opts);
      },
      py::arg("framework"), py::arg("order") = py::none(), py::arg("elide") = true,
      py::arg("strategy") = "input");

  m.def("build_general_legacy",
        [](const py::object& f) { return build_general_legacy(as_network(f)); });

  m.def("complete_labelings", [](const py::object& f) {
    const Network n = as_network(f);
    const auto all = enumerate_complete_labelings(n);
    return to_py(n.positions(), std::set<Labeling>(all.begin(), all.end()));
  });
  m.def("grounded_labeling", [](const py::object& f) {
    const Network n = as_network(f);
    return to_py(n.positions(), grounded_labeling(n));
  });
  m.def("instantiation_set", [](const Allocator& e) {
    return to_py(e.names(), instantiation_set(e));
  });
  m.def("instantiate", [](const Allocator& e, const std::map<std::string, TriValue>& v) {
    return to_py(e.names(), allocator_to_labeling(instantiate(e, to_valuation(v))));
  });
  m.def("is_complete_allocator",
        [](const py::object& f, const Allocator& e) { return is_complete_allocator(as_network(f), e); });
  m.def("is_general", [](const py::object& f, const Allocator& e) { return is_general(as_network(f), e); });
  m.def("stable_labelings", [](const py::object& f) {
    const Network n = as_network(f);
    return to_py(n.positions(), enumerate_stable(n, solve(n)));
  });

  m.def("run_cli",
        [](const std::string& command, const std::string& input, bool json) {
          RunConfig cfg;
          cfg.command = command;
          cfg.input = input;
          cfg.json = json;
          const RunResult r = run(cfg);
          return py::make_tuple(r.exit_code, r.out, r.err);
        },
        py::arg("command"), py::arg("input"), py::arg("json") = false);
}
