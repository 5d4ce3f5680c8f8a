#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drbd/casestudy.hpp"
#include "drbd/curve.hpp"
#include "drbd/dsl.hpp"
#include "drbd/errors.hpp"
#include "drbd/montecarlo.hpp"
#include "drbd/reliability.hpp"
#include "drbd/rewrite.hpp"

namespace py = pybind11;

namespace {

drbd::CiLevel ci_from_int(int ci) {
  if (ci != 95 && ci != 99) throw std::invalid_argument("ci must be 95 or 99");
  return ci == 95 ? drbd::CiLevel::P95 : drbd::CiLevel::P99;
}

drbd::McConfig make_config(std::uint64_t n, std::uint64_t seed, int ci, unsigned workers) {
  drbd::McConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.ci = ci_from_int(ci);
  cfg.workers = workers;
  return cfg;
}

// Model handle shared with Python; immutable once built.
struct PyModel {
  drbd::DrbdModel model;

  std::string system() const { return drbd::format_expr(model.root()); }

  double rel(double t, double tol) const { return drbd::rel_expr(model, t, tol); }

  std::vector<std::pair<double, double>> rel_curve(double t0, double t1, int steps,
                                                   double tol) const {
    std::vector<std::pair<double, double>> out;
    for (double t : drbd::time_grid(t0, t1, steps)) {
      out.emplace_back(t, drbd::rel_expr(model, t, tol));
    }
    return out;
  }

  std::pair<double, double> simulate(double t, std::uint64_t n, std::uint64_t seed, int ci,
                                     unsigned workers) const {
    drbd::McEstimate est = drbd::estimate_rel(model, t, make_config(n, seed, ci, workers));
    return {est.rel_hat, est.half_width};
  }

  py::dict compare(double t, double sigmas, std::uint64_t n, std::uint64_t seed, int ci,
                   unsigned workers) const {
    drbd::CompareResult r = drbd::compare(model, t, sigmas, make_config(n, seed, ci, workers));
    py::dict d;
    d["consistent"] = r.verdict == drbd::CompareVerdict::Consistent;
    d["rel"] = r.algebraic;
    d["mc_rel"] = r.mc;
    d["mc_halfwidth"] = r.half_width;
    d["z"] = r.z;
    return d;
  }

  std::string simplify(bool expand, std::size_t max_steps) const {
    drbd::RuleSet rules = drbd::builtin_rules();
    if (expand) rules = rules.with_mode(drbd::RuleMode::Expand);
    return drbd::format_expr(drbd::simplify(model.root(), rules, max_steps));
  }
};

PyModel parse(const std::string& text, const std::string& name) {
  return PyModel{drbd::parse_model(text, name).to_model()};
}

PyModel case_study_py(const std::string& name, const std::map<std::string, double>& rates,
                      const std::map<std::string, double>& dormancy) {
  drbd::CaseOverrides overrides;
  overrides.rates = rates;
  overrides.dormancy = dormancy;
  return PyModel{drbd::case_study(name, overrides)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Failure-time algebra for dynamic reliability block diagrams";

  py::register_exception<drbd::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<drbd::ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<drbd::StructureError>(m, "StructureError", PyExc_ValueError);
  py::register_exception<drbd::NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("name", [](const PyModel& p) { return p.model.name(); })
      .def_property_readonly("system", &PyModel::system)
      .def_property_readonly("blocks", [](const PyModel& p) { return p.model.block_ids(); })
      .def("rel", &PyModel::rel, py::arg("t"), py::arg("tol") = drbd::kDefaultRelTol,
           "Closed-form reliability at time t (read-once models).")
      .def("rel_curve", &PyModel::rel_curve, py::arg("t0"), py::arg("t1"), py::arg("steps"),
           py::arg("tol") = drbd::kDefaultRelTol, "List of (t, rel) over an inclusive grid.")
      .def("simulate", &PyModel::simulate, py::arg("t"), py::arg("n") = 1000000,
           py::arg("seed") = 0, py::arg("ci") = 99, py::arg("workers") = 1,
           "Monte Carlo estimate: (rel_hat, ci_half_width). Deterministic in (n, seed).")
      .def("compare", &PyModel::compare, py::arg("t"), py::arg("sigmas") = 3.0,
           py::arg("n") = 1000000, py::arg("seed") = 0, py::arg("ci") = 99,
           py::arg("workers") = 1, "Cross-check the formula against the Monte Carlo oracle.")
      .def("simplify", &PyModel::simplify, py::arg("expand") = false,
           py::arg("max_steps") = 10000, "Normal form of the structure function.");

  m.def("parse", &parse, py::arg("text"), py::arg("name") = "model",
        "Parse a model document into a Model.");
  m.def("case_study", &case_study_py, py::arg("name"),
        py::arg("rates") = std::map<std::string, double>{},
        py::arg("dormancy") = std::map<std::string, double>{},
        "Built-in case studies: dbw, sen, sen-nospare.");
}
