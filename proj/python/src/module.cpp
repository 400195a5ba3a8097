#include "bellcut/cli.hpp"
#include "bellcut/errors.hpp"
#include "bellcut/inequalities.hpp"
#include "bellcut/io.hpp"
#include "bellcut/sdp.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bellcut;

namespace {

SdpOptions options(double gap_tol, int max_iterations) {
  SdpOptions o;
  o.gap_tol = gap_tol;
  o.max_iterations = max_iterations;
  return o;
}

py::dict solution_dict(const SdpSolution& s) {
  py::dict d;
  d["value"] = s.value;
  d["dual_bound"] = s.dual_bound;
  d["gram"] = s.gram;
  d["vectors"] = s.vectors;
  d["edge_values"] = s.edge_values;
  d["active_constraints"] = s.active_constraints;
  d["iterations"] = s.iterations;
  return d;
}

py::dict membership_dict(const MembershipResult& r) {
  py::dict d;
  d["member"] = r.member;
  d["boundary"] = r.boundary;
  d["margin"] = r.margin;
  d["lower_bound"] = r.lower_bound;
  d["iterations"] = r.iterations;
  if (r.member) d["completion"] = r.completion;
  else {
    d["separator"] = r.separator;
    d["separator_value"] = r.separator_value;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the bellcut package";
  m.attr("__version__") = BELLCUT_VERSION;

  static py::exception<GuardError> guard_error(m, "GuardError", PyExc_RuntimeError);
  static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GuardError& e) {
      py::set_error(guard_error, e.what());
    } catch (const ConvergenceError& e) {
      py::set_error(convergence_error, e.what());
    } catch (const ValidationError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, in, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("input") = "", "Run a bellcut subcommand; returns (exit code, stdout, stderr).");

  m.def("catalog_names", &catalog_names);
  m.def(
      "catalog", [](const std::string& name) { return inequality_json(catalog_entry(name)).dump(); }, py::arg("name"),
      "Named inequality as a JSON string.");

  m.def(
      "elliptope_max",
      [](std::vector<double> weights, int rows, int cols, bool suspended, bool rmet, double gap_tol, int max_iterations) {
        const EdgeWeightedObjective obj{suspended, rows, cols, std::move(weights), 0};
        const auto o = options(gap_tol, max_iterations);
        py::gil_scoped_release release;
        const SdpSolution s = rmet ? elliptope_rmet_max(obj, o) : elliptope_max(obj, o);
        py::gil_scoped_acquire acquire;
        return solution_dict(s);
      },
      py::arg("weights"), py::arg("rows"), py::arg("cols"), py::arg("suspended") = false, py::arg("rmet") = false,
      py::arg("gap_tol") = SdpOptions{}.gap_tol, py::arg("max_iterations") = SdpOptions{}.max_iterations,
      "Maximize sum_e w_e H_e over unit-diagonal PSD H, optionally intersected with RMet.");

  m.def(
      "elliptope_membership",
      [](std::vector<double> values, int rows, int cols, bool suspended) {
        MembershipResult r;
        if (suspended) r = elliptope_membership(SuspensionVector<double>(SuspensionShape(rows, cols), std::move(values)));
        else r = elliptope_membership(CorrelationVector<double>(BipartiteShape(rows, cols), std::move(values)));
        return membership_dict(r);
      },
      py::arg("values"), py::arg("rows"), py::arg("cols"), py::arg("suspended") = false);

  m.def(
      "cut_condition",
      [](std::vector<double> values, int rows, int cols) {
        const CutConditionResult r = cut_condition(CorrelationVector<double>(BipartiteShape(rows, cols), std::move(values)));
        py::dict d;
        d["passes"] = r.passes;
        d["y"] = r.y;
        d["violation"] = r.violation;
        return d;
      },
      py::arg("values"), py::arg("rows"), py::arg("cols"));
}
