#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kirchhoff2d/calculus/suite.hpp"
#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/gevrey.hpp"
#include "kirchhoff2d/output.hpp"
#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/scenario.hpp"

namespace py = pybind11;
using namespace kirchhoff2d;

namespace {

py::dict added_mass_py(const std::string& kind, double radius, double a, double b, int panels, double mass,
                       double inertia) {
  ShapeSpec shape_opts;
  shape_opts.kind = kind;
  shape_opts.radius = radius;
  shape_opts.a = a;
  shape_opts.b = b;
  RigidState st;
  PanelSystem p = build_panels(shape_opts.build(), st, panels);
  AddedMassTensor m = added_mass(p, st);
  m = make_added_mass(m.m2, mass, inertia, m.raw_asymmetry);
  py::dict d;
  d["m1"] = m.m1;
  d["m2"] = m.m2;
  d["m"] = m.m;
  d["asymmetry"] = m.raw_asymmetry;
  return d;
}

// the trajectory as CSV text plus a few scalars; the Python side parses it
py::dict run_py(const std::string& config_text, std::optional<double> dt, std::optional<int> panels) {
  Scenario s = parse_scenario_text(config_text);
  RunOptions o;
  o.dt = dt;
  o.panels = panels;
  Trajectory tr;
  {
    py::gil_scoped_release release;
    tr = run(s, o);
  }
  ConservationReport c = conservation_report(tr);
  py::dict d;
  d["csv"] = trajectory_csv(tr);
  d["status"] = tr.status;
  d["gamma_drift"] = c.gamma;
  d["normal_residual"] = c.normal_residual;
  d["metadata"] = run_metadata(s, tr).dump();
  return d;
}

py::dict verify_py(int max_k, int max_n, int bound_k, int bound_n, int instances, std::uint64_t seed) {
  calculus::SuiteOptions o{max_k, max_n, bound_k, bound_n, instances, seed};
  calculus::SuiteReport rep;
  {
    py::gil_scoped_release release;
    rep = calculus::run_identity_suite(o);
  }
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["cases"] = c.cases;
    e["detail"] = c.detail;
    e["seconds"] = c.seconds;
    checks.append(e);
  }
  py::dict d;
  d["passed"] = rep.passed();
  d["checks"] = checks;
  d["coefficients_csv"] = calculus::coefficient_csv(rep.coefficients);
  return d;
}

py::dict fit_py(const std::vector<double>& magnitudes) {
  DerivativeSequence s;
  for (size_t k = 0; k < magnitudes.size(); ++k) {
    s.orders.push_back(int(k));
    s.magnitudes.push_back(magnitudes[k]);
    s.noise.push_back(0);
  }
  GevreyFit f = fit_gevrey(s);
  py::dict d;
  d["C"] = f.C;
  d["L"] = f.L;
  d["M"] = f.M;
  d["residual"] = f.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rigid body and point vortices in a 2D ideal fluid";
  // translators run newest first, so the base class goes in before ConfigError
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("added_mass", &added_mass_py, py::arg("shape") = "disc", py::arg("radius") = 1.0, py::arg("a") = 1.0,
        py::arg("b") = 1.0, py::arg("panels") = 256, py::arg("mass") = 1.0, py::arg("inertia") = 1.0);
  m.def("preset_names", &preset_names);
  m.def("preset_text", &preset_scenario_text);
  m.def("scenario_json", [](const std::string& text) { return scenario_to_json(parse_scenario_text(text)).dump(); });
  m.def("serialize_scenario", [](const std::string& text) { return serialize_scenario(parse_scenario_text(text)); });
  m.def("run", &run_py, py::arg("config_text"), py::arg("dt") = py::none(), py::arg("panels") = py::none());
  m.def("verify_identities", &verify_py, py::arg("max_k") = 4, py::arg("max_n") = 3, py::arg("bound_k") = 6,
        py::arg("bound_n") = 4, py::arg("instances") = 20, py::arg("seed") = 1);
  m.def("upsilon_sum", [](int s, int mm) { return calculus::upsilon_sum(s, mm).get_str(); });
  m.def("fit_gevrey", &fit_py, py::arg("magnitudes"));
  m.def("synthetic_sequence", [](double C, double L, double M, int K) { return synthetic_sequence(C, L, M, K).magnitudes; });
}
