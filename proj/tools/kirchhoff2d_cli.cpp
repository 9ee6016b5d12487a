#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <Eigen/Dense>

#include "kirchhoff2d/calculus/suite.hpp"
#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/gevrey.hpp"
#include "kirchhoff2d/output.hpp"
#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/scenario.hpp"

using namespace kirchhoff2d;
namespace fs = std::filesystem;

namespace {

// a file path, or the name of a shipped preset
Scenario load_scenario(const std::string& what) {
  if (fs::exists(what)) return parse_scenario(what);
  std::string name = fs::path(what).stem().string();
  for (const auto& p : preset_names())
    if (p == name) return parse_scenario_text(preset_scenario_text(name));
  throw ConfigError("no such file or preset: " + what);
}

void print_matrix(const char* name, const Eigen::Matrix3d& m) {
  std::printf("%s =\n", name);
  for (int i = 0; i < 3; ++i) std::printf("  [% .8f % .8f % .8f]\n", m(i, 0), m(i, 1), m(i, 2));
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::ostringstream o;
  o.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int k = 0; k < m.cols(); ++k) o << (k ? "," : "") << m(i, k);
    o << "\n";
  }
  return o.str();
}

void dump_bem(const Scenario& s, int panels, const std::string& dir) {
  BodyShape shape = s.shape.build();
  PanelSystem p = build_panels(shape, s.initial_state(), panels);
  KirchhoffPotentials kp(build_panels(shape, RigidState{}, panels));
  fs::path d(dir);
  write_text((d / "single_layer.csv").string(), matrix_csv(p.single_layer()));
  write_text((d / "normal_derivative.csv").string(), matrix_csv(p.normal_derivative()));
  std::ostringstream nodes;
  nodes.precision(17);
  nodes << "x,y,nx,ny,weight,density1,density2,density3\n";
  for (int i = 0; i < p.size(); ++i) {
    nodes << p.nodes()[i].x() << "," << p.nodes()[i].y() << "," << p.normals()[i].x() << "," << p.normals()[i].y()
          << "," << p.weights()(i);
    for (int a = 1; a <= 3; ++a) nodes << "," << kp.body(a).density(i);
    nodes << "\n";
  }
  write_text((d / "nodes.csv").string(), nodes.str());
  write_text((d / "bem.json").string(), bem_dump(p).dump(1) + "\n");
}

int cmd_run(const std::string& config, const std::string& out, std::optional<double> dt, std::optional<int> panels,
            const std::string& dump) {
  Scenario s = load_scenario(config);
  if (dt) s.dt = *dt;
  if (panels) s.panels = *panels;
  s.validate();
  InitialCheck ic = check_initial_data(s);
  std::printf("scenario %s: %g time units, dt %g, %d panels\n", s.name.c_str(), s.duration, s.dt, s.panels);
  std::printf("initial normal residual %.3e\n", ic.normal_residual);
  if (!dump.empty()) dump_bem(s, s.panels, dump);
  Trajectory tr = run(s);
  std::string dir = out.empty() ? s.output : out;
  std::string csv = write_run(s, tr, dir);
  ConservationReport c = conservation_report(tr);
  std::printf("wrote %s (%zu samples)\n", csv.c_str(), tr.size());
  std::printf("status %s, gamma drift %.3e, normal residual %.3e\n", tr.status.c_str(), c.gamma, c.normal_residual);
  bool ok = tr.status == "ok" && c.gamma < 1e-6 && c.normal_residual < 1e-6;
  if (!ok) std::fprintf(stderr, "run failed its checks\n");
  return ok ? 0 : 1;
}

int cmd_added_mass(const std::string& config, ShapeSpec shape_opts, int panels) {
  RigidState st;
  double mass = 1, inertia = 1;
  if (!config.empty()) {
    Scenario s = load_scenario(config);
    shape_opts = s.shape;
    st = s.initial_state();
    mass = s.mass;
    inertia = s.inertia;
  }
  BodyShape shape = shape_opts.build();
  PanelSystem p = build_panels(shape, st, panels);
  AddedMassTensor m = added_mass(p, st);
  m = make_added_mass(m.m2, mass, inertia, m.raw_asymmetry);
  std::printf("shape %s, %d panels\n", shape_opts.kind.c_str(), panels);
  print_matrix("M1", m.m1);
  print_matrix("M2", m.m2);
  print_matrix("M", m.m);
  std::printf("asymmetry |M2 - M2^T| = %.3e\n", m.raw_asymmetry);
  return m.raw_asymmetry < 1e-10 ? 0 : 1;
}

int cmd_verify(const calculus::SuiteOptions& o, const std::string& out) {
  calculus::SuiteReport rep = calculus::run_identity_suite(o);
  std::cout << rep.summary();
  if (!out.empty()) {
    write_text((fs::path(out) / "coefficients.csv").string(), calculus::coefficient_csv(rep.coefficients));
    std::printf("wrote %zu coefficient rows to %s\n", rep.coefficients.size(), out.c_str());
  }
  std::printf("%s\n", rep.passed() ? "all identities verified" : "identity suite FAILED");
  return rep.passed() ? 0 : 1;
}

int cmd_gevrey(const std::string& csv, const std::string& out, int K) {
  auto report = trajectory_gevrey_report(read_csv(csv), K);
  auto j = gevrey_report_json(report);
  std::string dir = out.empty() ? fs::path(csv).parent_path().string() : out;
  if (dir.empty()) dir = ".";
  write_text((fs::path(dir) / "gevrey.json").string(), j.dump(2) + "\n");
  for (const auto& ch : report) {
    if (ch.status == "ok") write_text((fs::path(dir) / ("gevrey_" + ch.name + ".svg")).string(), gevrey_report_svg(ch));
    std::printf("%-6s %-16s M %7.3f  L %9.4f  C %9.3e  %s\n", ch.name.c_str(), ch.status.c_str(), ch.fit.M, ch.fit.L,
                ch.fit.C, ch.message.c_str());
  }
  std::printf("wrote %s/gevrey.json\n", dir.c_str());
  return 0;
}

int cmd_plot(const std::string& csv, const std::string& out, const std::string& x, std::vector<std::string> ys,
             bool log_y) {
  CsvTable t = read_csv(csv);
  if (t.index(x) < 0) throw ConfigError("no column '" + x + "' in " + csv);
  if (ys.empty())
    for (const auto& c : t.columns)
      if (c != x) ys.push_back(c);
  std::vector<PlotSeries> series;
  for (const auto& y : ys) {
    if (t.index(y) < 0) throw ConfigError("no column '" + y + "' in " + csv);
    series.push_back({y, t.column(x), t.column(y)});
  }
  std::string path = out.empty() ? (fs::path(csv).replace_extension(".svg")).string() : out;
  write_text(path, svg_plot(fs::path(csv).filename().string(), x, series, log_y));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigid body and vortices in a 2D ideal fluid"};
  app.require_subcommand(1);

  std::string config, out, dump;
  std::optional<double> dt;
  std::optional<int> panels;

  auto* run_c = app.add_subcommand("run", "integrate a scenario and write the trajectory");
  run_c->add_option("scenario", config, "config file or preset name");
  run_c->add_option("--config", config, "config file or preset name");
  run_c->add_option("--out", out, "output directory (default: the scenario's)");
  run_c->add_option("--dt", dt, "time step override")->check(CLI::PositiveNumber);
  run_c->add_option("--panels", panels, "panel count override")->check(CLI::Range(8, 1 << 14));
  run_c->add_option("--dump-bem", dump, "write influence matrices and densities as CSV to this directory");

  ShapeSpec shape_opts;
  int am_panels = 256;
  auto* am = app.add_subcommand("added-mass", "print M1, M2 and M for a shape");
  am->add_option("--config", config, "take shape, pose and inertia from a scenario");
  am->add_option("--shape", shape_opts.kind, "disc | ellipse")->check(CLI::IsMember({"disc", "ellipse"}));
  am->add_option("--radius", shape_opts.radius, "disc radius");
  am->add_option("--a", shape_opts.a, "ellipse semi-axis along x");
  am->add_option("--b", shape_opts.b, "ellipse semi-axis along y");
  am->add_option("--panels", am_panels, "panel count")->check(CLI::Range(8, 1 << 14));

  calculus::SuiteOptions so;
  std::string coeff_out;
  auto* vi = app.add_subcommand("verify-identities", "run the exact identity and bound suite");
  vi->add_option("--max-k", so.max_k, "highest order for the interior and boundary identities")
      ->check(CLI::Range(1, 8));
  vi->add_option("--max-n", so.max_n, "highest order for the low-frequency forms")->check(CLI::Range(0, 6));
  vi->add_option("--bound-k", so.bound_k, "highest order for the coefficient bounds")->check(CLI::Range(1, 10));
  vi->add_option("--bound-n", so.bound_n, "highest low-frequency order for the bounds")->check(CLI::Range(0, 6));
  vi->add_option("--instances", so.instances, "random instances per identity")->check(CLI::Range(1, 1000));
  vi->add_option("--seed", so.seed, "instance seed");
  vi->add_option("--out", coeff_out, "write the coefficient table CSV here");

  std::string csv;
  int K = 10;
  auto* gr = app.add_subcommand("gevrey-report", "fit derivative growth of trajectory channels");
  gr->add_option("trajectory", csv, "trajectory CSV")->required();
  gr->add_option("--out", out, "output directory (default: next to the CSV)");
  gr->add_option("--max-k", K, "highest derivative order")->check(CLI::Range(2, 30));

  std::string xcol = "t";
  std::vector<std::string> ycols;
  bool log_y = false;
  auto* pl = app.add_subcommand("plot", "SVG line plot of CSV columns");
  pl->add_option("csv", csv, "CSV file")->required();
  pl->add_option("--out", out, "SVG path (default: the CSV name with .svg)");
  pl->add_option("-x", xcol, "x column");
  pl->add_option("-y", ycols, "y columns (default: all others)")->delimiter(',');
  pl->add_flag("--log", log_y, "logarithmic y axis");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_c) {
      if (config.empty()) throw ConfigError("run needs a scenario");
      return cmd_run(config, out, dt, panels, dump);
    }
    if (*am) return cmd_added_mass(config, shape_opts, am_panels);
    if (*vi) {
      so.max_k = std::max(so.max_k, 1);
      so.bound_k = std::max(so.bound_k, so.max_k);
      so.bound_n = std::max(so.bound_n, so.max_n);
      return cmd_verify(so, coeff_out);
    }
    if (*gr) return cmd_gevrey(csv, out, K);
    if (*pl) return cmd_plot(csv, out, xcol, ycols, log_y);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
