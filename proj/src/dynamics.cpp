#include "kirchhoff2d/dynamics.hpp"

#include <cmath>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

Simulator::Simulator(const BodyShape& shape, SimOptions opts)
    : shape_(shape),
      opts_(opts),
      body_(build_panels(shape, RigidState{}, opts.panels, opts.panel_options)),
      kirchhoff_(body_) {}

AddedMassTensor Simulator::added_mass(const RigidState& s) const {
  return make_added_mass(kirchhoff_.m2_world(s.theta), s.mass, s.inertia, kirchhoff_.raw_asymmetry());
}

Evaluation Simulator::evaluate(const RigidState& s, const VortexField& f) const {
  PanelSystem panels = body_.moved(s);
  FlowField flow(panels, s, f);
  Evaluation e;
  e.particle_velocity = flow.particle_velocities();
  PressureField mu = solve_mu(flow, opts_.pressure, &e.particle_velocity);
  e.rhs = body_force_rhs(mu, kirchhoff_.world(s.theta), panels, s);
  e.accel = added_mass(s).solve(e.rhs);
  e.normal_residual = flow.normal_residual();
  e.circulation = flow.circulation();
  e.compatibility = mu.compatibility_relative;
  return e;
}

namespace {

struct Rate {
  Vec2 h;
  double theta;
  Eigen::Vector3d q;
  std::vector<Vec2> x;
};

Rate rate_of(const RigidState& s, const Evaluation& e) {
  return {s.ell, s.r, e.accel, e.particle_velocity};
}

void shift(const SimState& base, const Rate& k, double a, RigidState& s, VortexField& f) {
  s = base.rigid;
  s.h += a * k.h;
  s.theta += a * k.theta;
  s.ell += a * k.q.head<2>();
  s.r += a * k.q[2];
  f = base.field;
  for (size_t i = 0; i < f.size(); ++i) f.positions[i] += a * k.x[i];
}

}  // namespace

SimState Simulator::step(const SimState& state, double dt, StepLog* log, const Evaluation* first) const {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  StepLog local;
  StepLog& lg = log ? *log : local;
  auto note = [&](const Evaluation& e) {
    lg.max_normal_residual = std::max(lg.max_normal_residual, e.normal_residual);
    lg.max_compatibility = std::max(lg.max_compatibility, e.compatibility);
  };

  Evaluation e1 = first ? *first : evaluate(state.rigid, state.field);
  note(e1);
  Rate k1 = rate_of(state.rigid, e1);
  RigidState s;
  VortexField f;
  shift(state, k1, dt / 2, s, f);
  Evaluation e2 = evaluate(s, f);
  note(e2);
  Rate k2 = rate_of(s, e2);
  shift(state, k2, dt / 2, s, f);
  Evaluation e3 = evaluate(s, f);
  note(e3);
  Rate k3 = rate_of(s, e3);
  shift(state, k3, dt, s, f);
  Evaluation e4 = evaluate(s, f);
  note(e4);
  Rate k4 = rate_of(s, e4);

  SimState out = state;
  const double c = dt / 6;
  out.rigid.h += c * (k1.h + 2 * k2.h + 2 * k3.h + k4.h);
  out.rigid.theta += c * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
  Eigen::Vector3d dq = c * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
  out.rigid.ell += dq.head<2>();
  out.rigid.r += dq[2];
  for (size_t i = 0; i < out.field.size(); ++i)
    out.field.positions[i] += c * (k1.x[i] + 2 * k2.x[i] + 2 * k3.x[i] + k4.x[i]);
  out.time = state.time + dt;

  if (out.field.size() > 0) {
    int n = reflect_particles(out.field.positions, shape_, out.rigid);
    lg.reflections += n;
    if (n > opts_.collision_fraction * static_cast<double>(out.field.size()))
      throw CollisionFlag(std::to_string(n) + " of " + std::to_string(out.field.size()) +
                          " particles crossed the boundary at t = " + std::to_string(out.time));
  }
  out.diagnostics = conserved_quantities(out.field);
  return out;
}

ConservationReport conservation_report(const Trajectory& traj) {
  ConservationReport rep;
  if (traj.size() == 0) return rep;
  const ConservedQuantities& c0 = traj.conserved.front();
  auto rel = [](double v, double v0) { return std::abs(v - v0) / std::max(std::abs(v0), 1.0); };
  for (size_t i = 0; i < traj.size(); ++i) {
    const ConservedQuantities& c = traj.conserved[i];
    rep.gamma = std::max(rep.gamma, traj.gamma_drift[i]);
    rep.total_vorticity = std::max(rep.total_vorticity, rel(c.total_vorticity, c0.total_vorticity));
    for (int p = 0; p < 4; ++p) rep.lp[p] = std::max(rep.lp[p], rel(c.lp[p], c0.lp[p]));
    rep.normal_residual = std::max(rep.normal_residual, traj.normal_residual[i]);
  }
  return rep;
}

Trajectory run(const Simulator& sim, SimState state, double dt, double duration, bool catch_errors) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(duration >= 0)) throw std::invalid_argument("duration must be non-negative");
  Trajectory tr;
  state.diagnostics = conserved_quantities(state.field);
  const double sum0 = state.diagnostics.total_vorticity;
  const double t0 = state.time;

  double gamma0 = 0;
  auto record = [&](const SimState& s, const Evaluation& e) {
    if (tr.t.empty()) gamma0 = e.circulation;
    tr.t.push_back(s.time);
    tr.h.push_back(s.rigid.h);
    tr.theta.push_back(s.rigid.theta);
    tr.ell.push_back(s.rigid.ell);
    tr.r.push_back(s.rigid.r);
    tr.force.push_back(e.rhs);
    tr.gamma_drift.push_back(std::abs(e.circulation - gamma0) / std::max(std::abs(gamma0), 1.0));
    tr.sumG_drift.push_back(std::abs(s.diagnostics.total_vorticity - sum0) / std::max(std::abs(sum0), 1.0));
    tr.normal_residual.push_back(e.normal_residual);
    tr.compatibility.push_back(e.compatibility);
    ConservedQuantities c = s.diagnostics;
    c.circulation_quadrature = e.circulation;
    tr.conserved.push_back(c);
  };

  // whole steps, with a shorter last one if dt does not divide the duration
  double ratio = duration / dt;
  long long steps = std::llround(ratio);
  bool exact = std::abs(ratio - static_cast<double>(steps)) <= 1e-9 * std::max(1.0, ratio);
  if (!exact) steps = static_cast<long long>(std::ceil(ratio));

  try {
    Evaluation e = sim.evaluate(state.rigid, state.field);
    record(state, e);
    for (long long k = 1; k <= steps; ++k) {
      double t_next = (k == steps) ? t0 + duration : t0 + static_cast<double>(k) * dt;
      StepLog log;
      SimState next = sim.step(state, t_next - state.time, &log, &e);
      next.time = t_next;
      tr.reflections += log.reflections;
      e = sim.evaluate(next.rigid, next.field);
      state = std::move(next);
      record(state, e);
    }
  } catch (const Error& err) {
    if (!catch_errors) throw;
    tr.status = err.what();
  }
  return tr;
}

Trajectory run(const Scenario& sc, RunOptions opts) {
  sc.validate();
  SimOptions so;
  so.panels = opts.panels.value_or(sc.panels);
  Simulator sim(sc.shape.build(), so);
  SimState s;
  s.rigid = sc.initial_state();
  s.field = sc.initial_field();
  return run(sim, s, opts.dt.value_or(sc.dt), sc.duration, opts.catch_errors);
}

}  // namespace kirchhoff2d
