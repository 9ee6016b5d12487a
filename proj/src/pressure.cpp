#include "kirchhoff2d/pressure.hpp"

#include <cmath>
#include <numbers>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

namespace {
constexpr double kInv2Pi = 0.5 / std::numbers::pi;
}

Eigen::VectorXd sigma_boundary_data(const PanelSystem& panels, const RigidState& state,
                                    const std::vector<Vec2>& u_nodes) {
  const int n = panels.size();
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) {
    const Vec2& x = panels.nodes()[i];
    const Vec2& nrm = panels.normals()[i];
    Vec2 us = solid_velocity(state, x);
    Vec2 w = u_nodes[i] - us;
    double curv = w.dot(panels.boundary_hessian(i) * w);
    Vec2 rot = state.r * perp(2 * u_nodes[i] - us - state.ell);
    sigma[i] = -curv - nrm.dot(rot);
  }
  return sigma;
}

Eigen::VectorXd sigma_boundary_data(const PanelSystem& panels, const RigidState& state,
                                    const std::function<Vec2(const Vec2&)>& velocity) {
  std::vector<Vec2> u(panels.size());
  for (int i = 0; i < panels.size(); ++i) u[i] = velocity(panels.nodes()[i]);
  return sigma_boundary_data(panels, state, u);
}

double PressureField::mu_omega(const Vec2& x) const {
  double m = 0;
  for (size_t i = 0; i < source_positions.size(); ++i) {
    Vec2 z = x - source_positions[i];
    double r2 = z.squaredNorm();
    if (r2 == 0.0) continue;
    double q, dq;
    blob_profile(r2, core_radius, q, dq);
    m -= source_strengths[i] * q * z.dot(source_vectors[i]);
  }
  return kInv2Pi * m;
}

Vec2 PressureField::mu_omega_gradient(const Vec2& x) const {
  Vec2 g = Vec2::Zero();
  for (size_t i = 0; i < source_positions.size(); ++i) {
    Vec2 z = x - source_positions[i];
    double r2 = z.squaredNorm();
    if (r2 == 0.0) continue;
    double q, dq;
    blob_profile(r2, core_radius, q, dq);
    const Vec2& a = source_vectors[i];
    g -= source_strengths[i] * (q * a + dq * z.dot(a) * z);
  }
  return kInv2Pi * g;
}

PressureField solve_mu(const FlowField& flow, PressureOptions opts,
                       const std::vector<Vec2>* particle_velocity) {
  const PanelSystem& panels = flow.panels();
  const VortexField& field = flow.field();
  const int n = panels.size();
  PressureField pf;
  pf.core_radius = field.core_radius;
  pf.source_positions = field.positions;
  pf.source_strengths = field.strengths;
  std::vector<Vec2> up = particle_velocity ? *particle_velocity : flow.particle_velocities();
  pf.source_vectors.resize(up.size());
  for (size_t i = 0; i < up.size(); ++i) pf.source_vectors[i] = perp(up[i]);

  const auto& u = flow.boundary_velocity();
  const auto& dnu = flow.boundary_normal_derivative();
  pf.boundary_data = sigma_boundary_data(panels, flow.state(), u);
  pf.chi_data.resize(n);
  pf.kinetic_trace.resize(n);
  pf.vortical_trace.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec2& x = panels.nodes()[i];
    double dn_omega = pf.mu_omega_gradient(x).dot(panels.normals()[i]);
    pf.chi_data[i] = pf.boundary_data[i] + u[i].dot(dnu[i]) - dn_omega;
    pf.kinetic_trace[i] = -0.5 * u[i].squaredNorm();
    pf.vortical_trace[i] = pf.mu_omega(x);
  }
  const Eigen::VectorXd& w = panels.weights();
  pf.compatibility = std::abs(pf.chi_data.dot(w));
  double scale = pf.chi_data.cwiseAbs().dot(w);
  pf.compatibility_relative = scale > 0 ? pf.compatibility / scale : 0.0;
  if (scale > 0 && pf.compatibility > opts.compat_tol * std::max(1.0, scale))
    throw IncompatibleData("mu Neumann data violates compatibility (relative defect " +
                           std::to_string(pf.compatibility_relative) + ")");
  double lambda = 0;
  pf.mu_density = potential_from_density(panels, panels.solve_augmented(pf.chi_data, &lambda));
  pf.mu_density.multiplier = lambda;
  pf.mu_trace = pf.kinetic_trace + pf.vortical_trace + pf.mu_density.trace;
  return pf;
}

double mu_value(const PressureField& mu, const FlowField& flow, const Vec2& x) {
  Vec2 u = flow.velocity(x).value;
  return -0.5 * u.squaredNorm() + mu.mu_omega(x) + potential_value(mu.mu_density, flow.panels(), x);
}

Vec2 mu_gradient(const PressureField& mu, const FlowField& flow, const Vec2& x) {
  VelocitySample s = flow.velocity(x, true);
  return -(*s.gradient * s.value) + mu.mu_omega_gradient(x) +
         potential_gradient(mu.mu_density, flow.panels(), x);
}

Eigen::Vector3d body_force_rhs(const PressureField& mu, const std::array<HarmonicPotential, 3>& kirchhoff,
                               const PanelSystem& panels, const RigidState& state) {
  const Eigen::VectorXd& w = panels.weights();
  Eigen::VectorXd outer = mu.kinetic_trace + mu.vortical_trace;
  Eigen::Vector3d rhs;
  for (int a = 1; a <= 3; ++a) {
    Eigen::VectorXd k = neumann_data_K(panels, state, a);
    rhs[a - 1] = kirchhoff[a - 1].trace.cwiseProduct(mu.chi_data).dot(w) + outer.cwiseProduct(k).dot(w);
  }
  return rhs;
}

Eigen::Vector3d body_force_rhs_direct(const PressureField& mu, const PanelSystem& panels,
                                      const RigidState& state) {
  Eigen::Vector3d rhs;
  for (int a = 1; a <= 3; ++a)
    rhs[a - 1] = mu.mu_trace.cwiseProduct(neumann_data_K(panels, state, a)).dot(panels.weights());
  return rhs;
}

}  // namespace kirchhoff2d
