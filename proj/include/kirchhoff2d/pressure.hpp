#pragma once

#include <array>
#include <functional>
#include <vector>

#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/vortex.hpp"

namespace kirchhoff2d {

// mu = -|u|^2/2 + mu_omega + chi, where -Lap(mu_omega) = div(omega u^perp) is
// carried by the particles and chi is a decaying harmonic single layer.
struct PressureField {
  // particle sources of the vortical part
  std::vector<Vec2> source_positions;
  std::vector<double> source_strengths;
  std::vector<Vec2> source_vectors;  // u^perp at the particles
  double core_radius = 0;

  Eigen::VectorXd boundary_data;     // sigma = d mu / dn at the nodes
  Eigen::VectorXd chi_data;          // Neumann data of the harmonic part
  HarmonicPotential mu_density;      // chi
  Eigen::VectorXd mu_trace;          // mu at the nodes
  Eigen::VectorXd kinetic_trace;     // -|u|^2/2 at the nodes
  Eigen::VectorXd vortical_trace;    // mu_omega at the nodes
  double compatibility = 0;          // |sum chi_data w|
  double compatibility_relative = 0; // the same divided by sum |chi_data| w

  double mu_omega(const Vec2& x) const;
  Vec2 mu_omega_gradient(const Vec2& x) const;
};

// sigma = -nabla^2 rho{w, w} - n.(r (2u - u_S - ell)^perp), w = u - u_S,
// rho positive in the fluid and n into the solid
Eigen::VectorXd sigma_boundary_data(const PanelSystem& panels, const RigidState& state,
                                    const std::vector<Vec2>& u_nodes);
Eigen::VectorXd sigma_boundary_data(const PanelSystem& panels, const RigidState& state,
                                    const std::function<Vec2(const Vec2&)>& velocity);

struct PressureOptions {
  double compat_tol = 1e-6;  // relative
};

// particle_velocity: u at the particles if already known
PressureField solve_mu(const FlowField& flow, PressureOptions opts = {},
                       const std::vector<Vec2>* particle_velocity = nullptr);

double mu_value(const PressureField& mu, const FlowField& flow, const Vec2& x);
Vec2 mu_gradient(const PressureField& mu, const FlowField& flow, const Vec2& x);

// (int grad mu . grad Phi_a) through Phi_a: sum Phi_a chi_data w + sum (mu - chi) K_a w
Eigen::Vector3d body_force_rhs(const PressureField& mu, const std::array<HarmonicPotential, 3>& kirchhoff,
                               const PanelSystem& panels, const RigidState& state);
// the same pairing as sum mu K_a w
Eigen::Vector3d body_force_rhs_direct(const PressureField& mu, const PanelSystem& panels,
                                      const RigidState& state);

}  // namespace kirchhoff2d
