#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kirchhoff2d/geometry.hpp"
#include "kirchhoff2d/panels.hpp"

namespace kirchhoff2d {

struct VortexField {
  std::vector<Vec2> positions;
  std::vector<double> strengths;  // particle circulations
  std::vector<double> areas;      // carrier areas, vorticity = strength / area
  double core_radius = 0.0;       // 0 means point vortices
  double gamma = 0.0;             // bound circulation around the body

  size_t size() const { return positions.size(); }
  double total_strength() const;
  void validate() const;
};

// gradient(k, l) = d_k u_l
struct VelocitySample {
  Vec2 value = Vec2::Zero();
  std::optional<Mat2> gradient;
};

Vec2 biot_savart_kernel(const Vec2& x);
Mat2 biot_savart_gradient(const Vec2& x);
// Gaussian (Lamb-Oseen) blob: H(x) (1 - exp(-|x|^2/eps^2)); eps = 0 gives H
Vec2 blob_kernel(const Vec2& x, double eps);
Mat2 blob_kernel_gradient(const Vec2& x, double eps);
// radial profile q with blob_kernel = q(|x|) x^perp / (2 pi), and q'(r)/r
void blob_profile(double r2, double eps, double& q, double& dq_over_r);

// skip excludes one particle (self-induction)
VelocitySample free_space_velocity(const VortexField& field, const Vec2& x,
                                   bool with_gradient = false, int skip = -1);

double default_core_radius(const std::vector<Vec2>& positions);

// Boundary-corrected velocity u = u_free + grad phi + beta H(x - h) for one
// configuration: (u - u_S).n = 0 at the nodes and the circulation is gamma.
class FlowField {
 public:
  FlowField(const PanelSystem& panels, const RigidState& state, const VortexField& field);

  VelocitySample velocity(const Vec2& x, bool with_gradient = false, int skip = -1) const;
  std::vector<Vec2> particle_velocities() const;

  const PanelSystem& panels() const { return panels_; }
  const RigidState& state() const { return state_; }
  const VortexField& field() const { return field_; }
  const HarmonicPotential& correction() const { return phi_; }
  double beta() const { return beta_; }

  // exterior limits at the nodes
  const std::vector<Vec2>& boundary_velocity() const { return u_nodes_; }
  const std::vector<Vec2>& boundary_normal_derivative() const { return dnu_nodes_; }
  double normal_residual() const;   // max |(u - u_S).n| at the nodes
  double circulation() const;       // trapezoidal sum of u.tau ds
  double compatibility() const { return compat_; }

 private:
  PanelSystem panels_;
  RigidState state_;
  VortexField field_;
  HarmonicPotential phi_;
  double beta_ = 0, compat_ = 0;
  std::vector<Vec2> u_nodes_, dnu_nodes_;
};

VelocitySample boundary_corrected_velocity(const VortexField& field, const PanelSystem& panels,
                                           const RigidState& state, const Vec2& x);

using BatchVelocity = std::function<std::vector<Vec2>(const std::vector<Vec2>&)>;
using TimeVelocity = std::function<Vec2(double, const Vec2&)>;

struct AdvectLog {
  int reflections = 0;
  std::vector<int> reflected;  // particle indices
};

// mirror particles that ended up inside the body back across the boundary
int reflect_particles(std::vector<Vec2>& positions, const BodyShape& shape, const RigidState& pose,
                      AdvectLog* log = nullptr);

VortexField advect(const VortexField& field, const BatchVelocity& velocity, double dt,
                   const BodyShape* shape = nullptr, const RigidState* pose = nullptr,
                   AdvectLog* log = nullptr);

// inside(t, x) reports body contact
Vec2 flow_map(const TimeVelocity& velocity, const Vec2& x0, double t0, double t1, double dt,
              const std::function<bool(double, const Vec2&)>& inside = {});

struct ConservedQuantities {
  double gamma = 0;
  double total_vorticity = 0;
  double lp[4] = {0, 0, 0, 0};  // p = 1, 2, 4, inf
  double circulation_quadrature = 0;
};

ConservedQuantities conserved_quantities(const VortexField& field, const FlowField* flow = nullptr);

struct LogLipschitz {
  double sup_norm = 0;
  double modulus = 0;            // max |f(x)-f(y)| / (|x-y| (1 + ln^-|x-y|))
  double lipschitz_quotient = 0; // max |f(x)-f(y)| / |x-y|
  double value() const { return sup_norm + modulus; }
};

LogLipschitz log_lipschitz_seminorm(const std::function<Vec2(const Vec2&)>& f,
                                    const std::vector<Vec2>& points);

}  // namespace kirchhoff2d
