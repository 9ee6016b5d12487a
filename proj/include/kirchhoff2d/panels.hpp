#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "kirchhoff2d/geometry.hpp"

namespace kirchhoff2d {

struct PanelOptions {
  int upsample = 8;          // factor for near-boundary evaluation
  double near_factor = 5.0;  // targets closer than this many panel lengths use the fine grid
  double compat_tol = 1e-6;
};

// Nystrom discretisation on the uniform parameter grid.  Normals point into the
// solid.  The operators only depend on the body-frame geometry, so a system can
// be moved rigidly without reassembly.
class PanelSystem {
 public:
  int size() const { return n_; }
  const BodyShape& shape() const { return ops_->shape; }
  const PanelOptions& options() const { return ops_->opts; }
  Vec2 h() const { return h_; }
  double theta() const { return theta_; }

  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::vector<Vec2>& normals() const { return normals_; }
  const std::vector<Vec2>& tangents() const { return tangents_; }
  const Eigen::VectorXd& weights() const { return ops_->weights; }
  const Eigen::VectorXd& params() const { return ops_->params; }
  const Eigen::VectorXd& speeds() const { return ops_->speeds; }
  double max_panel_length() const { return ops_->max_len; }

  // (S f)_i = int G(x_i, y) f(y) ds_y with G = ln|x - y| / (2 pi)
  const Eigen::MatrixXd& single_layer() const { return ops_->S; }
  // principal value of the normal derivative along the outward (solid) normal
  const Eigen::MatrixXd& normal_derivative() const { return ops_->Kp; }
  const Eigen::MatrixXd& spectral_diff() const { return ops_->Dt; }

  // d/ds of periodic node values
  Eigen::VectorXd arclength_derivative(const Eigen::VectorXd& f) const;
  // world-frame nabla^2 rho at node i (exterior limit)
  Mat2 boundary_hessian(int i) const;

  PanelSystem moved(const Vec2& h, double theta) const;
  PanelSystem moved(const RigidState& s) const { return moved(s.h, s.theta); }

  // fine grid for near-boundary quadrature
  const std::vector<Vec2>& fine_nodes() const { return fine_nodes_; }
  const Eigen::MatrixXd& fine_interp() const { return ops_->P; }
  double fine_weight() const { return ops_->fine_w; }

  // solve [A 1; w^T 0][sigma; lambda] = [g; 0], A = -(1/2 + K')
  Eigen::VectorXd solve_augmented(const Eigen::VectorXd& g, double* lambda) const;

  friend PanelSystem build_panels(const BodyShape&, const RigidState&, int, PanelOptions);

 private:
  struct Operators {
    BodyShape shape = BodyShape::disc(1.0);
    PanelOptions opts;
    Eigen::VectorXd params, weights, speeds;
    std::vector<Vec2> body_nodes, body_normals, body_tangents, body_fine;
    std::vector<Mat2> body_hessians;
    Eigen::MatrixXd S, Kp, Dt, P;
    double fine_w = 0, max_len = 0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  };
  int n_ = 0;
  Vec2 h_ = Vec2::Zero();
  double theta_ = 0;
  std::shared_ptr<const Operators> ops_;
  std::vector<Vec2> nodes_, normals_, tangents_, fine_nodes_;
};

PanelSystem build_panels(const BodyShape& shape, const RigidState& state, int n_panels,
                         PanelOptions opts = {});

struct HarmonicPotential {
  Eigen::VectorXd density;      // single-layer density per unit length at the nodes
  double total_density = 0.0;   // sum density * weight
  double multiplier = 0.0;      // Lagrange multiplier absorbing the compatibility defect
  Eigen::VectorXd trace;        // exterior boundary values at the nodes
  Eigen::VectorXd normal_trace; // d/dn at the nodes reproduced by the density
  Eigen::VectorXd fine_density; // density * speed on the upsampled parameter grid

  HarmonicPotential scaled(double a) const;
  HarmonicPotential& axpy(double a, const HarmonicPotential& o);
};

struct NeumannSolve {
  double compatibility = 0.0;  // |sum g w|
};

HarmonicPotential solve_exterior_neumann(const PanelSystem& panels, const Eigen::VectorXd& g,
                                         NeumannSolve* info = nullptr);
// density given directly (zero mean enforced by the caller)
HarmonicPotential potential_from_density(const PanelSystem& panels, Eigen::VectorXd density);

double potential_value(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x);
Vec2 potential_gradient(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x);
Mat2 potential_hessian(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x);
// exterior limit of the gradient at every node
std::vector<Vec2> boundary_gradient(const HarmonicPotential& pot, const PanelSystem& panels);
// max |d/dn Phi - g| at the parameter midpoints between nodes
double neumann_residual(const HarmonicPotential& pot, const PanelSystem& panels,
                        const std::function<double(double)>& g_of_param);

// K_a at the nodes, a = 1, 2, 3
Eigen::VectorXd neumann_data_K(const PanelSystem& panels, const RigidState& state, int a);
double neumann_K_at(const PanelSystem& panels, const RigidState& state, int a, double s);

struct AddedMassTensor {
  Eigen::Matrix3d m1 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d m2 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  double raw_asymmetry = 0.0;  // ||M2 - M2^T|| before symmetrising
  Eigen::LLT<Eigen::Matrix3d> factor;

  Eigen::Vector3d solve(const Eigen::Vector3d& rhs) const { return factor.solve(rhs); }
};

// Block rotation acting on (ell, r) coordinates
Eigen::Matrix3d block_rotation(double theta);

// Kirchhoff potentials solved once in the body frame
class KirchhoffPotentials {
 public:
  explicit KirchhoffPotentials(const PanelSystem& body_panels);
  const HarmonicPotential& body(int a) const { return phi_[a - 1]; }
  // potentials for the pose of `panels` (moved from the body frame)
  std::array<HarmonicPotential, 3> world(double theta) const;
  Eigen::Matrix3d m2_body() const { return m2_; }
  Eigen::Matrix3d m2_world(double theta) const;
  double raw_asymmetry() const { return asym_; }

 private:
  std::array<HarmonicPotential, 3> phi_;
  Eigen::Matrix3d m2_;
  double asym_ = 0;
  double theta0_ = 0;
};

AddedMassTensor make_added_mass(const Eigen::Matrix3d& m2, double mass, double inertia,
                                double raw_asymmetry = 0.0);
AddedMassTensor added_mass(const PanelSystem& panels, const RigidState& state);

double invariance_check(const BodyShape& shape, const RigidState& s1, const RigidState& s2,
                        int n_panels = 256);

}  // namespace kirchhoff2d
