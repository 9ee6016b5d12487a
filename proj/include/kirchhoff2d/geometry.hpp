#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace kirchhoff2d {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct RigidState {
  Vec2 h = Vec2::Zero();
  double theta = 0.0;
  Vec2 ell = Vec2::Zero();
  double r = 0.0;
  double mass = 1.0;
  double inertia = 1.0;

  void validate() const;  // throws std::invalid_argument
};

struct RigidMotion {
  Vec2 translation = Vec2::Zero();
  double rotation_angle = 0.0;

  // x -> Q x + translation
  Vec2 apply(const Vec2& x) const;
  RigidMotion inverse() const;
  RigidMotion compose(const RigidMotion& inner) const;  // this o inner
};

Mat2 rotation_matrix(double theta);
Vec2 perp(const Vec2& v);
Vec2 solid_velocity(const RigidState& state, const Vec2& x);
// h + Q(theta)(x - h0), with h = motion.translation
Vec2 body_map(const RigidMotion& motion, const Vec2& h0, const Vec2& x);

// Symmetric 2-tensor of order s stored by components c[j] = d1^(s-j) d2^j.
struct SymTensor {
  int order = 0;
  std::vector<double> c;

  double component(int n2) const { return c[n2]; }
  // T{v, ..., v}
  double contract(const Vec2& v) const;
  // T{v, w} for order 2
  double bilinear(const Vec2& v, const Vec2& w) const;
  Mat2 matrix() const;  // order 2 only
  // sup over unit v of |T{v,...,v}|
  double norm() const;
};

struct DistanceJet {
  double rho = 0.0;               // signed: positive in the fluid
  double foot_param = 0.0;        // parameter of the nearest boundary point
  Vec2 foot = Vec2::Zero();
  std::vector<SymTensor> grad;    // grad[s-1] holds nabla^s rho

  const SymTensor& d(int s) const { return grad.at(s - 1); }
};

// x(s) = sum_k xc[k] cos(ks) + xs[k] sin(ks), same for y; body coordinates
// relative to the centre of mass.
struct FourierCoeffs {
  std::vector<double> xc, xs, yc, ys;
  int modes() const;
  bool operator==(const FourierCoeffs&) const = default;
};

class BodyShape {
 public:
  enum class Kind { disc, ellipse, fourier };

  static BodyShape disc(double radius);
  static BodyShape ellipse(double a, double b);
  // gevrey_constant <= 0 picks the default 2 max(1, 1/min radius of curvature)
  static BodyShape fourier(FourierCoeffs coeffs, double gevrey_order = 1.0,
                           double gevrey_constant = 0.0);

  Kind kind() const { return kind_; }
  const FourierCoeffs& coeffs() const { return coeffs_; }
  double radius() const { return p1_; }          // disc
  double semi_axis_a() const { return p1_; }     // ellipse, along body x
  double semi_axis_b() const { return p2_; }
  double gevrey_order() const { return gevrey_order_; }
  double gevrey_constant() const { return gevrey_constant_; }

  // m-th derivative of the parametrisation
  Vec2 derivative(double s, int m) const;
  Vec2 point(double s) const { return derivative(s, 0); }
  double speed(double s) const { return derivative(s, 1).norm(); }
  Vec2 unit_tangent(double s) const;
  // into the solid (out of the fluid): perp of the counter-clockwise tangent
  Vec2 normal(double s) const;
  double curvature(double s) const;  // positive where convex

  double perimeter() const { return info_->perimeter; }
  double area() const { return info_->area; }
  double diameter() const { return info_->diameter; }
  double min_radius_of_curvature() const { return info_->min_roc; }
  bool convex() const { return info_->min_concave_roc <= 0.0; }

  double collar_width() const;  // exterior side
  double inner_collar_width() const { return 0.2 * info_->min_roc; }
  void set_collar_width(double w) { collar_override_ = w; }

  // body-frame queries
  double project(const Vec2& x) const;  // parameter of nearest boundary point
  double signed_distance(const Vec2& x) const;
  DistanceJet distance(const Vec2& x, int order) const;
  // jet at a point known to lie on the curve at parameter s
  DistanceJet boundary_distance(double s, int order) const;

  BodyShape rotated(double beta) const;
  bool same_as(const BodyShape& o) const;

 private:
  struct Info {
    double perimeter = 0, area = 0, diameter = 0, min_roc = 0, min_concave_roc = 0;
    std::vector<double> sample_s;
    std::vector<Vec2> sample_x;
  };
  BodyShape() = default;
  void finish();
  double newton_project(const Vec2& x, double s0) const;
  DistanceJet jet_at(const Vec2& x, double s_star, int order) const;

  Kind kind_ = Kind::fourier;
  FourierCoeffs coeffs_;
  double p1_ = 0, p2_ = 0;
  double gevrey_order_ = 1.0, gevrey_constant_ = 2.0;
  double collar_override_ = 0.0;
  std::shared_ptr<const Info> info_;
};

// x in body coordinates
DistanceJet distance_and_derivatives(const BodyShape& shape, const Vec2& x, int order);

// world-frame version: pulls x back through the rigid motion (h, theta) and
// pushes the tensors forward
DistanceJet distance_and_derivatives(const BodyShape& shape, const RigidState& state,
                                     const Vec2& x, int order);

SymTensor rotate_tensor(const SymTensor& t, double theta);

}  // namespace kirchhoff2d
