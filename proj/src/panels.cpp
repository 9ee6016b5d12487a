#include "kirchhoff2d/panels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInv2Pi = 0.5 / std::numbers::pi;

// periodic sinc interpolant for an even number of nodes
double periodic_sinc(int n, double x) {
  double t = std::tan(0.5 * x);
  if (std::abs(t) < 1e-14) return 1.0;
  return std::sin(0.5 * n * x) / (n * t);
}
}  // namespace

PanelSystem build_panels(const BodyShape& shape, const RigidState& state, int n, PanelOptions opts) {
  if (n < 16) throw std::invalid_argument("need at least 16 panels");
  if (n % 2) throw std::invalid_argument("panel count must be even");
  auto ops = std::make_shared<PanelSystem::Operators>();
  ops->shape = shape;
  ops->opts = opts;
  const double dt = 2 * kPi / n;
  ops->params.resize(n);
  ops->speeds.resize(n);
  ops->weights.resize(n);
  Eigen::VectorXd kappa(n);
  for (int j = 0; j < n; ++j) {
    double t = dt * j;
    ops->params[j] = t;
    ops->speeds[j] = shape.speed(t);
    ops->weights[j] = ops->speeds[j] * dt;
    kappa[j] = shape.curvature(t);
    ops->body_nodes.push_back(shape.point(t));
    ops->body_normals.push_back(shape.normal(t));
    ops->body_tangents.push_back(shape.unit_tangent(t));
  }
  double wmax = ops->weights.maxCoeff(), wmin = ops->weights.minCoeff();
  if (wmax > 100 * wmin) throw DegenerateShape("panel lengths vary by more than 100x");
  ops->max_len = wmax;

  // Kress weights for the logarithmic part, depending on |i - j| only
  const int half = n / 2;
  std::vector<double> R(n, 0.0);
  for (int d = 0; d < n; ++d) {
    double x = d * kPi / half, sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * x) / m;
    R[d] = -sum / half - std::cos(half * x) / (2.0 * half * half);
  }
  ops->S.resize(n, n);
  ops->Kp.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec2& xi = ops->body_nodes[i];
    Vec2 nu = -ops->body_normals[i];
    for (int j = 0; j < n; ++j) {
      double l2, kp;
      if (i == j) {
        l2 = std::log(ops->speeds[i]);
        kp = 0.5 * kappa[i];
      } else {
        Vec2 z = xi - ops->body_nodes[j];
        double r2 = z.squaredNorm();
        double sh = std::sin(0.5 * (ops->params[i] - ops->params[j]));
        l2 = 0.5 * std::log(r2) - 0.5 * std::log(4 * sh * sh);
        kp = z.dot(nu) / r2;
      }
      ops->S(i, j) = (0.5 * R[std::abs(i - j)] + l2 / n) * ops->speeds[j];
      ops->Kp(i, j) = kInv2Pi * kp * ops->weights[j];
    }
  }

  ops->Dt = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        ops->Dt(i, j) = 0.5 * sgn / std::tan(0.5 * (i - j) * dt);
      }

  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = -(0.5 * Eigen::MatrixXd::Identity(n, n) + ops->Kp);
  aug.col(n).head(n).setOnes();
  aug.row(n).head(n) = ops->weights.transpose();
  ops->lu.compute(aug);
  double rc = ops->lu.rcond();
  if (!(rc > 1e-13)) throw SingularSystem("exterior Neumann system is singular");

  for (int j = 0; j < n; ++j)
    ops->body_hessians.push_back(shape.boundary_distance(ops->params[j], 2).d(2).matrix());

  const int f = std::max(1, opts.upsample);
  const int nf = f * n;
  ops->P.resize(nf, n);
  ops->fine_w = 2 * kPi / nf;
  for (int m = 0; m < nf; ++m) {
    double t = ops->fine_w * m;
    ops->body_fine.push_back(shape.point(t));
    for (int j = 0; j < n; ++j) ops->P(m, j) = periodic_sinc(n, t - ops->params[j]);
  }

  PanelSystem p;
  p.n_ = n;
  p.ops_ = ops;
  return p.moved(state.h, state.theta);
}

PanelSystem PanelSystem::moved(const Vec2& h, double theta) const {
  PanelSystem p;
  p.n_ = n_;
  p.ops_ = ops_;
  p.h_ = h;
  p.theta_ = theta;
  Mat2 q = rotation_matrix(theta);
  p.nodes_.reserve(n_);
  for (int j = 0; j < n_; ++j) {
    p.nodes_.push_back(q * ops_->body_nodes[j] + h);
    p.normals_.push_back(q * ops_->body_normals[j]);
    p.tangents_.push_back(q * ops_->body_tangents[j]);
  }
  p.fine_nodes_.reserve(ops_->body_fine.size());
  for (const auto& x : ops_->body_fine) p.fine_nodes_.push_back(q * x + h);
  return p;
}

Eigen::VectorXd PanelSystem::arclength_derivative(const Eigen::VectorXd& f) const {
  return (ops_->Dt * f).cwiseQuotient(ops_->speeds);
}

Mat2 PanelSystem::boundary_hessian(int i) const {
  Mat2 q = rotation_matrix(theta_);
  return q * ops_->body_hessians[i] * q.transpose();
}

Eigen::VectorXd PanelSystem::solve_augmented(const Eigen::VectorXd& g, double* lambda) const {
  Eigen::VectorXd rhs(n_ + 1);
  rhs.head(n_) = g;
  rhs[n_] = 0.0;
  Eigen::VectorXd x = ops_->lu.solve(rhs);
  if (!x.allFinite()) throw SingularSystem("exterior Neumann solve produced non-finite values");
  if (lambda) *lambda = x[n_];
  return x.head(n_);
}

HarmonicPotential HarmonicPotential::scaled(double a) const {
  HarmonicPotential p = *this;
  p.density *= a;
  p.total_density *= a;
  p.multiplier *= a;
  p.trace *= a;
  p.normal_trace *= a;
  p.fine_density *= a;
  return p;
}

HarmonicPotential& HarmonicPotential::axpy(double a, const HarmonicPotential& o) {
  density += a * o.density;
  total_density += a * o.total_density;
  multiplier += a * o.multiplier;
  trace += a * o.trace;
  normal_trace += a * o.normal_trace;
  fine_density += a * o.fine_density;
  return *this;
}

HarmonicPotential potential_from_density(const PanelSystem& panels, Eigen::VectorXd density) {
  HarmonicPotential p;
  p.total_density = density.dot(panels.weights());
  p.trace = panels.single_layer() * density;
  p.normal_trace = -(0.5 * density + panels.normal_derivative() * density);
  p.fine_density = panels.fine_interp() * density.cwiseProduct(panels.speeds());
  p.density = std::move(density);
  return p;
}

HarmonicPotential solve_exterior_neumann(const PanelSystem& panels, const Eigen::VectorXd& g,
                                         NeumannSolve* info) {
  if (g.size() != panels.size()) throw std::invalid_argument("boundary data size mismatch");
  double compat = g.dot(panels.weights());
  double scale = std::max(1.0, g.cwiseAbs().dot(panels.weights()));
  if (info) info->compatibility = std::abs(compat);
  if (std::abs(compat) > panels.options().compat_tol * scale)
    throw IncompatibleData("Neumann data violates compatibility: sum g w = " +
                           std::to_string(compat));
  double lambda = 0;
  Eigen::VectorXd sigma = panels.solve_augmented(g, &lambda);
  HarmonicPotential p = potential_from_density(panels, std::move(sigma));
  p.multiplier = lambda;
  return p;
}

namespace {
void check_outside(const PanelSystem& panels, const Vec2& x) {
  Vec2 y = rotation_matrix(-panels.theta()) * (x - panels.h());
  if (panels.shape().signed_distance(y) <= 0.0) throw InsideBody("evaluation point inside the body");
}

template <class F>
void for_each_source(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x, F&& f) {
  const auto& nodes = panels.nodes();
  double dmin = 1e300;
  for (const auto& y : nodes) dmin = std::min(dmin, (x - y).squaredNorm());
  double near = panels.options().near_factor * panels.max_panel_length();
  if (std::sqrt(dmin) < near && pot.fine_density.size() > 0) {
    const auto& fine = panels.fine_nodes();
    double w = panels.fine_weight();
    for (size_t m = 0; m < fine.size(); ++m) f(x - fine[m], pot.fine_density[m] * w);
  } else {
    for (int j = 0; j < panels.size(); ++j) f(x - nodes[j], pot.density[j] * panels.weights()[j]);
  }
}
}  // namespace

double potential_value(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x) {
  check_outside(panels, x);
  double v = 0;
  for_each_source(pot, panels, x, [&](const Vec2& z, double q) { v += 0.5 * std::log(z.squaredNorm()) * q; });
  return kInv2Pi * v;
}

Vec2 potential_gradient(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x) {
  check_outside(panels, x);
  Vec2 g = Vec2::Zero();
  for_each_source(pot, panels, x, [&](const Vec2& z, double q) { g += z * (q / z.squaredNorm()); });
  return kInv2Pi * g;
}

Mat2 potential_hessian(const HarmonicPotential& pot, const PanelSystem& panels, const Vec2& x) {
  check_outside(panels, x);
  Mat2 h = Mat2::Zero();
  for_each_source(pot, panels, x, [&](const Vec2& z, double q) {
    double r2 = z.squaredNorm();
    h += q * (Mat2::Identity() / r2 - 2.0 * z * z.transpose() / (r2 * r2));
  });
  return kInv2Pi * h;
}

std::vector<Vec2> boundary_gradient(const HarmonicPotential& pot, const PanelSystem& panels) {
  Eigen::VectorXd ds = panels.arclength_derivative(pot.trace);
  std::vector<Vec2> out(panels.size());
  for (int i = 0; i < panels.size(); ++i)
    out[i] = pot.normal_trace[i] * panels.normals()[i] + ds[i] * panels.tangents()[i];
  return out;
}

double neumann_residual(const HarmonicPotential& pot, const PanelSystem& panels,
                        const std::function<double(double)>& g_of_param) {
  const int n = panels.size();
  const double dt = 2 * kPi / n;
  const BodyShape& shape = panels.shape();
  Mat2 q = rotation_matrix(panels.theta());
  double worst = 0;
  for (int m = 0; m < n; ++m) {
    double t = (m + 0.5) * dt;
    double sig = 0;
    for (int j = 0; j < n; ++j) sig += periodic_sinc(n, t - panels.params()[j]) * pot.density[j];
    Vec2 x = q * shape.point(t) + panels.h();
    Vec2 nu = -(q * shape.normal(t));
    double kp = 0;
    for (int j = 0; j < n; ++j) {
      Vec2 z = x - panels.nodes()[j];
      kp += z.dot(nu) / z.squaredNorm() * pot.density[j] * panels.weights()[j];
    }
    double dn = -(0.5 * sig + kInv2Pi * kp);
    worst = std::max(worst, std::abs(dn - g_of_param(t)));
  }
  return worst;
}

Eigen::VectorXd neumann_data_K(const PanelSystem& panels, const RigidState& state, int a) {
  if (a < 1 || a > 3) throw std::invalid_argument("Kirchhoff index must be 1, 2 or 3");
  Eigen::VectorXd k(panels.size());
  for (int i = 0; i < panels.size(); ++i) {
    const Vec2& n = panels.normals()[i];
    k[i] = a == 3 ? perp(panels.nodes()[i] - state.h).dot(n) : n[a - 1];
  }
  return k;
}

double neumann_K_at(const PanelSystem& panels, const RigidState& state, int a, double s) {
  Mat2 q = rotation_matrix(panels.theta());
  Vec2 x = q * panels.shape().point(s) + panels.h();
  Vec2 n = q * panels.shape().normal(s);
  return a == 3 ? perp(x - state.h).dot(n) : n[a - 1];
}

Eigen::Matrix3d block_rotation(double theta) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  r.topLeftCorner<2, 2>() = rotation_matrix(theta);
  return r;
}

KirchhoffPotentials::KirchhoffPotentials(const PanelSystem& panels) {
  RigidState st;
  st.h = panels.h();
  st.theta = panels.theta();
  theta0_ = panels.theta();
  std::array<Eigen::VectorXd, 3> k;
  for (int a = 1; a <= 3; ++a) {
    k[a - 1] = neumann_data_K(panels, st, a);
    phi_[a - 1] = solve_exterior_neumann(panels, k[a - 1]);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      m2_(a, b) = phi_[a].trace.cwiseProduct(k[b]).dot(panels.weights());
  asym_ = (m2_ - m2_.transpose()).norm();
  m2_ = 0.5 * (m2_ + m2_.transpose()).eval();
}

std::array<HarmonicPotential, 3> KirchhoffPotentials::world(double theta) const {
  Mat2 q = rotation_matrix(theta - theta0_);
  std::array<HarmonicPotential, 3> out;
  for (int a = 0; a < 2; ++a) {
    out[a] = phi_[0].scaled(q(a, 0));
    out[a].axpy(q(a, 1), phi_[1]);
  }
  out[2] = phi_[2];
  return out;
}

Eigen::Matrix3d KirchhoffPotentials::m2_world(double theta) const {
  Eigen::Matrix3d r = block_rotation(theta - theta0_);
  return r * m2_ * r.transpose();
}

AddedMassTensor make_added_mass(const Eigen::Matrix3d& m2, double mass, double inertia,
                                double raw_asymmetry) {
  AddedMassTensor t;
  t.m1.diagonal() << mass, mass, inertia;
  t.m2 = m2;
  t.m = t.m1 + t.m2;
  t.raw_asymmetry = raw_asymmetry;
  t.factor.compute(t.m);
  if (t.factor.info() != Eigen::Success)
    throw SingularSystem("added-mass matrix is not positive definite");
  return t;
}

AddedMassTensor added_mass(const PanelSystem& panels, const RigidState& state) {
  state.validate();
  KirchhoffPotentials k(panels);
  return make_added_mass(k.m2_body(), state.mass, state.inertia, k.raw_asymmetry());
}

double invariance_check(const BodyShape& shape, const RigidState& s1, const RigidState& s2,
                        int n_panels) {
  Eigen::Matrix3d a = KirchhoffPotentials(build_panels(shape, s1, n_panels)).m2_body();
  Eigen::Matrix3d b = KirchhoffPotentials(build_panels(shape, s2, n_panels)).m2_body();
  Eigen::Matrix3d r = block_rotation(s2.theta - s1.theta);
  return (a - r.transpose() * b * r).norm();
}

}  // namespace kirchhoff2d
