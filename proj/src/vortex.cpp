#include "kirchhoff2d/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

namespace {
constexpr double kInv2Pi = 0.5 / std::numbers::pi;

Mat2 perp_jacobian() {
  // row k holds d_k of x^perp
  Mat2 p;
  p << 0, 1, -1, 0;
  return p;
}
}  // namespace

double VortexField::total_strength() const {
  double s = 0;
  for (double g : strengths) s += g;
  return s;
}

void VortexField::validate() const {
  if (strengths.size() != positions.size())
    throw std::invalid_argument("one strength per particle required");
  if (!areas.empty() && areas.size() != positions.size())
    throw std::invalid_argument("one area per particle required");
  for (double a : areas)
    if (!(a > 0)) throw std::invalid_argument("particle areas must be positive");
  if (!(core_radius >= 0)) throw std::invalid_argument("core radius must be non-negative");
}

Vec2 biot_savart_kernel(const Vec2& x) {
  double r2 = x.squaredNorm();
  if (r2 == 0.0) throw SingularPoint("Biot-Savart kernel evaluated at the origin");
  return perp(x) * (kInv2Pi / r2);
}

Mat2 biot_savart_gradient(const Vec2& x) {
  if (x.squaredNorm() == 0.0) throw SingularPoint("Biot-Savart kernel evaluated at the origin");
  return blob_kernel_gradient(x, 0.0);
}

void blob_profile(double r2, double eps, double& q, double& dq_over_r) {
  if (eps == 0.0) {
    q = 1.0 / r2;
    dq_over_r = -2.0 / (r2 * r2);
    return;
  }
  double e2 = eps * eps, x = r2 / e2, f, fp;
  if (x < 1e-4) {
    f = 1 - x / 2 + x * x / 6;
    fp = -0.5 + x / 3 - x * x / 8;
  } else {
    double em = -std::expm1(-x);
    f = em / x;
    fp = (x * std::exp(-x) - em) / (x * x);
  }
  q = f / e2;
  dq_over_r = 2 * fp / (e2 * e2);
}

Vec2 blob_kernel(const Vec2& x, double eps) {
  double r2 = x.squaredNorm();
  if (r2 == 0.0) return Vec2::Zero();
  double q, dq;
  blob_profile(r2, eps, q, dq);
  return perp(x) * (kInv2Pi * q);
}

Mat2 blob_kernel_gradient(const Vec2& x, double eps) {
  double r2 = x.squaredNorm();
  if (r2 == 0.0 && eps == 0.0) return Mat2::Zero();
  double q, dq;
  blob_profile(std::max(r2, 1e-300), eps, q, dq);
  return kInv2Pi * (q * perp_jacobian() + dq * x * perp(x).transpose());
}

VelocitySample free_space_velocity(const VortexField& field, const Vec2& x, bool with_gradient,
                                   int skip) {
  VelocitySample out;
  Mat2 g = Mat2::Zero();
  const double eps = field.core_radius;
  for (size_t i = 0; i < field.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    Vec2 z = x - field.positions[i];
    double r2 = z.squaredNorm();
    if (r2 == 0.0) continue;  // a point vortex induces nothing on itself
    double q, dq;
    blob_profile(r2, eps, q, dq);
    double gam = field.strengths[i] * kInv2Pi;
    out.value += gam * q * perp(z);
    if (with_gradient) g += gam * (q * perp_jacobian() + dq * z * perp(z).transpose());
  }
  if (with_gradient) out.gradient = g;
  return out;
}

double default_core_radius(const std::vector<Vec2>& positions) {
  if (positions.size() < 2) return 0.0;
  double sum = 0;
  for (size_t i = 0; i < positions.size(); ++i) {
    double best = 1e300;
    for (size_t j = 0; j < positions.size(); ++j)
      if (i != j) best = std::min(best, (positions[i] - positions[j]).norm());
    sum += best;
  }
  return 2.0 * sum / positions.size();
}

// ---- boundary-corrected flow ----

FlowField::FlowField(const PanelSystem& panels, const RigidState& state, const VortexField& field)
    : panels_(panels), state_(state), field_(field) {
  field_.validate();
  const int n = panels_.size();
  const auto& x = panels_.nodes();
  const auto& nrm = panels_.normals();
  const auto& tau = panels_.tangents();
  const auto& w = panels_.weights();

  std::vector<VelocitySample> free(n);
  double c_free = 0;
  for (int j = 0; j < n; ++j) {
    free[j] = free_space_velocity(field_, x[j], true);
    c_free += free[j].value.dot(tau[j]) * w[j];
  }
  beta_ = field_.gamma - c_free;

  std::vector<Vec2> hv(n);
  Eigen::VectorXd g(n);
  for (int j = 0; j < n; ++j) {
    hv[j] = beta_ * biot_savart_kernel(x[j] - state_.h);
    g[j] = (solid_velocity(state_, x[j]) - free[j].value - hv[j]).dot(nrm[j]);
  }
  NeumannSolve info;
  phi_ = solve_exterior_neumann(panels_, g, &info);
  compat_ = info.compatibility;

  std::vector<Vec2> grad_phi = boundary_gradient(phi_, panels_);
  Eigen::VectorXd v1(n), v2(n);
  u_nodes_.resize(n);
  for (int j = 0; j < n; ++j) {
    Vec2 v = grad_phi[j] + hv[j];
    v1[j] = v.x();
    v2[j] = v.y();
    u_nodes_[j] = free[j].value + v;
  }
  // harmonic part: d_n v = (d_s v2, -d_s v1) with n = tau^perp
  Eigen::VectorXd d1 = panels_.arclength_derivative(v1), d2 = panels_.arclength_derivative(v2);
  dnu_nodes_.resize(n);
  for (int j = 0; j < n; ++j)
    dnu_nodes_[j] = free[j].gradient->transpose() * nrm[j] + Vec2(d2[j], -d1[j]);
}

VelocitySample FlowField::velocity(const Vec2& x, bool with_gradient, int skip) const {
  VelocitySample out = free_space_velocity(field_, x, with_gradient, skip);
  out.value += potential_gradient(phi_, panels_, x);
  Vec2 z = x - state_.h;
  out.value += beta_ * biot_savart_kernel(z);
  if (with_gradient)
    *out.gradient += potential_hessian(phi_, panels_, x) + beta_ * biot_savart_gradient(z);
  return out;
}

std::vector<Vec2> FlowField::particle_velocities() const {
  std::vector<Vec2> out(field_.size());
  for (size_t i = 0; i < field_.size(); ++i) {
    const Vec2& x = field_.positions[i];
    try {
      out[i] = velocity(x, false, static_cast<int>(i)).value;
    } catch (const InsideBody&) {
      // intermediate RK stages may graze the body; the boundary reflection
      // after the step repairs the position, so move with the body meanwhile
      out[i] = solid_velocity(state_, x);
    }
  }
  return out;
}

double FlowField::normal_residual() const {
  double worst = 0;
  for (int j = 0; j < panels_.size(); ++j) {
    Vec2 rel = u_nodes_[j] - solid_velocity(state_, panels_.nodes()[j]);
    worst = std::max(worst, std::abs(rel.dot(panels_.normals()[j])));
  }
  return worst;
}

double FlowField::circulation() const {
  double c = 0;
  for (int j = 0; j < panels_.size(); ++j)
    c += u_nodes_[j].dot(panels_.tangents()[j]) * panels_.weights()[j];
  return c;
}

VelocitySample boundary_corrected_velocity(const VortexField& field, const PanelSystem& panels,
                                           const RigidState& state, const Vec2& x) {
  return FlowField(panels, state, field).velocity(x, true);
}

// ---- transport ----

int reflect_particles(std::vector<Vec2>& positions, const BodyShape& shape, const RigidState& pose,
                      AdvectLog* log) {
  Mat2 q = rotation_matrix(pose.theta);
  int count = 0;
  for (size_t i = 0; i < positions.size(); ++i) {
    Vec2 y = q.transpose() * (positions[i] - pose.h);
    double s = shape.project(y);
    Vec2 foot = shape.point(s), nu = -shape.normal(s);
    double d = (y - foot).dot(nu);
    if (d > 0) continue;
    Vec2 mirrored = foot + std::max(-d, 1e-12) * nu;
    positions[i] = q * mirrored + pose.h;
    ++count;
    if (log) log->reflected.push_back(static_cast<int>(i));
  }
  if (log) log->reflections += count;
  return count;
}

VortexField advect(const VortexField& field, const BatchVelocity& velocity, double dt,
                   const BodyShape* shape, const RigidState* pose, AdvectLog* log) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  const size_t n = field.size();
  auto shift = [&](const std::vector<Vec2>& k, double a) {
    std::vector<Vec2> p = field.positions;
    for (size_t i = 0; i < n; ++i) p[i] += a * k[i];
    return p;
  };
  std::vector<Vec2> k1 = velocity(field.positions);
  std::vector<Vec2> k2 = velocity(shift(k1, dt / 2));
  std::vector<Vec2> k3 = velocity(shift(k2, dt / 2));
  std::vector<Vec2> k4 = velocity(shift(k3, dt));
  VortexField out = field;
  for (size_t i = 0; i < n; ++i)
    out.positions[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  if (shape && pose) reflect_particles(out.positions, *shape, *pose, log);
  return out;
}

Vec2 flow_map(const TimeVelocity& velocity, const Vec2& x0, double t0, double t1, double dt,
              const std::function<bool(double, const Vec2&)>& inside) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (t1 == t0) return x0;
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / dt - 1e-9)));
  double h = (t1 - t0) / steps;
  Vec2 x = x0;
  double t = t0;
  auto check = [&](double tt, const Vec2& p) {
    if (inside && inside(tt, p)) throw BodyCollision("trajectory entered the body");
  };
  check(t, x);
  for (int i = 0; i < steps; ++i) {
    Vec2 k1 = velocity(t, x);
    Vec2 p2 = x + h / 2 * k1;
    check(t + h / 2, p2);
    Vec2 k2 = velocity(t + h / 2, p2);
    Vec2 p3 = x + h / 2 * k2;
    check(t + h / 2, p3);
    Vec2 k3 = velocity(t + h / 2, p3);
    Vec2 p4 = x + h * k3;
    check(t + h, p4);
    Vec2 k4 = velocity(t + h, p4);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = t0 + (i + 1) * h;
    check(t, x);
  }
  return x;
}

ConservedQuantities conserved_quantities(const VortexField& field, const FlowField* flow) {
  ConservedQuantities c;
  c.gamma = field.gamma;
  double s1 = 0, s2 = 0, s4 = 0, sinf = 0;
  for (size_t i = 0; i < field.size(); ++i) {
    double g = field.strengths[i];
    c.total_vorticity += g;
    double a = field.areas.empty() ? 1.0 : field.areas[i];
    double om = std::abs(g / a);
    s1 += om * a;
    s2 += om * om * a;
    s4 += om * om * om * om * a;
    sinf = std::max(sinf, om);
  }
  c.lp[0] = s1;
  c.lp[1] = std::sqrt(s2);
  c.lp[2] = std::sqrt(std::sqrt(s4));
  c.lp[3] = sinf;
  c.circulation_quadrature = flow ? flow->circulation() : field.gamma;
  return c;
}

LogLipschitz log_lipschitz_seminorm(const std::function<Vec2(const Vec2&)>& f,
                                    const std::vector<Vec2>& points) {
  if (points.size() < 2) throw std::invalid_argument("need at least two sample points");
  std::vector<Vec2> v(points.size());
  LogLipschitz out;
  for (size_t i = 0; i < points.size(); ++i) {
    v[i] = f(points[i]);
    out.sup_norm = std::max(out.sup_norm, v[i].norm());
  }
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      double d = (points[i] - points[j]).norm();
      if (d == 0.0) throw std::invalid_argument("sample points must be distinct");
      double df = (v[i] - v[j]).norm();
      double lnm = std::max(0.0, -std::log(d));
      out.modulus = std::max(out.modulus, df / (d * (1 + lnm)));
      out.lipschitz_quotient = std::max(out.lipschitz_quotient, df / d);
    }
  return out;
}

}  // namespace kirchhoff2d
