#include "kirchhoff2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jet.hpp"
#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSamples = 512;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q - p).x() * (r - p).y() - (q - p).y() * (r - p).x();
  };
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}
}  // namespace

void RigidState::validate() const {
  if (!(mass > 0)) throw std::invalid_argument("mass must be positive");
  if (!(inertia > 0)) throw std::invalid_argument("inertia must be positive");
}

Vec2 RigidMotion::apply(const Vec2& x) const {
  return rotation_matrix(rotation_angle) * x + translation;
}

RigidMotion RigidMotion::inverse() const {
  RigidMotion inv;
  inv.rotation_angle = -rotation_angle;
  inv.translation = -(rotation_matrix(-rotation_angle) * translation);
  return inv;
}

RigidMotion RigidMotion::compose(const RigidMotion& inner) const {
  RigidMotion out;
  out.rotation_angle = rotation_angle + inner.rotation_angle;
  out.translation = rotation_matrix(rotation_angle) * inner.translation + translation;
  return out;
}

Mat2 rotation_matrix(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  Mat2 q;
  q << c, -s, s, c;
  return q;
}

Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

Vec2 solid_velocity(const RigidState& state, const Vec2& x) {
  return state.ell + state.r * perp(x - state.h);
}

Vec2 body_map(const RigidMotion& motion, const Vec2& h0, const Vec2& x) {
  return motion.translation + rotation_matrix(motion.rotation_angle) * (x - h0);
}

// ---- symmetric tensors ----

double SymTensor::contract(const Vec2& v) const {
  double sum = 0.0;
  for (int j = 0; j <= order; ++j)
    sum += binom(order, j) * c[j] * std::pow(v.x(), order - j) * std::pow(v.y(), j);
  return sum;
}

double SymTensor::bilinear(const Vec2& v, const Vec2& w) const {
  if (order != 2) throw std::logic_error("bilinear needs an order-2 tensor");
  return c[0] * v.x() * w.x() + c[1] * (v.x() * w.y() + v.y() * w.x()) + c[2] * v.y() * w.y();
}

Mat2 SymTensor::matrix() const {
  if (order != 2) throw std::logic_error("matrix needs an order-2 tensor");
  Mat2 m;
  m << c[0], c[1], c[1], c[2];
  return m;
}

double SymTensor::norm() const {
  // p(theta) = T{v,...,v} on the half circle, then golden refinement around the max
  const int n = 2048;
  auto f = [&](double th) { return std::abs(contract(Vec2(std::cos(th), std::sin(th)))); };
  int best = 0;
  double fbest = -1;
  for (int i = 0; i < n; ++i) {
    double v = f(std::numbers::pi * i / n);
    if (v > fbest) fbest = v, best = i;
  }
  double lo = std::numbers::pi * (best - 1) / n, hi = std::numbers::pi * (best + 1) / n;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 60; ++it) {
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) > f(b)) hi = b;
    else lo = a;
  }
  return std::max(fbest, f(0.5 * (lo + hi)));
}

SymTensor rotate_tensor(const SymTensor& t, double theta) {
  // T'{v} = T{Q^T v}; expand (c v1 + s v2)^(n-j) (-s v1 + c v2)^j
  const int n = t.order;
  double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> poly(n + 1, 0.0);  // coefficient of v1^(n-m) v2^m
  for (int j = 0; j <= n; ++j) {
    double w = binom(n, j) * t.c[j];
    if (w == 0.0) continue;
    std::vector<double> p(1, 1.0);
    auto mul = [&](double a1, double a2) {
      std::vector<double> q(p.size() + 1, 0.0);
      for (size_t m = 0; m < p.size(); ++m) {
        q[m] += p[m] * a1;
        q[m + 1] += p[m] * a2;
      }
      p = q;
    };
    for (int k = 0; k < n - j; ++k) mul(c, s);
    for (int k = 0; k < j; ++k) mul(-s, c);
    for (int m = 0; m <= n; ++m) poly[m] += w * p[m];
  }
  SymTensor out;
  out.order = n;
  out.c.resize(n + 1);
  for (int m = 0; m <= n; ++m) out.c[m] = poly[m] / binom(n, m);
  return out;
}

// ---- shapes ----

int FourierCoeffs::modes() const {
  return static_cast<int>(std::max({xc.size(), xs.size(), yc.size(), ys.size()}));
}

BodyShape BodyShape::disc(double radius) {
  if (!(radius > 0)) throw InvalidShape("disc radius must be positive");
  BodyShape b;
  b.kind_ = Kind::disc;
  b.p1_ = b.p2_ = radius;
  b.coeffs_ = {{0, radius}, {0, 0}, {0, 0}, {0, radius}};
  b.gevrey_order_ = 1.0;
  b.gevrey_constant_ = std::max(2.0, 2.0 / radius);
  b.finish();
  return b;
}

BodyShape BodyShape::ellipse(double a, double b) {
  if (!(a > 0 && b > 0)) throw InvalidShape("ellipse semi-axes must be positive");
  BodyShape e;
  e.kind_ = Kind::ellipse;
  e.p1_ = a;
  e.p2_ = b;
  e.coeffs_ = {{0, a}, {0, 0}, {0, 0}, {0, b}};
  e.gevrey_order_ = 1.0;
  e.finish();
  e.gevrey_constant_ = 2.0 * std::max(1.0, 1.0 / e.info_->min_roc);
  return e;
}

BodyShape BodyShape::fourier(FourierCoeffs coeffs, double gevrey_order, double gevrey_constant) {
  if (gevrey_order < 1.0) throw InvalidShape("gevrey order must be >= 1");
  BodyShape f;
  f.kind_ = Kind::fourier;
  int m = coeffs.modes();
  if (m < 2) throw InvalidShape("fourier shape needs at least one non-constant mode");
  for (auto* v : {&coeffs.xc, &coeffs.xs, &coeffs.yc, &coeffs.ys}) v->resize(m, 0.0);
  coeffs.xs[0] = coeffs.ys[0] = 0.0;
  f.coeffs_ = std::move(coeffs);
  f.gevrey_order_ = gevrey_order;
  f.finish();
  f.gevrey_constant_ =
      gevrey_constant > 0 ? gevrey_constant : 2.0 * std::max(1.0, 1.0 / f.info_->min_roc);
  if (!(f.gevrey_constant_ > 1.0)) throw InvalidShape("gevrey constant must exceed 1");
  return f;
}

Vec2 BodyShape::derivative(double s, int m) const {
  Vec2 out = Vec2::Zero();
  if (m == 0) out = Vec2(coeffs_.xc[0], coeffs_.yc[0]);
  const int n = coeffs_.modes();
  for (int k = 1; k < n; ++k) {
    double km = std::pow(static_cast<double>(k), m);
    // d^m/ds^m cos(ks) = k^m cos(ks + m pi/2)
    double ph = k * s + m * std::numbers::pi / 2;
    double c = std::cos(ph), sn = std::sin(ph);
    out.x() += km * (coeffs_.xc[k] * c + coeffs_.xs[k] * sn);
    out.y() += km * (coeffs_.yc[k] * c + coeffs_.ys[k] * sn);
  }
  return out;
}

Vec2 BodyShape::unit_tangent(double s) const { return derivative(s, 1).normalized(); }

Vec2 BodyShape::normal(double s) const { return perp(unit_tangent(s)); }

double BodyShape::curvature(double s) const {
  Vec2 d1 = derivative(s, 1), d2 = derivative(s, 2);
  double sp = d1.norm();
  return (d1.x() * d2.y() - d1.y() * d2.x()) / (sp * sp * sp);
}

void BodyShape::finish() {
  const int n = coeffs_.modes();
  (void)n;
  auto info = std::make_shared<Info>();
  // orientation: counter-clockwise required, reverse otherwise
  auto signed_area = [&]() {
    const int q = 4096;
    double a = 0;
    for (int i = 0; i < q; ++i) {
      double s = kTwoPi * i / q;
      Vec2 x = point(s), d = derivative(s, 1);
      a += 0.5 * (x.x() * d.y() - x.y() * d.x());
    }
    return a * kTwoPi / q;
  };
  double area = signed_area();
  if (area < 0) {
    for (auto& v : coeffs_.xs) v = -v;
    for (auto& v : coeffs_.ys) v = -v;
    area = -area;
  }
  if (!(area > 0)) throw InvalidShape("curve encloses no area");
  info->area = area;

  const int q = 4096;
  double per = 0, max_k = 0, max_concave = 0;
  for (int i = 0; i < q; ++i) {
    double s = kTwoPi * i / q;
    double sp = speed(s);
    if (!(sp > 0)) throw InvalidShape("parametrisation has zero speed");
    per += sp;
    double k = curvature(s);
    max_k = std::max(max_k, std::abs(k));
    if (k < 0) max_concave = std::max(max_concave, -k);
  }
  info->perimeter = per * kTwoPi / q;
  info->min_roc = 1.0 / max_k;
  info->min_concave_roc = max_concave > 0 ? 1.0 / max_concave : 0.0;

  info->sample_s.resize(kSamples);
  info->sample_x.resize(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    info->sample_s[i] = kTwoPi * i / kSamples;
    info->sample_x[i] = point(info->sample_s[i]);
  }
  double diam = 0;
  for (int i = 0; i < kSamples; ++i)
    for (int j = i + 1; j < kSamples; ++j)
      diam = std::max(diam, (info->sample_x[i] - info->sample_x[j]).norm());
  info->diameter = diam;

  // simple-curve check on the sample polygon
  for (int i = 0; i < kSamples; ++i) {
    const Vec2& a = info->sample_x[i];
    const Vec2& b = info->sample_x[(i + 1) % kSamples];
    for (int j = i + 2; j < kSamples; ++j) {
      if (i == 0 && j == kSamples - 1) continue;
      if (segments_cross(a, b, info->sample_x[j], info->sample_x[(j + 1) % kSamples]))
        throw InvalidShape("boundary curve self-intersects");
    }
  }
  info_ = info;
  if (signed_distance(Vec2::Zero()) >= 0.0)
    throw InvalidShape("centre of mass (body origin) must lie inside the curve");
}

double BodyShape::collar_width() const {
  if (collar_override_ > 0) return collar_override_;
  if (convex()) return info_->diameter;
  return 0.2 * info_->min_concave_roc;
}

double BodyShape::newton_project(const Vec2& x, double s) const {
  for (int it = 0; it < 60; ++it) {
    Vec2 X = point(s), d1 = derivative(s, 1), d2 = derivative(s, 2);
    double f = (X - x).dot(d1);
    double fp = d1.squaredNorm() + (X - x).dot(d2);
    if (fp <= 0.25 * d1.squaredNorm()) fp = d1.squaredNorm();
    double step = f / fp;
    step = std::clamp(step, -0.1, 0.1);
    s -= step;
    if (std::abs(step) < 1e-15) break;
  }
  s = std::fmod(s, kTwoPi);
  if (s < 0) s += kTwoPi;
  return s;
}

double BodyShape::project(const Vec2& x) const {
  if (kind_ == Kind::disc) {
    Vec2 y = x - Vec2(coeffs_.xc[0], coeffs_.yc[0]);
    if (y.norm() == 0.0) return 0.0;
    double s = std::atan2(y.y(), y.x());
    return s < 0 ? s + kTwoPi : s;
  }
  const auto& sx = info_->sample_x;
  int best = 0;
  double dbest = (sx[0] - x).squaredNorm();
  for (int i = 1; i < kSamples; ++i) {
    double d = (sx[i] - x).squaredNorm();
    if (d < dbest) dbest = d, best = i;
  }
  double sbest = 0, fbest = 1e300;
  for (int off : {0, -1, 1}) {
    int i = (best + off + kSamples) % kSamples;
    double s = newton_project(x, info_->sample_s[i]);
    double d = (point(s) - x).squaredNorm();
    if (d < fbest) fbest = d, sbest = s;
  }
  return sbest;
}

double BodyShape::signed_distance(const Vec2& x) const {
  double s = project(x);
  return (x - point(s)).dot(-normal(s));
}

DistanceJet BodyShape::jet_at(const Vec2& x, double s_star, int order) const {
  DistanceJet out;
  out.foot_param = s_star;
  out.foot = point(s_star);
  out.rho = (x - out.foot).dot(-normal(s_star));
  if (order <= 0) return out;

  Jet2 X1 = Jet2::variable(order, 0, x.x());
  Jet2 X2 = Jet2::variable(order, 1, x.y());
  Jet2 rho(order);

  if (kind_ == Kind::disc) {
    Jet2 y1 = X1 - coeffs_.xc[0], y2 = X2 - coeffs_.yc[0];
    rho = (y1 * y1 + y2 * y2).sqrt() - p1_;
  } else {
    const int n = coeffs_.modes();
    Jet2 s(order, s_star);
    std::vector<Jet2> c(n, Jet2(order)), sn(n, Jet2(order));
    Jet2 P1(order), P2(order), D1(order), D2(order), E1(order), E2(order);
    auto evaluate = [&]() {
      P1 = Jet2(order, coeffs_.xc[0]);
      P2 = Jet2(order, coeffs_.yc[0]);
      D1 = D2 = E1 = E2 = Jet2(order);
      for (int k = 1; k < n; ++k) {
        Jet2 ks = s * static_cast<double>(k);
        Jet2 ck = ks.cos(), sk = ks.sin();
        P1 += ck * coeffs_.xc[k] + sk * coeffs_.xs[k];
        P2 += ck * coeffs_.yc[k] + sk * coeffs_.ys[k];
        D1 += (sk * (-coeffs_.xc[k]) + ck * coeffs_.xs[k]) * k;
        D2 += (sk * (-coeffs_.yc[k]) + ck * coeffs_.ys[k]) * k;
        E1 += (ck * coeffs_.xc[k] + sk * coeffs_.xs[k]) * static_cast<double>(-k * k);
        E2 += (ck * coeffs_.yc[k] + sk * coeffs_.ys[k]) * static_cast<double>(-k * k);
      }
    };
    int iters = 1;
    while ((1 << (iters - 1)) <= order) ++iters;
    for (int it = 0; it < iters; ++it) {
      evaluate();
      Jet2 r1 = P1 - X1, r2 = P2 - X2;
      Jet2 f = r1 * D1 + r2 * D2;
      Jet2 fp = D1 * D1 + D2 * D2 + r1 * E1 + r2 * E2;
      s -= f / fp;
    }
    evaluate();
    Jet2 inv = (D1 * D1 + D2 * D2).sqrt().reciprocal();
    // outward from the solid: (D2, -D1)/|D|
    rho = ((X1 - P1) * D2 - (X2 - P2) * D1) * inv;
  }
  out.rho = rho.value();
  out.grad.resize(order);
  for (int sord = 1; sord <= order; ++sord) {
    SymTensor& t = out.grad[sord - 1];
    t.order = sord;
    t.c.resize(sord + 1);
    for (int j = 0; j <= sord; ++j) t.c[j] = rho.partial(sord - j, j);
  }
  return out;
}

DistanceJet BodyShape::distance(const Vec2& x, int order) const {
  if (order < 0 || order > 6) throw std::invalid_argument("distance order must be in 0..6");
  double s = project(x);
  double rho = (x - point(s)).dot(-normal(s));
  bool at_centre = kind_ == Kind::disc &&
                   (x - Vec2(coeffs_.xc[0], coeffs_.yc[0])).norm() < 1e-14 * p1_;
  if ((order >= 2 && (rho > collar_width() || rho < -inner_collar_width())) ||
      (order >= 1 && at_centre))
    throw CollarViolation("point outside the collar neighbourhood of the boundary");
  return jet_at(x, s, order);
}

DistanceJet BodyShape::boundary_distance(double s, int order) const {
  return jet_at(point(s), s, order);
}

BodyShape BodyShape::rotated(double beta) const {
  double c = std::cos(beta), s = std::sin(beta);
  FourierCoeffs r = coeffs_;
  for (int k = 0; k < coeffs_.modes(); ++k) {
    r.xc[k] = c * coeffs_.xc[k] - s * coeffs_.yc[k];
    r.yc[k] = s * coeffs_.xc[k] + c * coeffs_.yc[k];
    r.xs[k] = c * coeffs_.xs[k] - s * coeffs_.ys[k];
    r.ys[k] = s * coeffs_.xs[k] + c * coeffs_.ys[k];
  }
  if (kind_ == Kind::disc) {
    BodyShape d = *this;
    d.coeffs_ = r;
    d.finish();
    return d;
  }
  BodyShape f = fourier(r, gevrey_order_, gevrey_constant_);
  f.collar_override_ = collar_override_;
  return f;
}

bool BodyShape::same_as(const BodyShape& o) const {
  return kind_ == o.kind_ && coeffs_.xc == o.coeffs_.xc && coeffs_.xs == o.coeffs_.xs &&
         coeffs_.yc == o.coeffs_.yc && coeffs_.ys == o.coeffs_.ys &&
         gevrey_order_ == o.gevrey_order_ && gevrey_constant_ == o.gevrey_constant_ &&
         collar_override_ == o.collar_override_;
}

DistanceJet distance_and_derivatives(const BodyShape& shape, const Vec2& x, int order) {
  return shape.distance(x, order);
}

DistanceJet distance_and_derivatives(const BodyShape& shape, const RigidState& state,
                                     const Vec2& x, int order) {
  Mat2 q = rotation_matrix(state.theta);
  DistanceJet j = shape.distance(q.transpose() * (x - state.h), order);
  j.foot = q * j.foot + state.h;
  for (auto& t : j.grad) t = rotate_tensor(t, state.theta);
  return j;
}

}  // namespace kirchhoff2d
