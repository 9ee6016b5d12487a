#include "kirchhoff2d/gevrey.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/output.hpp"

namespace kirchhoff2d {

using nlohmann::json;

int DerivativeSequence::usable_count() const {
  if (usable_to < usable_from) return static_cast<int>(size());
  int n = 0;
  for (int k : orders)
    if (k >= usable_from && k <= usable_to) ++n;
  return n;
}

void DerivativeSequence::validate() const {
  if (orders.size() != magnitudes.size()) throw std::invalid_argument("one magnitude per order");
  for (size_t i = 0; i < size(); ++i)
    if (!std::isfinite(magnitudes[i]) || magnitudes[i] < 0) throw std::invalid_argument("magnitudes must be finite");
}

namespace {

// Chebyshev coefficients of the derivative
Eigen::VectorXd cheb_derivative(const Eigen::VectorXd& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(std::max(n, 1));
  if (n < 1) return d;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 2);
  for (int k = n - 1; k >= 0; --k) b[k] = b[k + 2] + 2.0 * (k + 1) * c[k + 1];
  for (int k = 0; k < n; ++k) d[k] = b[k];
  d[0] *= 0.5;
  return d;
}

Eigen::RowVectorXd cheb_row(double x, int n) {
  Eigen::RowVectorXd t(n + 1);
  t[0] = 1;
  if (n >= 1) t[1] = x;
  for (int j = 2; j <= n; ++j) t[j] = 2 * x * t[j - 1] - t[j - 2];
  return t;
}

}  // namespace

DerivativeSequence spectral_derivatives(const std::vector<double>& samples, double t0, double t1, int K,
                                        SpectralOptions opts) {
  const int N = static_cast<int>(samples.size());
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  if (N < 4 * std::max(K, 1)) throw std::invalid_argument("need at least 4K samples");
  if (!(t1 > t0)) throw std::invalid_argument("empty time window");
  int deg = opts.degree > 0 ? opts.degree : static_cast<int>(std::ceil(2 * std::sqrt(static_cast<double>(N))));
  deg = std::min(deg, N - 2);

  Eigen::MatrixXd A(N, deg + 1);
  Eigen::VectorXd y(N);
  for (int i = 0; i < N; ++i) {
    double x = -1.0 + 2.0 * i / (N - 1);
    A.row(i) = cheb_row(x, deg);
    y[i] = samples[i];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::VectorXd c = qr.solve(y);
  Eigen::MatrixXd R = qr.matrixQR().topRows(deg + 1).triangularView<Eigen::Upper>();

  double rss = (A * c - y).squaredNorm();
  double sigma = std::sqrt(rss / std::max(1, N - deg - 1));
  // never trust below double rounding of the data
  sigma = std::max({sigma, 1e-15 * y.cwiseAbs().maxCoeff(), opts.absolute_noise});

  // derivative operators acting on coefficient vectors
  const double scale = 2.0 / (t1 - t0);
  DerivativeSequence seq;
  seq.provenance = "spectral";
  Eigen::MatrixXd Dk = Eigen::MatrixXd::Identity(deg + 1, deg + 1);
  Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(deg + 1, deg + 1);
  for (int j = 0; j <= deg; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(deg + 1);
    e[j] = 1;
    Eigen::VectorXd d = cheb_derivative(e);
    D1.col(j).head(std::min<int>(d.size(), deg + 1)) = d.head(std::min<int>(d.size(), deg + 1));
  }
  const int P = std::max(3, opts.subwindow_points);
  std::vector<Eigen::RowVectorXd> rows(P);
  for (int p = 0; p < P; ++p) rows[p] = cheb_row(-0.5 + static_cast<double>(p) / (P - 1), deg);

  bool floor_hit = false;
  seq.usable_from = opts.min_order;
  seq.usable_to = opts.min_order - 1;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) Dk = D1 * Dk;
    Eigen::VectorXd ck = Dk * c;
    double sk = std::pow(scale, k);
    double mag = 0, noise = 0;
    for (int p = 0; p < P; ++p) {
      mag = std::max(mag, std::abs(rows[p].dot(ck)));
      // std of the point value: sigma |R^-T (Dk^T row)|
      Eigen::VectorXd g = Dk.transpose() * rows[p].transpose();
      Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(g);
      noise = std::max(noise, sigma * z.norm());
    }
    seq.orders.push_back(k);
    seq.magnitudes.push_back(mag * sk);
    seq.noise.push_back(noise * sk);
    if (k < opts.min_order) continue;
    if (!floor_hit && mag > opts.noise_factor * noise && mag > 0)
      seq.usable_to = k;
    else
      floor_hit = true;
  }
  if (seq.usable_to < seq.usable_from) seq.usable_to = seq.usable_from - 1;
  int usable = seq.usable_to - seq.usable_from + 1;
  if (usable < 3)
    throw NoiseFloor("only " + std::to_string(std::max(usable, 0)) + " derivative orders above the noise floor");
  return seq;
}

DerivativeSequence spectral_derivatives(const std::function<double(double)>& f, double t0, double t1, int n_samples,
                                        int K, SpectralOptions opts) {
  std::vector<double> s(n_samples);
  for (int i = 0; i < n_samples; ++i) s[i] = f(t0 + (t1 - t0) * i / (n_samples - 1));
  return spectral_derivatives(s, t0, t1, K, opts);
}

GevreyFit fit_gevrey(const DerivativeSequence& seq) {
  seq.validate();
  std::vector<int> ks;
  std::vector<double> ys;
  bool all = seq.usable_to < seq.usable_from;
  for (size_t i = 0; i < seq.size(); ++i) {
    int k = seq.orders[i];
    if (!all && (k < seq.usable_from || k > seq.usable_to)) continue;
    if (!(seq.magnitudes[i] > 0)) throw NoiseFloor("vanishing magnitude at order " + std::to_string(k));
    ks.push_back(k);
    ys.push_back(std::log(seq.magnitudes[i]));
  }
  const int n = static_cast<int>(ks.size());
  if (n < 3) throw NoiseFloor("need at least 3 usable orders, have " + std::to_string(n));
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 1;
    A(i, 1) = ks[i];
    A(i, 2) = std::lgamma(ks[i] + 1.0);
    y[i] = ys[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  GevreyFit fit;
  fit.condition = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  if (!(fit.condition <= 1e12))
    throw IllConditioned("design matrix condition number " + std::to_string(fit.condition));
  Eigen::Vector3d b = svd.solve(y);
  fit.C = std::exp(b[0]);
  fit.L = std::exp(b[1]);
  fit.M = b[2];
  fit.residual = std::sqrt((A * b - y).squaredNorm() / n);
  fit.usable_from = ks.front();
  fit.usable_to = ks.back();
  return fit;
}

DerivativeSequence synthetic_sequence(double C, double L, double M, int K) {
  DerivativeSequence s;
  for (int k = 0; k <= K; ++k) {
    s.orders.push_back(k);
    s.magnitudes.push_back(std::exp(std::log(C) + k * std::log(L) + M * std::lgamma(k + 1.0)));
    s.noise.push_back(0);
  }
  s.usable_from = 0;
  s.usable_to = K;
  return s;
}

std::vector<ChannelReport> trajectory_gevrey_report(const CsvTable& traj, int K) {
  std::vector<double> t = traj.column("t");
  // keep the uniformly spaced prefix
  size_t n = t.size();
  if (n >= 3) {
    double dt = t[1] - t[0];
    for (size_t i = 2; i < t.size(); ++i)
      if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
        n = i;
        break;
      }
  }
  // state variables are O(1) nondimensional; anything near 1e-15 of that is roundoff
  double scale = 1.0;
  for (const char* name : {"hx", "hy", "theta"})
    for (double v : traj.column(name)) scale = std::max(scale, std::abs(v));
  std::vector<ChannelReport> out;
  for (const char* name : {"hx", "hy", "theta"}) {
    ChannelReport ch;
    ch.name = name;
    std::vector<double> v = traj.column(name);
    v.resize(n);
    try {
      if (n < 2) throw NoiseFloor("trajectory has fewer than two samples");
      SpectralOptions so;
      so.min_order = 1;
      so.absolute_noise = 1e-15 * scale;
      int k = std::min(K, static_cast<int>(n) / 4);
      ch.sequence = spectral_derivatives(v, t[0], t[n - 1], k, so);
      ch.fit = fit_gevrey(ch.sequence);
    } catch (const NoiseFloor& e) {
      ch.status = "degenerate";
      ch.message = e.what();
    } catch (const IllConditioned& e) {
      ch.status = "ill-conditioned";
      ch.message = e.what();
    } catch (const std::invalid_argument& e) {
      ch.status = "degenerate";
      ch.message = e.what();
    }
    out.push_back(std::move(ch));
  }
  return out;
}

json gevrey_report_json(const std::vector<ChannelReport>& report) {
  json j = json::object();
  json chans = json::array();
  for (const auto& ch : report) {
    json c;
    c["channel"] = ch.name;
    c["status"] = ch.status;
    if (!ch.message.empty()) c["message"] = ch.message;
    c["orders"] = ch.sequence.orders;
    c["magnitudes"] = ch.sequence.magnitudes;
    c["noise"] = ch.sequence.noise;
    if (ch.status == "ok") {
      c["C"] = ch.fit.C;
      c["L"] = ch.fit.L;
      c["M"] = ch.fit.M;
      c["residual"] = ch.fit.residual;
      c["condition"] = ch.fit.condition;
      c["usable_orders"] = {ch.fit.usable_from, ch.fit.usable_to};
    }
    chans.push_back(c);
  }
  j["channels"] = chans;
  j["model"] = "|f^(k)| ~ C L^k (k!)^M over the usable orders only";
  return j;
}

std::string gevrey_report_svg(const ChannelReport& ch) {
  PlotSeries data{"|f^(k)|/k!", {}, {}}, model{"fit", {}, {}};
  for (size_t i = 0; i < ch.sequence.size(); ++i) {
    int k = ch.sequence.orders[i];
    double lf = std::lgamma(k + 1.0);
    data.x.push_back(k);
    data.y.push_back(ch.sequence.magnitudes[i] / std::exp(lf));
    if (ch.status == "ok" && k >= ch.fit.usable_from && k <= ch.fit.usable_to) {
      model.x.push_back(k);
      model.y.push_back(std::exp(std::log(ch.fit.C) + k * std::log(ch.fit.L) + (ch.fit.M - 1) * lf));
    }
  }
  std::string title = ch.name + ": ";
  if (ch.status == "ok") {
    char b[128];
    std::snprintf(b, sizeof b, "M = %.3f, L = %.3g, C = %.3g", ch.fit.M, ch.fit.L, ch.fit.C);
    title += b;
  } else {
    title += ch.status;
  }
  return svg_plot(title, "order k", {data, model}, true);
}

}  // namespace kirchhoff2d
