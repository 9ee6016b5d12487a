#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kirchhoff2d {

struct CsvTable;

struct DerivativeSequence {
  std::vector<int> orders;
  std::vector<double> magnitudes;   // sup |f^(k)| over the interior half window
  std::vector<double> noise;        // propagated one-sigma noise of each magnitude (0 if unknown)
  std::string provenance = "synthetic";  // spectral | finite-difference | synthetic
  int usable_from = 0, usable_to = -1;   // inclusive order range, to < from means all

  size_t size() const { return orders.size(); }
  int usable_count() const;
  void validate() const;
};

struct GevreyFit {
  double C = 0, L = 0, M = 0;
  double residual = 0;        // rms of the log residual
  double condition = 0;       // of the design matrix
  int usable_from = 0, usable_to = -1;
};

struct SpectralOptions {
  int degree = 0;             // 0 picks ceil(2 sqrt(samples))
  int subwindow_points = 257;
  double noise_factor = 10.0; // usable while magnitude > factor * propagated noise
  int min_order = 0;          // first order considered usable
  double absolute_noise = 0;  // lower bound on the sample noise
};

// samples of f at uniformly spaced times on [t0, t1]
DerivativeSequence spectral_derivatives(const std::vector<double>& samples, double t0, double t1, int K,
                                        SpectralOptions opts = {});
DerivativeSequence spectral_derivatives(const std::function<double(double)>& f, double t0, double t1, int n_samples,
                                        int K, SpectralOptions opts = {});

// least squares of log f_k on [1, k, ln k!] over the usable orders
GevreyFit fit_gevrey(const DerivativeSequence& seq);

DerivativeSequence synthetic_sequence(double C, double L, double M, int K);

struct ChannelReport {
  std::string name;
  std::string status = "ok";  // ok | degenerate | ill-conditioned
  std::string message;
  DerivativeSequence sequence;
  GevreyFit fit;
};

// fits the hx, hy and theta channels of a trajectory table (orders k >= 1)
std::vector<ChannelReport> trajectory_gevrey_report(const CsvTable& traj, int K = 10);
nlohmann::json gevrey_report_json(const std::vector<ChannelReport>& report);
std::string gevrey_report_svg(const ChannelReport& ch);

}  // namespace kirchhoff2d
