#pragma once

#include <array>
#include <vector>

#include "torsionlab/trace_series.hpp"

namespace torsionlab {

struct ExpansionFit {
  std::vector<double> powers;        // exponents of t (e.g. -0.5, 0, 0.5, 1.5, 2.5)
  std::vector<double> coefficients;
  double residual_rms = 0.0;
  double residual_max = 0.0;
  double condition = 0.0;
  double t_min = 0.0, t_max = 0.0;
  double data_bound = 0.0;           // worst truncation bound among samples

  double coefficient(double power) const;
};

std::vector<double> default_expansion_powers();  // {-1/2, 0, 1/2, 3/2, 5/2}

// Least-squares fit of samples (t_i, theta_i, bound_i) against sum c_p t^p.
// The constant term is estimated, never constrained. Requires >= 8 samples;
// throws on an ill-conditioned design matrix (window-adjustment error).
ExpansionFit fit_small_time_expansion(const std::vector<std::array<double, 3>>& samples,
                                      const std::vector<double>& powers);

// Log-spaced samples of theta (kernel included) over [t_min, t_max].
std::vector<std::array<double, 3>> sample_theta(const ThetaSeries& theta, double t_min,
                                                double t_max, int count);

// The default window [0.02, 0.5] is calibrated to a unit spectral gap; rescale
// it by the first positive eigenvalue so the t^{-1/2} regime is actually sampled.
std::pair<double, double> scaled_fit_window(double lambda1);

}  // namespace torsionlab
