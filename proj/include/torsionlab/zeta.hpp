#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionlab/expansion_fit.hpp"
#include "torsionlab/spectrum.hpp"
#include "torsionlab/trace_series.hpp"

namespace torsionlab {

struct ZetaResult {
  double zeta_at_zero = 0.0;
  double zeta_prime_at_zero = 0.0;
  double log_torsion = 0.0;  // = -zeta_prime_at_zero / 2
  std::string method;        // "spectral-closed-form" | "heat-split"
  double error_budget = 0.0;
  bool constant_term_violation = false;
  std::map<std::string, double> diagnostics;
};

// Raised when a spectrum does not match the closed-form circle pattern; callers
// fall back to the heat-split path.
struct UnsupportedSpectrumStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduction of the (2 pi m / L)^2 circle pattern to shifted Riemann zeta sums;
// zeta'(0) both from the special values and from Euler-Maclaurin continuation.
ZetaResult torsion_zeta_closed_form(const Spectrum& spec);

struct HeatSplitOptions {
  double t_lo = 0.0;          // 0 = use the fit window lower edge
  int quad_panels = 32;
  int quad_order = 16;
  double residual_tol = 1e-5;   // refuse above this (relative to |a_{-1/2}|)
  double const_tol_rel = 1e-3;  // theorem-violation threshold for the constant term
};

// zeta'(0) assembled from the [0,1] / [1,inf) split of the torsion integral with
// the t^{-1/2} and kernel divergences removed in closed form. `theta_underline`
// carries the positive-eigenvalue terms plus the kernel constant chi2 in
// kernel_coef; `fit` supplies the small-time coefficients of theta.
ZetaResult torsion_zeta_heat_split(const ThetaSeries& theta_underline, const ExpansionFit& fit,
                                   double chi2, const HeatSplitOptions& opts = {});

// Convenience: sample, fit (window scaled by the first eigenvalue), assemble.
ZetaResult torsion_heat_split_auto(const ThetaSeries& theta, double chi2,
                                   const HeatSplitOptions& opts = {});

// sum (-1)^p p b_p
long long secondary_euler_characteristic(const std::vector<long long>& betti);

// tr_s e^{-t D^2} (kernel included); t-independence is the caller's invariant.
TraceValue mckean_singer_index(const ThetaSeries& index_series, double t);

}  // namespace torsionlab
