#pragma once

#include "torsionlab/spectrum.hpp"

#include <utility>
#include <vector>

namespace torsionlab {

// Weighted heat-trace series sum_i c_i e^{-t lambda_i} with lambda_i > 0, plus
// the kernel contribution (a t-independent constant) kept separately.
struct ThetaSeries {
  std::vector<std::pair<double, double>> terms;  // (coef, lambda > 0)
  double kernel_coef = 0.0;                      // sum over lambda = 0 lines
  TailBound tail;
  double weight_bound = 1.0;

  // theta(t); with_kernel adds the kernel constant back.
  TraceValue eval(double t, bool with_kernel) const;

  // int_1^inf theta_underline(t) dt/t, exact per term via E1; bound covers the tail.
  TraceValue integral_one_to_infinity() const;

  double min_positive_lambda() const;
  void merge_terms();
};

ThetaSeries theta_series_from_spectrum(const Spectrum& spec, TraceWeight weight);

// Factorized product series. For the metric c_base * mu + c_fiber * nu over the
// circle-times-oscillator geometry the degree-weighted supertrace splits as
//   tr_s(N e) = tr_s(N_M e_M) str(e_Y) + str(e_M) tr_s(N_Y e_Y),
// and the base index factor str(e_M) vanishes while the staggered fiber complex
// has index exactly 1. The producer checks both structural facts numerically and
// then emits the reduced series (truncation error comes from the base factor only).
ThetaSeries theta_series_product(const Spectrum& base, const Spectrum& fiber_staggered,
                                 double c_base, double c_fiber, TraceWeight weight);

}  // namespace torsionlab
