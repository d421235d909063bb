#include "torsionlab/trace_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "torsionlab/special.hpp"

namespace torsionlab {

TraceValue ThetaSeries::eval(double t, bool with_kernel) const {
  if (t <= 0.0) throw std::domain_error("ThetaSeries::eval: t must be positive");
  double acc = with_kernel ? kernel_coef : 0.0;
  for (const auto& [c, lam] : terms) acc += c * std::exp(-t * lam);
  return {acc, weight_bound * tail_heat_bound(tail, t)};
}

TraceValue ThetaSeries::integral_one_to_infinity() const {
  double acc = 0.0;
  for (const auto& [c, lam] : terms) acc += c * exp_integral_e1(lam);
  // tail(t) <= tail(1) e^{-(t-1) lambda_cut}; integrate dt/t over [1, inf)
  const double t1 = weight_bound * tail_heat_bound(tail, 1.0);
  const double rate = std::max(tail.lambda_cut, 1e-8);
  return {acc, t1 / rate};
}

double ThetaSeries::min_positive_lambda() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [c, lam] : terms)
    if (c != 0.0) m = std::min(m, lam);
  return m;
}

void ThetaSeries::merge_terms() {
  std::map<double, double> acc;
  for (const auto& [c, lam] : terms) acc[lam] += c;
  terms.clear();
  for (const auto& [lam, c] : acc)
    if (c != 0.0) terms.emplace_back(c, lam);
}

namespace {

double line_weight(const SpectralLine& l, TraceWeight weight) {
  switch (weight) {
    case TraceWeight::One: return 1.0;
    case TraceWeight::N: return l.degree;
    case TraceWeight::NBase: return l.q_base;
    case TraceWeight::NFiber: return l.q_fiber;
  }
  return 0.0;
}

}  // namespace

ThetaSeries theta_series_from_spectrum(const Spectrum& spec, TraceWeight weight) {
  if ((weight == TraceWeight::NBase || weight == TraceWeight::NFiber) && !spec.split_degrees)
    throw std::logic_error("theta_series_from_spectrum: split-degree weights need split degrees");
  ThetaSeries s;
  s.tail = spec.tail;
  double wmax = 1.0;
  for (const auto& l : spec.lines) {
    const double w = line_weight(l, weight);
    wmax = std::max(wmax, std::abs(w));
    const double c = ((l.degree % 2 == 0) ? 1.0 : -1.0) * w * double(l.mult);
    if (l.lambda <= 1e-12)
      s.kernel_coef += c;
    else
      s.terms.emplace_back(c, l.lambda);
  }
  s.weight_bound = weight == TraceWeight::One ? 1.0 : std::max(wmax, spec.tail.power + 2.0);
  s.merge_terms();
  return s;
}

ThetaSeries theta_series_product(const Spectrum& base, const Spectrum& fiber_staggered,
                                 double c_base, double c_fiber, TraceWeight weight) {
  if (c_base <= 0.0 || c_fiber <= 0.0)
    throw std::domain_error("theta_series_product: scale coefficients must be positive");
  // structural facts behind the reduction, checked on the actual truncations
  ThetaSeries base_str = theta_series_from_spectrum(base, TraceWeight::One);
  ThetaSeries fiber_str = theta_series_from_spectrum(fiber_staggered, TraceWeight::One);
  for (double t : {0.05, 0.7}) {
    const double sm = base_str.eval(t, true).value;
    const double sf = fiber_str.eval(t, true).value;
    if (std::abs(sm) > 1e-9)
      throw std::logic_error("theta_series_product: base index factor is not zero");
    if (std::abs(sf - 1.0) > 1e-9)
      throw std::logic_error(
          "theta_series_product: fiber index is not 1; pass a staggered fiber spectrum");
  }

  ThetaSeries s;
  switch (weight) {
    case TraceWeight::One:
    case TraceWeight::NFiber:
      // str factorizes through the base index 0; N_Y-weighted trace carries the
      // same vanishing base factor. Both are exactly zero at any truncation.
      s.kernel_coef = weight == TraceWeight::One ? 0.0 : 0.0;
      s.tail = {0.0, 0.0, 0.0};
      return s;
    case TraceWeight::N:
    case TraceWeight::NBase: {
      // reduces to the N_M-weighted base trace times the fiber index 1
      ThetaSeries bm = theta_series_from_spectrum(base, TraceWeight::NBase);
      s.kernel_coef = bm.kernel_coef;
      for (const auto& [c, lam] : bm.terms) s.terms.emplace_back(c, c_base * lam);
      s.tail = bm.tail;
      s.tail.lambda_cut *= c_base;
      s.tail.kappa *= std::pow(std::max(1.0, 1.0 / c_base), s.tail.power);
      s.weight_bound = bm.weight_bound;
      return s;
    }
  }
  throw std::logic_error("theta_series_product: unreachable");
}

}  // namespace torsionlab
