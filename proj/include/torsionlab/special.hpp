#pragma once

#include <utility>
#include <vector>

namespace torsionlab {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Hurwitz zeta zeta(s, a) for a > 0, s < 1 window around 0, by Euler-Maclaurin,
// together with its s-derivative (each summation term differentiated in closed
// form). Accurate to ~1e-12 near s = 0.
struct HurwitzValue {
  double value = 0.0;
  double ds = 0.0;
};
HurwitzValue hurwitz_zeta(double s, double a);

// Exponential integral E1(x), x > 0.
double exp_integral_e1(double x);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre integral of f over [a, b] with `panels` subintervals;
// returns (value, error estimate from half-order comparison).
template <class F>
std::pair<double, double> integrate_gauss(F&& f, double a, double b, int panels, int order = 16) {
  const GaussRule& hi = gauss_legendre(order);
  const GaussRule& lo = gauss_legendre(order / 2);
  double vhi = 0.0, vlo = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) vhi += 0.5 * h * hi.w[i] * f(mid + 0.5 * h * hi.x[i]);
    for (int i = 0; i < order / 2; ++i) vlo += 0.5 * h * lo.w[i] * f(mid + 0.5 * h * lo.x[i]);
  }
  return {vhi, std::abs(vhi - vlo)};
}

}  // namespace torsionlab
