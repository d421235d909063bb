#include "torsionlab/special.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace torsionlab {

HurwitzValue hurwitz_zeta(double s, double a) {
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a must be positive");
  if (s >= 1.0) throw std::domain_error("hurwitz_zeta: evaluated on s < 1 only");
  // Euler-Maclaurin with K explicit terms and Bernoulli corrections:
  //   zeta(s,a) = sum_{j<K} (j+a)^-s + (K+a)^{1-s}/(s-1) + (K+a)^-s / 2
  //             + sum_r B_{2r}/(2r)! * (s)_{2r-1} (K+a)^{-s-2r+1}
  static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  const int K = 24;
  double v = 0.0, dv = 0.0;
  for (int j = 0; j < K; ++j) {
    const double base = j + a;
    const double t = std::pow(base, -s);
    v += t;
    dv += -std::log(base) * t;
  }
  const double c = K + a;
  const double lc = std::log(c);
  {
    const double t = std::pow(c, 1.0 - s) / (s - 1.0);
    v += t;
    dv += t * (-lc - 1.0 / (s - 1.0));
  }
  {
    const double t = 0.5 * std::pow(c, -s);
    v += t;
    dv += -lc * t;
  }
  // term_r = B_{2r}/(2r)! * P_r(s) * c^{-s-2r+1},  P_r(s) = s(s+1)...(s+2r-2)
  double fact = 1.0;
  for (int r = 1; r <= 6; ++r) {
    fact *= (2.0 * r - 1.0) * (2.0 * r);
    double P = 1.0, dP = 0.0;
    for (int i = 0; i <= 2 * r - 2; ++i) {
      dP = dP * (s + i) + P;
      P *= (s + i);
    }
    const double cpow = std::pow(c, -s - 2.0 * r + 1.0);
    const double coef = bern[r - 1] / fact;
    v += coef * P * cpow;
    dv += coef * cpow * (dP - P * lc);
  }
  return {v, dv};
}

double exp_integral_e1(double x) {
  if (x <= 0.0) throw std::domain_error("exp_integral_e1: x must be positive");
  if (x > 700.0) return 0.0;
  return boost::math::expint(1, x);
}

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  // Newton iteration on Legendre polynomials
  for (int i = 0; i < n; ++i) {
    double x = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

}  // namespace torsionlab
