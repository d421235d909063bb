#include "torsionlab/model_spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::int64_t v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

// number of occupation vectors in N^k with |n| = s
std::int64_t occupation_count(int s, int k) { return binomial(s + k - 1, k - 1); }

}  // namespace

Spectrum circle_hodge_spectrum(const CircleGeometry& geom, int max_mode) {
  if (geom.L <= 0.0) throw std::domain_error("circle_hodge_spectrum: L must be positive");
  if (max_mode < 1) throw std::invalid_argument("circle_hodge_spectrum: max_mode >= 1 required");
  Spectrum s;
  for (int deg = 0; deg <= 1; ++deg) {
    s.lines.push_back({deg, deg, 0, 0.0, 1});
    for (int m = 1; m <= max_mode; ++m) {
      const double freq = kTwoPi * m / geom.L;
      s.lines.push_back({deg, deg, 0, freq * freq, 2});
    }
  }
  const double f = kTwoPi * max_mode / geom.L;
  s.tail = {f * f, 2.0 + 2.0 * geom.L / 3.141592653589793, 0.5};
  s.split_degrees = true;
  s.sort_lines();
  return s;
}

Spectrum fiber_witten_spectrum(const FiberModel& fiber, bool staggered) {
  if (fiber.k <= 0 || fiber.k % 2 != 0)
    throw std::invalid_argument("fiber_witten_spectrum: fiber rank must be even and positive");
  if (fiber.tau <= 0.0) throw std::domain_error("fiber_witten_spectrum: tau must be positive");
  if (fiber.cutoff < 0) throw std::invalid_argument("fiber_witten_spectrum: cutoff must be >= 0");
  Spectrum s;
  for (int q = 0; q <= fiber.k; ++q) {
    const int smax = staggered ? fiber.cutoff - q : fiber.cutoff;
    for (int lev = 0; lev <= smax; ++lev)
      s.lines.push_back(
          {q, 0, q, 2.0 * fiber.tau * (lev + q), occupation_count(lev, fiber.k) * binomial(fiber.k, q)});
  }
  const int cut = staggered ? fiber.cutoff - fiber.k : fiber.cutoff;
  const double lam_cut = 2.0 * fiber.tau * std::max(cut, 0);
  const double per_level = std::pow(2.0, fiber.k);
  const double growth = std::max(1.0, 1.0 / (2.0 * fiber.tau));
  s.tail = {lam_cut, per_level * std::pow(growth, double(fiber.k)), double(fiber.k)};
  s.split_degrees = true;
  s.sort_lines();
  return s;
}

Spectrum scaled_product_spectrum(const Spectrum& base, const Spectrum& fiber, double c_base,
                                 double c_fiber) {
  if (c_base <= 0.0 || c_fiber <= 0.0)
    throw std::domain_error("scaled_product_spectrum: scale coefficients must be positive");
  Spectrum s;
  s.lines.reserve(base.lines.size() * fiber.lines.size());
  for (const auto& b : base.lines)
    for (const auto& f : fiber.lines)
      s.lines.push_back({b.degree + f.degree, b.q_base + f.q_base, b.q_fiber + f.q_fiber,
                         c_base * b.lambda + c_fiber * f.lambda, b.mult * f.mult});
  s.split_degrees = base.split_degrees && fiber.split_degrees;
  // every omitted product line has c_base mu > c_base cut_b or c_fiber nu > c_fiber cut_f
  s.tail.lambda_cut = std::min(c_base * base.tail.lambda_cut, c_fiber * fiber.tail.lambda_cut);
  const double scale_b = std::max(1.0, 1.0 / c_base);
  const double scale_f = std::max(1.0, 1.0 / c_fiber);
  s.tail.kappa = base.tail.kappa * fiber.tail.kappa * std::pow(scale_b, base.tail.power) *
                 std::pow(scale_f, fiber.tail.power);
  s.tail.power = base.tail.power + fiber.tail.power;
  s.sort_lines();
  return s;
}

Spectrum product_spectrum(const Spectrum& base, const Spectrum& fiber, const ScalingParams& scaling) {
  if (scaling.holonomy_angle != 0.0)
    throw std::invalid_argument(
        "product_spectrum: twisted geometry; use holonomy_twisted_spectrum instead");
  return scaled_product_spectrum(base, fiber, scaling.epsilon * scaling.epsilon, 1.0);
}

Spectrum holonomy_twisted_spectrum(const CircleGeometry& geom, const FiberModel& fiber, double alpha,
                                   int max_mode, double c_base, double c_fiber) {
  if (fiber.k != 2)
    throw std::invalid_argument("holonomy_twisted_spectrum: rotation holonomy is built for k = 2");
  if (max_mode < 1) throw std::invalid_argument("holonomy_twisted_spectrum: max_mode >= 1 required");
  alpha = std::fmod(alpha, kTwoPi);
  if (alpha < 0.0) alpha += kTwoPi;

  // fiber states by (energy level contribution s+q, total angular momentum):
  // q=0: scalar |s,l>, l in {-s..s step 2}
  // q=1: scalar tensor dy^{+-}: total l = l_orb +- 1, energy 2 tau (s+1)
  // q=2: dy1^dy2 invariant: total l = l_orb, energy 2 tau (s+2)
  struct FiberState {
    int q;
    int ell;
    double lambda;
  };
  std::vector<FiberState> states;
  for (int s = 0; s <= fiber.cutoff; ++s)
    for (int lo = -s; lo <= s; lo += 2) {
      states.push_back({0, lo, 2.0 * fiber.tau * s});
      states.push_back({1, lo + 1, 2.0 * fiber.tau * (s + 1)});
      states.push_back({1, lo - 1, 2.0 * fiber.tau * (s + 1)});
      states.push_back({2, lo, 2.0 * fiber.tau * (s + 2)});
    }

  Spectrum spec;
  for (const auto& st : states)
    for (int m = -max_mode; m <= max_mode; ++m) {
      const double freq = (kTwoPi * m + st.ell * alpha) / geom.L;
      const double lam = c_base * freq * freq + c_fiber * st.lambda;
      for (int qm = 0; qm <= 1; ++qm)
        spec.lines.push_back({qm + st.q, qm, st.q, lam, 1});
    }
  spec.split_degrees = true;
  // conservative counting-function data: frequencies shifted by at most 2 pi
  const double fcut = kTwoPi * (max_mode - 1) / geom.L;
  spec.tail.lambda_cut =
      std::min(c_base * fcut * fcut, c_fiber * 2.0 * fiber.tau * fiber.cutoff);
  const double kb = (2.0 + 2.0 * geom.L / 3.141592653589793) * std::pow(std::max(1.0, 1.0 / c_base), 0.5);
  const double kf = 4.0 * std::pow(std::max(1.0, 1.0 / (2.0 * fiber.tau * c_fiber)), 2.0);
  spec.tail.kappa = 4.0 * kb * kf;
  spec.tail.power = 2.5;
  spec.sort_lines();
  return spec;
}

}  // namespace torsionlab
