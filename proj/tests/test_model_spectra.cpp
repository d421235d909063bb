#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "torsionlab/fiber_operator.hpp"
#include "torsionlab/model_spectra.hpp"
#include "torsionlab/trace_series.hpp"

using namespace torsionlab;

namespace {
constexpr double kTwoPi = 6.283185307179586;

std::vector<double> sorted_lambdas(const Spectrum& s, int degree) {
  std::vector<double> v;
  for (const auto& l : s.lines)
    if (l.degree == degree)
      for (int m = 0; m < l.mult; ++m) v.push_back(l.lambda);
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

TEST_CASE("circle Hodge spectrum") {
  const Spectrum s = circle_hodge_spectrum({kTwoPi}, 32);
  // kernel (1, 1): circle cohomology
  const auto dims = s.kernel_dims(1);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 1);
  // nonzero eigenvalues m^2 with multiplicity 2 in both degrees; finite-difference
  // oracle cross-check on a 2048-point grid
  const int N = 2048;
  const double dth = kTwoPi / N;
  std::vector<double> fd;
  for (int m = 1; m <= 10; ++m)
    fd.push_back(std::pow(2.0 / dth * std::sin(0.5 * m * dth), 2.0));
  const auto deg0 = sorted_lambdas(s, 0);
  for (int m = 1; m <= 10; ++m) {
    CHECK(deg0[2 * m - 1] == doctest::Approx(double(m) * m));
    CHECK(std::abs(fd[m - 1] - deg0[2 * m - 1]) / (double(m) * m) <= 1e-3);
  }
  // L-scaling: lambda ~ 1/L^2
  const Spectrum s1 = circle_hodge_spectrum({1.0}, 8);
  const Spectrum s2 = circle_hodge_spectrum({2.0}, 8);
  const auto l1 = sorted_lambdas(s1, 0), l2 = sorted_lambdas(s2, 0);
  for (size_t i = 1; i < l1.size(); ++i) CHECK(l1[i] == doctest::Approx(4.0 * l2[i]));
  CHECK_THROWS_AS(circle_hodge_spectrum({kTwoPi}, 0), std::invalid_argument);
}

TEST_CASE("fiber Witten spectrum") {
  const Spectrum s = fiber_witten_spectrum({2, 1.0, 8});
  // lowest lines: (q=0, 0, m1), (q=0, 2, m2), (q=1, 2, m2)
  const auto deg0 = sorted_lambdas(s, 0);
  CHECK(deg0[0] == 0.0);
  CHECK(deg0[1] == doctest::Approx(2.0));
  CHECK(deg0[2] == doctest::Approx(2.0));
  const auto deg1 = sorted_lambdas(s, 1);
  CHECK(deg1[0] == doctest::Approx(2.0));
  CHECK(deg1[1] == doctest::Approx(2.0));
  // kernel: single line in degree 0
  const auto dims = s.kernel_dims(2);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 0);
  CHECK(dims[2] == 0);
  // FD oracle agreement on the first lines in degree 0
  const auto fd = fd_fiber_eigenvalues(1.0, 0, 900, 8.0, 6);
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(deg0[i] - fd[i]) <= 1e-3 * std::max(1.0, deg0[i]));
  // tau homogeneity
  const Spectrum s2 = fiber_witten_spectrum({2, 2.0, 8});
  const auto a = sorted_lambdas(s, 1), b = sorted_lambdas(s2, 1);
  for (size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(2.0 * a[i]));
  CHECK_THROWS_AS(fiber_witten_spectrum({3, 1.0, 8}), std::invalid_argument);
}

TEST_CASE("product spectrum") {
  const Spectrum base = circle_hodge_spectrum({kTwoPi}, 16);
  const Spectrum fib = fiber_witten_spectrum({2, 1.0, 8}, true);
  ScalingParams sc;
  const Spectrum prod = product_spectrum(base, fib, sc);
  // ground line: degree 0, eigenvalue 0, multiplicity 1
  const auto dims = prod.kernel_dims(3);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 1);
  CHECK(dims[2] == 0);
  CHECK(dims[3] == 0);
  // epsilon scaling replaces mu by mu/4
  sc.epsilon = 0.5;
  const Spectrum prod_half = product_spectrum(base, fib, sc);
  double lam_base_only = -1.0, lam_base_only_half = -1.0;
  for (const auto& l : prod.lines)
    if (l.q_fiber == 0 && l.lambda > 0.5 && l.degree == 0) {
      lam_base_only = l.lambda;
      break;
    }
  for (const auto& l : prod_half.lines)
    if (l.q_fiber == 0 && l.lambda > 0.1 && l.degree == 0) {
      lam_base_only_half = l.lambda;
      break;
    }
  CHECK(lam_base_only == doctest::Approx(1.0));
  CHECK(lam_base_only_half == doctest::Approx(0.25));
  // twisted input rejected
  sc.holonomy_angle = 0.3;
  CHECK_THROWS_AS(product_spectrum(base, fib, sc), std::invalid_argument);
  // monotone truncation: enlarging cutoffs only appends lines
  const Spectrum small = scaled_product_spectrum(circle_hodge_spectrum({kTwoPi}, 8),
                                                 fiber_witten_spectrum({2, 1.0, 6}, true), 1.0, 1.0);
  const Spectrum big = scaled_product_spectrum(circle_hodge_spectrum({kTwoPi}, 12),
                                               fiber_witten_spectrum({2, 1.0, 9}, true), 1.0, 1.0);
  std::multiset<std::tuple<int, int, int, double>> bigset;
  for (const auto& l : big.lines)
    for (int m = 0; m < l.mult; ++m) bigset.insert({l.degree, l.q_base, l.q_fiber, l.lambda});
  for (const auto& l : small.lines)
    for (int m = 0; m < l.mult; ++m) {
      auto it = bigset.find({l.degree, l.q_base, l.q_fiber, l.lambda});
      REQUIRE(it != bigset.end());
      bigset.erase(it);
    }
}

TEST_CASE("holonomy-twisted spectrum") {
  const CircleGeometry geom{kTwoPi};
  const FiberModel fib{2, 1.0, 10};
  // alpha = 0 reproduces the product line multiset
  const Spectrum tw0 = holonomy_twisted_spectrum(geom, fib, 0.0, 12);
  const Spectrum prod = scaled_product_spectrum(circle_hodge_spectrum(geom, 12),
                                                fiber_witten_spectrum(fib, false), 1.0, 1.0);
  auto collect = [](const Spectrum& s, double lam_max) {
    std::vector<std::pair<int, double>> v;
    for (const auto& l : s.lines)
      if (l.lambda <= lam_max)
        for (int m = 0; m < l.mult; ++m) v.emplace_back(l.degree, l.lambda);
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto a = collect(tw0, 20.0), b = collect(prod, 20.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-12));
  }
  // alpha = pi: the ell = 1 sector carries base frequencies (m + 1/2)^2; the
  // lowest twisted line above the ell = 0 block is 1/4 + 2 tau
  const Spectrum twpi = holonomy_twisted_spectrum(geom, fib, 3.141592653589793, 12);
  std::vector<double> d1;
  for (const auto& l : twpi.lines)
    if (l.q_fiber == 1 && l.q_base == 0) d1.push_back(l.lambda);
  std::sort(d1.begin(), d1.end());
  CHECK(d1.front() == doctest::Approx(0.25 + 2.0));
  // kernel still (1, 1): rotation-invariant ground state
  const auto dims = twpi.kernel_dims(3);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 1);
  // angle normalized mod 2 pi
  const Spectrum twwrap = holonomy_twisted_spectrum(geom, fib, 2.0 * 3.141592653589793, 12);
  const auto c = collect(twwrap, 20.0);
  REQUIRE(c.size() == a.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(c[i].second == doctest::Approx(a[i].second));
  CHECK_THROWS_AS(holonomy_twisted_spectrum(geom, {4, 1.0, 6}, 1.0, 8), std::invalid_argument);
}

TEST_CASE("heat supertraces") {
  const Spectrum base = circle_hodge_spectrum({kTwoPi}, 64);
  const Spectrum fib = fiber_witten_spectrum({2, 1.0, 40}, true);
  const Spectrum prod = scaled_product_spectrum(base, fib, 1.0, 1.0);
  for (double t : {0.1, 1.0, 10.0}) {
    // McKean-Singer: straight supertrace telescopes to chi(S^1) = 0
    CHECK(std::abs(heat_supertrace(prod, t, TraceWeight::One).value) <= 1e-12);
    // N_Y weight carries the vanishing base index factor
    CHECK(std::abs(heat_supertrace(prod, t, TraceWeight::NFiber).value) <= 1e-12);
  }
  // fiber-only N_Y trace: tr_s(N_Y e^{-t fiber}) = -2x/(1-x), x = e^{-2 tau t}
  const double t = 1.0, x = std::exp(-2.0 * t);
  const double closed = -2.0 * x / (1.0 - x);
  const double got = heat_supertrace(fib, t, TraceWeight::NFiber).value;
  CHECK(std::abs(got - closed) <= 1e-8);
  // missing split degrees rejected
  Spectrum nosplit = prod;
  nosplit.split_degrees = false;
  CHECK_THROWS_AS(heat_supertrace(nosplit, 1.0, TraceWeight::NFiber), std::logic_error);
  // fiber Witten index is 1 for every t, tau
  for (double tau : {0.5, 2.0})
    for (double tt : {0.3, 2.0}) {
      const Spectrum f = fiber_witten_spectrum({2, tau, 30}, true);
      CHECK(heat_supertrace(f, tt, TraceWeight::One).value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("factorized product series against brute sums") {
  const Spectrum base = circle_hodge_spectrum({kTwoPi}, 64);
  const Spectrum fib = fiber_witten_spectrum({2, 1.0, 40}, true);
  const ThetaSeries th = theta_series_product(base, fib, 1.0, 1.0, TraceWeight::N);
  const Spectrum prod = scaled_product_spectrum(base, fib, 1.0, 1.0);
  for (double t : {0.3, 1.0, 3.0}) {
    const double brute = heat_supertrace(prod, t, TraceWeight::N).value;
    const double fact = th.eval(t, true).value;
    CHECK(std::abs(brute - fact) <= 1e-10 * (1.0 + std::abs(fact)));
  }
  // untwisted product identity: tr_s(N e^{-t D^2}) restricted to E equals the
  // base N_M trace for all t
  const ThetaSeries bm = theta_series_from_spectrum(base, TraceWeight::NBase);
  for (double t : {0.05, 0.7, 5.0})
    CHECK(th.eval(t, true).value == doctest::Approx(bm.eval(t, true).value).epsilon(1e-13));
  // non-staggered fiber truncation is rejected (index picks up boundary terms)
  const Spectrum fib_plain = fiber_witten_spectrum({2, 1.0, 6}, false);
  CHECK_THROWS_AS(theta_series_product(base, fib_plain, 1.0, 1.0, TraceWeight::N), std::logic_error);
}

TEST_CASE("spectrum csv round trip") {
  const Spectrum s = circle_hodge_spectrum({2.0}, 4);
  std::ostringstream os;
  write_spectrum_csv(os, s);
  CHECK(os.str().rfind("degree,q_base,q_fiber,eigenvalue,multiplicity\n", 0) == 0);
  std::istringstream is(os.str());
  const Spectrum r = read_spectrum_csv(is);
  REQUIRE(r.lines.size() == s.lines.size());
  for (size_t i = 0; i < r.lines.size(); ++i) {
    CHECK(r.lines[i].degree == s.lines[i].degree);
    CHECK(r.lines[i].lambda == s.lines[i].lambda);  // 17 digits round-trip bit-exact
    CHECK(r.lines[i].mult == s.lines[i].mult);
  }
}

TEST_CASE("truncation tail bounds dominate the omitted mass") {
  const Spectrum s = circle_hodge_spectrum({kTwoPi}, 24);
  const Spectrum big = circle_hodge_spectrum({kTwoPi}, 2000);
  for (double t : {0.05, 0.3, 1.0}) {
    const double missing = std::abs(heat_supertrace(big, t, TraceWeight::N).value -
                                    heat_supertrace(s, t, TraceWeight::N).value);
    CHECK(missing <= heat_supertrace(s, t, TraceWeight::N).bound + 1e-15);
  }
}
