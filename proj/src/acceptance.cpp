#include "torsionlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "torsionlab/assembly.hpp"
#include "torsionlab/clifford.hpp"
#include "torsionlab/heat.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/model_spectra.hpp"
#include "torsionlab/trace_series.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

std::vector<std::pair<GeneratorKind, int>> generators(const AlgebraShape& shape) {
  std::vector<std::pair<GeneratorKind, int>> g;
  for (int i = 1; i <= shape.n; ++i) g.emplace_back(GeneratorKind::Base, i);
  for (int i = 1; i <= shape.k; ++i) g.emplace_back(GeneratorKind::Fiber, i);
  return g;
}

CriterionResult criterion_clifford(const RunConfig& cfg) {
  Check c;
  for (const AlgebraShape shape : {AlgebraShape{1, 2}, AlgebraShape{3, 2}}) {
    Algebra alg(shape);
    const auto gens = generators(shape);
    const auto id = ExteriorOperator::identity(alg);
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < gens.size(); ++j) {
        const auto ci = clifford_left(alg, gens[i].first, gens[i].second);
        const auto cj = clifford_left(alg, gens[j].first, gens[j].second);
        const auto hi = clifford_right(alg, gens[i].first, gens[i].second);
        const auto hj = clifford_right(alg, gens[j].first, gens[j].second);
        const Rational d(i == j ? 1 : 0);
        c.require(ci * cj + cj * ci == id.scaled(Rational(-2) * d), "c anticommutator");
        c.require(hi * hj + hj * hi == id.scaled(Rational(2) * d), "hat-c anticommutator");
        c.require((ci * hj + hj * ci).is_zero(), "c / hat-c anticommute");
      }
    // supertrace cancellation: exhaustive over word pairs
    const std::uint32_t efull = (1u << shape.n) - 1, ffull = (1u << shape.k) - 1;
    const long long top = top_supertrace_constant(shape);
    for (std::uint32_t ie = 0; ie <= efull; ++ie)
      for (std::uint32_t jf = 0; jf <= ffull; ++jf)
        for (std::uint32_t ie2 = 0; ie2 <= efull; ++ie2)
          for (std::uint32_t jf2 = 0; jf2 <= ffull; ++jf2) {
            const auto w = clifford_word_left(alg, ie, jf) * clifford_word_right(alg, ie2, jf2);
            const Rational s = supertrace(w);
            const bool is_top = ie == efull && jf == ffull && ie2 == efull && jf2 == ffull;
            c.require(s == (is_top ? Rational(top) : Rational(0)), "supertrace cancellation");
          }
  }
  // Berezin identity on random sparse doubled elements
  std::mt19937 rng(cfg.seed);
  for (int trial = 0; trial < 200; ++trial) {
    const AlgebraShape shape = trial % 2 == 0 ? AlgebraShape{1, 2} : AlgebraShape{2, 2};
    std::uniform_int_distribution<int> mask_e(0, (1 << shape.n) - 1), mask_f(0, (1 << shape.k) - 1);
    std::uniform_int_distribution<int> coeff(-9, 9), nterms(3, 6);
    std::vector<CliffordTerm> terms;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      CliffordTerm t;
      t.e_set = mask_e(rng);
      t.f_set = mask_f(rng);
      t.e_hat_set = mask_e(rng);
      t.f_hat_set = mask_f(rng);
      int v = coeff(rng);
      if (v == 0) v = 1;
      t.coeff = Rational(v);
      terms.push_back(t);
    }
    const Rational lhs = supertrace(operator_from_terms(shape, terms));
    const Rational rhs =
        Rational(top_supertrace_constant(shape)) * berezin_integral(form_from_terms(shape, terms));
    c.require(lhs == rhs, "Berezin identity (trial " + std::to_string(trial) + ")");
  }
  return {1, "clifford-identities", c.ok, c.ok ? "anticommutators, supertrace cancellation, 200 Berezin trials exact" : c.detail.str(), 0};
}

CriterionResult criterion_star(const RunConfig&) {
  Check c;
  const AlgebraShape shape{1, 2};
  Algebra alg(shape);
  const auto n_total = number_operator(alg, NumberKind::Total);
  const auto n_fiber = number_operator(alg, NumberKind::Fiber);
  const auto id = ExteriorOperator::identity(alg);
  for (const auto& [t, T] : std::vector<std::pair<Rational, Rational>>{
           {Rational(1), Rational(1)},
           {Rational(2), Rational(3)},
           {Rational(1, 2), Rational(5)},
           {Rational(3, 4), Rational(2, 7)}}) {
    const auto inv = hodge_star_scaled_inverse(shape, t, T);
    c.require(inv * hodge_star_scaled(shape, t, T) == id, "star inverse");
    const auto lhs_t = inv * hodge_star_scaled_dt(shape, t, T);
    const auto rhs_t = (n_total.scaled(Rational(2)) - id.scaled(Rational(3))).scaled(Rational(1) / t);
    c.require(lhs_t == rhs_t, "star^-1 d_t star = (2N - n - k)/t");
    const auto lhs_T = inv * hodge_star_scaled_dT(shape, t, T);
    const auto rhs_T = (n_fiber.scaled(Rational(2)) - id.scaled(Rational(2))).scaled(Rational(1) / T);
    c.require(lhs_T == rhs_T, "star^-1 d_T star = (2N_Y - k)/T");
  }
  return {2, "hodge-star-scaling", c.ok, c.ok ? "exact operator identities at four rational (t, T)" : c.detail.str(), 0};
}

CriterionResult criterion_circle_torsion(const RunConfig&) {
  Check c;
  for (double L : {1.0, 2.0, kTwoPi}) {
    const Spectrum spec = circle_hodge_spectrum({L}, 600);
    const ZetaResult closed = torsion_zeta_closed_form(spec);
    c.require(std::abs(closed.log_torsion + std::log(L)) <= 1e-6,
              "closed-form log T at L=" + format_g17(L));
    c.require(closed.diagnostics.at("euler_maclaurin_delta") <= 1e-8, "Euler-Maclaurin cross-check");
    const ThetaSeries theta = theta_series_from_spectrum(spec, TraceWeight::NBase);
    const ZetaResult heat = torsion_heat_split_auto(theta, theta.kernel_coef);
    c.require(std::abs(heat.log_torsion + std::log(L)) <= 1e-3,
              "heat-split log T at L=" + format_g17(L) + " got " + format_g17(heat.log_torsion));
    c.require(!heat.constant_term_violation, "no constant term");
  }
  return {3, "circle-torsion", c.ok, c.ok ? "log T(S^1_L) = -log L on both paths for L in {1, 2, 2pi}" : c.detail.str(), 0};
}

CriterionResult criterion_fiber_spectrum(const RunConfig&) {
  Check c;
  for (double tau : {0.5, 1.0, 2.0}) {
    FiberModel fm{2, tau, 12};
    const FiberOperator op = build_fiber_operator(fm, 12);
    const Eigen::MatrixXd sq = op.dirac * op.dirac;
    for (int q = 0; q <= 2; ++q) {
      std::vector<int> idx;
      for (int i = 0; i < op.dim; ++i)
        if (op.q_fiber[i] == q) idx.push_back(i);
      Eigen::MatrixXd blk(idx.size(), idx.size());
      for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) blk(i, j) = sq(idx[i], idx[j]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk, Eigen::EigenvaluesOnly);
      const auto oracle = fd_fiber_eigenvalues(tau, q, 1200, 8.0, 10);
      const int lines = std::min<int>(10, int(es.eigenvalues().size()));
      for (int i = 0; i < lines; ++i) {
        const double a = es.eigenvalues()(i), b = oracle[i];
        c.require(std::abs(a - b) <= 1e-3 * std::max(1.0, std::abs(b)),
                  "eigenvalue line q=" + std::to_string(q) + " i=" + std::to_string(i));
      }
      if (q == 0) {
        int kernel = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          if (std::abs(es.eigenvalues()(i)) < 1e-8) ++kernel;
        c.require(kernel == 1, "kernel dimension in degree 0");
      }
    }
    // ground state against e^{-tau |y|^2 / 2} in the grid norm (2-D outer product)
    const auto o = fd_oscillator_oracle(tau, 1200, 8.0, 1);
    Eigen::VectorXd v = o.eigenvectors.col(0).normalized();
    Eigen::VectorXd g(o.ygrid.size());
    for (int i = 0; i < g.size(); ++i) g(i) = std::exp(-tau * o.ygrid(i) * o.ygrid(i) / 2.0);
    g.normalize();
    if (v.dot(g) < 0) v = -v;
    Eigen::MatrixXd v2 = v * v.transpose(), g2 = g * g.transpose();
    c.require((v2 - g2).norm() <= 1e-3, "ground state grid norm at tau=" + format_g17(tau));
  }
  return {4, "fiber-witten-spectrum", c.ok, c.ok ? "Hermite path matches the FD oracle; kernel = span{e^{-tau|y|^2/2}}" : c.detail.str(), 0};
}

CriterionResult criterion_expansion_fit(const RunConfig& cfg) {
  Check c;
  LabGeometry geom = cfg.lab_geometry();
  geom.circle.L = kTwoPi;
  geom.fiber.tau = 1.0;
  geom.alpha = 0.0;
  const Spectrum base = circle_hodge_spectrum(geom.circle, geom.max_mode);
  const ThetaSeries theta_m = theta_series_from_spectrum(base, TraceWeight::NBase);
  const ThetaSeries theta_e = theta_series_product(base, fiber_witten_spectrum(geom.fiber, true),
                                                   1.0, 1.0, TraceWeight::N);
  const auto fit_of = [](const ThetaSeries& s) {
    return fit_small_time_expansion(sample_theta(s, 0.02, 0.5, 16), default_expansion_powers());
  };
  const ExpansionFit fm = fit_of(theta_m), fe = fit_of(theta_e);
  const double b_half = fm.coefficient(-0.5), a_half = fe.coefficient(-0.5);
  const double expected = -kTwoPi / (2.0 * std::sqrt(kPi));  // = -sqrt(pi)
  c.require(std::abs(fe.coefficient(0.0)) <= 1e-3 * std::abs(a_half), "no constant term on E");
  c.require(std::abs(fm.coefficient(0.0)) <= 1e-3 * std::abs(b_half), "no constant term on M");
  c.require(std::abs(a_half - b_half) <= 0.01 * std::abs(b_half), "a_{-1/2} = b_{-1/2}");
  c.require(std::abs(b_half - expected) <= 0.01 * std::abs(expected), "b_{-1/2} = -L/(2 sqrt(pi))");
  std::ostringstream d;
  d << "a=" << format_g17(a_half) << " b=" << format_g17(b_half) << " target=" << format_g17(expected);
  return {5, "small-time-expansion", c.ok, c.ok ? d.str() : c.detail.str(), 0};
}

CriterionResult criterion_main_theorem(const RunConfig& cfg) {
  Check c;
  const LabGeometry geom = cfg.lab_geometry();
  for (double L : {1.0, kTwoPi}) {
    std::vector<double> residuals;
    for (double tau : {0.5, 1.0, 2.0}) {
      const TorsionSummary s = compute_torsion_summary(L, tau, 0.0, geom);
      residuals.push_back(s.residual);
      c.require(std::abs(s.residual) <= 1e-3,
                "residual at L=" + format_g17(L) + " tau=" + format_g17(tau) + ": " +
                    format_g17(s.residual));
      c.require(std::abs(s.correction) <= 1e-6, "correction vanishes");
      c.require(s.flags_ok, "no theorem-violation flags");
    }
    const double spread = *std::max_element(residuals.begin(), residuals.end()) -
                          *std::min_element(residuals.begin(), residuals.end());
    c.require(spread <= 2e-3, "tau-independence of the residual");
  }
  return {6, "torsion-comparison", c.ok, c.ok ? "log T(E) - correction = log T(M) over (L, tau) grid" : c.detail.str(), 0};
}

CriterionResult criterion_gap(const RunConfig& cfg) {
  const auto rep = spectral_gap_sweep(cfg.grid, cfg.lab_geometry());
  return {7, "uniform-spectral-gap", rep.overall, rep.summary, 0};
}

CriterionResult criterion_large_time(const RunConfig& cfg) {
  LabGeometry geom = cfg.lab_geometry();
  geom.jobs = std::max(geom.jobs, 2);
  Check c;
  const int dim = 2 * geom.grid_N * build_fiber_operator(geom.fiber, geom.fiber_basis).dim;
  c.require(dim <= 4000, "assembly dimension <= 4000");
  const auto rep = large_time_limit_check(1.0, cfg.grid, geom);
  c.require(rep.overall, rep.summary);
  return {8, "large-time-adiabatic-limit", c.ok, rep.summary, 0};
}

CriterionResult criterion_contour(const RunConfig& cfg) {
  Check c;
  std::mt19937 rng(cfg.seed + 9);
  std::normal_distribution<double> nd(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd G(50, 50);
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) G(i, j) = nd(rng);
    Eigen::MatrixXd A = 0.5 * (G + G.transpose());
    const auto res = contour_heat_operator(A, 1.0, {1.0, 40.0, 256});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    Eigen::VectorXd decay = (-es.eigenvalues().array().square()).exp();
    Eigen::MatrixXd exact = es.eigenvectors() * decay.asDiagonal() * es.eigenvectors().transpose();
    const double err = (res.matrix - exact).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    c.require(err <= 1e-8, "contour vs eigendecomposition, trial " + std::to_string(trial));
  }
  return {9, "riesz-dunford-contour", c.ok, "worst deviation " + format_g17(worst), 0};
}

CriterionResult criterion_mckean_singer(const RunConfig& cfg) {
  Check c;
  const LabGeometry geom0 = cfg.lab_geometry();
  for (double alpha : {0.0, kPi}) {
    LabGeometry geom = geom0;
    geom.alpha = alpha;
    // closed-form path
    Spectrum spec = alpha == 0.0
                        ? scaled_product_spectrum(circle_hodge_spectrum(geom.circle, 64),
                                                  fiber_witten_spectrum(geom.fiber, true), 1.0, 1.0)
                        : holonomy_twisted_spectrum(geom.circle, geom.fiber, alpha, 64);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double t : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      const double v = heat_supertrace(spec, t, TraceWeight::One, false).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    c.require(hi - lo <= 1e-8, "drift over t in [0.1, 10]");
    c.require(std::abs(hi) <= 1e-8 && std::abs(lo) <= 1e-8, "index equals chi(S^1) = 0");
    // discrete assembly path: kernel counts per degree
    const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(12, geom.circle.L));
    const FiberOperator fop = build_fiber_operator(geom.fiber, 4);
    ScalingParams sc;
    sc.holonomy_angle = alpha;
    const WittenAssembly asm_ = assemble_total_dirac(cx, fop, sc);
    const Spectrum dspec = assembly_spectrum(asm_);
    double lam_max = 0.0;
    for (const auto& l : dspec.lines) lam_max = std::max(lam_max, l.lambda);
    const auto dims = dspec.kernel_dims(3, 1e-10 * std::max(1.0, lam_max));
    c.require(dims[0] == 1 && dims[1] == 1 && dims[2] == 0 && dims[3] == 0,
              "kernel counts (1,1,0,0) at alpha=" + format_g17(alpha));
    double dlo = std::numeric_limits<double>::infinity(), dhi = -dlo;
    for (double t : {0.1, 1.0, 10.0}) {
      const double v = heat_supertrace(dspec, t, TraceWeight::One, false).value;
      dlo = std::min(dlo, v);
      dhi = std::max(dhi, v);
    }
    c.require(dhi - dlo <= 1e-8 && std::abs(dhi) <= 1e-8, "discrete McKean-Singer");
  }
  return {10, "mckean-singer-index", c.ok, c.ok ? "index 0 with drift <= 1e-8; kernels (1,1,0,0) untwisted and twisted" : c.detail.str(), 0};
}

CriterionResult criterion_section5(const RunConfig& cfg) {
  Check c;
  for (double alpha : {0.0, kPi}) {
    LabGeometry geom = cfg.lab_geometry();
    geom.alpha = alpha;
    const auto rep = alpha_form_check(cfg.grid, geom);
    c.require(rep.overall, "alpha-form closedness at alpha=" + format_g17(alpha));
    const auto rect = rectangle_contour_check(2.0, 4.0, 0.1, geom);
    for (const auto& row : rect.rows)
      c.require(row.pass && row.observed <= 1e-3, "rectangle contour at alpha=" + format_g17(alpha));
  }
  return {11, "alpha-form-and-rectangle", c.ok, c.ok ? "closedness residual and rectangle sum within tolerance" : c.detail.str(), 0};
}

CriterionResult criterion_fiber_decay(const RunConfig& cfg) {
  Check c;
  for (double alpha : {0.0, kPi}) {
    LabGeometry geom = cfg.lab_geometry();
    geom.alpha = alpha;
    const auto rep = fiber_supertrace_decay_check(cfg.grid, geom);
    c.require(rep.overall, "fiber decay grid at alpha=" + format_g17(alpha));
    for (const auto& row : rep.rows)
      c.require(row.observed <= 1e-12 || row.observed <= row.budget,
                "grid value beyond floor at alpha=" + format_g17(alpha));
  }
  return {12, "fiber-supertrace-decay", c.ok, c.ok ? "grid values at exact zero; decay bound holds for every delta > 0" : c.detail.str(), 0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(const RunConfig& config, const std::string& only) {
  using Fn = CriterionResult (*)(const RunConfig&);
  const std::vector<Fn> criteria = {
      criterion_clifford,      criterion_star,        criterion_circle_torsion,
      criterion_fiber_spectrum, criterion_expansion_fit, criterion_main_theorem,
      criterion_gap,           criterion_large_time,  criterion_contour,
      criterion_mckean_singer, criterion_section5,    criterion_fiber_decay};
  std::vector<CriterionResult> results;
  for (const auto& fn : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn(config);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!only.empty() && r.name.find(only) == std::string::npos) continue;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace torsionlab
