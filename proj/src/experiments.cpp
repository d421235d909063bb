#include "torsionlab/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "torsionlab/assembly.hpp"
#include "torsionlab/detline.hpp"
#include "torsionlab/heat.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/special.hpp"
#include "torsionlab/trace_series.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab {

void SweepGrid::validate() const {
  auto positive = [](const std::vector<double>& v) {
    for (double x : v)
      if (!(x > 0.0)) return false;
    return true;
  };
  if (!positive(epsilons) || !positive(times) || !positive(taus) || !positive(Ts) || !positive(sigmas))
    throw std::invalid_argument("SweepGrid: all entries must be positive");
  for (size_t i = 1; i < epsilons.size(); ++i)
    if (epsilons[i] >= epsilons[i - 1])
      throw std::invalid_argument("SweepGrid: epsilons must be strictly decreasing");
}

void ExperimentReport::add(ReportRow row) {
  overall = overall && row.pass;
  rows.push_back(std::move(row));
}

void ExperimentReport::finish(const std::string& text) { summary = text; }

void ExperimentReport::write_csv(std::ostream& os) const {
  // fixed column order: the union of parameter names in first-seen order
  std::vector<std::string> names;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.params)
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
  os << "theorem";
  for (const auto& n : names) os << ',' << n;
  os << ",observed,predicted,budget,verdict,note\n";
  for (const auto& r : rows) {
    os << theorem;
    for (const auto& n : names) {
      os << ',';
      for (const auto& [k, v] : r.params)
        if (k == n) {
          os << format_g17(v);
          break;
        }
    }
    os << ',' << format_g17(r.observed) << ',' << format_g17(r.predicted) << ','
       << format_g17(r.budget) << ',' << (r.pass ? "pass" : "fail") << ',' << r.note << '\n';
  }
}

std::string ExperimentReport::summary_json() const {
  nlohmann::json j;
  j["theorem"] = theorem;
  j["overall"] = overall ? "pass" : "fail";
  j["acceptance"] = acceptance;
  j["rows"] = rows.size();
  j["summary"] = summary;
  for (const auto& [k, v] : slopes) j["slopes"][k] = v;
  return j.dump(2);
}

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  SlopeFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  fit.points = n;
  if (n >= 3) {
    const double den = n * sxx - sx * sx;
    if (std::abs(den) > 1e-14) {
      fit.slope = (n * sxy - sx * sy) / den;
      fit.valid = true;
    }
  }
  return fit;
}

namespace {

constexpr double kPi = 3.141592653589793;

void parallel_for_indices(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : workers) th.join();
}

Spectrum base_spectrum(const LabGeometry& g) { return circle_hodge_spectrum(g.circle, g.max_mode); }

Spectrum fiber_spectrum_staggered(const LabGeometry& g) { return fiber_witten_spectrum(g.fiber, true); }

// Brute spectrum with truncations chosen from the smallest evaluation time, so
// line counts stay moderate while every omitted line is below e^{-42}.
Spectrum total_spectrum(const LabGeometry& g, double c_base, double c_fiber, double t_min = 1.0) {
  LabGeometry eff = g;
  const double need = 42.0;
  const int m_eff =
      2 + int(std::ceil(g.circle.L / (2.0 * kPi) * std::sqrt(need / (t_min * c_base))));
  eff.max_mode = std::min(g.max_mode, std::max(8, m_eff));
  const int s_eff = 2 + int(std::ceil(need / (t_min * c_fiber * 2.0 * g.fiber.tau)));
  eff.fiber.cutoff = std::min(g.fiber.cutoff, std::max(6, s_eff));
  if (g.alpha == 0.0)
    return scaled_product_spectrum(circle_hodge_spectrum(eff.circle, eff.max_mode),
                                   fiber_witten_spectrum(eff.fiber, true), c_base, c_fiber);
  return holonomy_twisted_spectrum(eff.circle, eff.fiber, g.alpha, eff.max_mode, c_base, c_fiber);
}

// Weighted trace series of the total geometry. Factorization reduces both the
// untwisted product and the rotation twist (twisted sectors pair exactly); the
// reduction is verified against brute-force line sums at probe times.
ThetaSeries total_theta(const LabGeometry& g, double c_base, double c_fiber, TraceWeight weight) {
  ThetaSeries reduced =
      theta_series_product(base_spectrum(g), fiber_spectrum_staggered(g), c_base, c_fiber, weight);
  const double t_ref = 1.0 / std::max(c_base, c_fiber);
  const Spectrum brute = total_spectrum(g, c_base, c_fiber, t_ref);
  for (double t : {t_ref, 2.0 * t_ref}) {
    const double a = reduced.eval(t, true).value;
    const double b = heat_supertrace(brute, t, weight, false).value;
    if (std::abs(a - b) > 1e-7 * (1.0 + std::abs(a)))
      throw std::logic_error("total_theta: factorized series disagrees with line sums");
  }
  return reduced;
}

double spectral_norm(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double sym_operator_norm(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

ExperimentReport spectral_gap_sweep(const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "thm-4.1-uniform-gap";
  std::vector<double> gaps;
  bool inconclusive = false;
  for (double eps : grid.epsilons) {
    const Spectrum spec = total_spectrum(geom, eps * eps, 1.0, 1.0);
    double lam_min = std::numeric_limits<double>::infinity();
    double lam_max = 0.0;
    for (const auto& l : spec.lines) {
      lam_max = std::max(lam_max, l.lambda);
      if (l.lambda > 1e-12) lam_min = std::min(lam_min, l.lambda);
    }
    if (lam_min < 1e3 * 1e-16 * lam_max) inconclusive = true;
    gaps.push_back(std::sqrt(lam_min) / eps);
  }
  // uniform floor referenced to the smallest-epsilon gap
  const double floor_pred = 0.9 * gaps.back();
  const double mu1 = std::pow(2.0 * kPi / geom.circle.L, 2.0);
  const double closed_floor = std::sqrt(std::min(mu1, 2.0 * geom.fiber.tau)) * (1.0 - 1e-3);
  for (size_t i = 0; i < gaps.size(); ++i) {
    ReportRow row;
    row.params = {{"epsilon", grid.epsilons[i]}, {"tau", geom.fiber.tau}, {"alpha", geom.alpha}};
    row.observed = gaps[i];
    row.predicted = floor_pred;
    row.budget = 0.0;
    row.pass = !inconclusive && gaps[i] >= floor_pred && gaps[i] >= closed_floor;
    row.note = inconclusive ? "inconclusive: kernel/near-kernel ambiguity" : "";
    rep.add(row);
  }
  const auto fit = loglog_slope(grid.epsilons, gaps, 0.0);
  rep.slopes["gap_loglog_slope"] = fit.valid ? fit.slope : 0.0;
  if (fit.valid && fit.slope < -0.05) rep.overall = false;
  std::ostringstream os;
  os << "min nonzero |eig((1/eps) D)| stays above " << format_g17(floor_pred)
     << "; log-log slope " << format_g17(rep.slopes["gap_loglog_slope"]);
  rep.finish(os.str());
  return rep;
}

ExperimentReport large_time_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "thm-6.x-large-time-limit";
  const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(geom.grid_N, geom.circle.L));
  const FiberOperator fop = build_fiber_operator(geom.fiber, geom.fiber_basis);
  const Eigen::MatrixXd base_sym = symmetrize_with_mass(cx.dirac, cx.mass);

  struct PointResult {
    double heat_diff = 0, bound = 0, core_bound = 0, a2_norm = 0, pblock_err = 0, reassembly = 0;
  };
  std::vector<PointResult> results(grid.epsilons.size());

  parallel_for_indices(int(grid.epsilons.size()), geom.jobs, [&](int i) {
    const double eps = grid.epsilons[i];
    ScalingParams sc;
    sc.epsilon = eps;
    sc.holonomy_angle = geom.alpha;
    const WittenAssembly asm_ = assemble_total_dirac(cx, fop, sc);
    const KernelProjection proj = kernel_projection(asm_);
    const BlockDecomposition blocks = block_decompose(asm_, proj);

    const Eigen::MatrixXd S = asm_.sym_dirac();
    HeatCalculator hc(S);
    Eigen::VectorXd decay = (-(t / (eps * eps)) * hc.eigenvalues().array().square()).exp();
    Eigen::MatrixXd E = hc.eigenvectors() * decay.asDiagonal() * hc.eigenvectors().transpose();

    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(asm_.dim, asm_.dim);
    const Eigen::MatrixXd limit_block = heat_operator(blocks.A3 * blocks.A3, t);
    for (size_t a = 0; a < proj.p_index.size(); ++a)
      for (size_t b = 0; b < proj.p_index.size(); ++b)
        target(proj.p_index[a], proj.p_index[b]) = limit_block(a, b);

    PointResult pr;
    pr.heat_diff = sym_operator_norm(E - target);
    pr.a2_norm = spectral_norm(blocks.A2);
    pr.reassembly = blocks.reassembly_error;
    pr.pblock_err = (limit_block - heat_operator(base_sym * base_sym, t)).cwiseAbs().maxCoeff();

    // Remark-rate bound: integrate |e^{-t lambda^2}| against the exact
    // resolvent-block norms on the two-line contour. The |lambda| <= lambda0/(2 eps)
    // core carries the O(eps) block bounds; outside, self-adjointness caps the
    // resolvent at 1/b and e^{-t lambda^2} kills the contribution as eps -> 0.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA1(blocks.A1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA3(blocks.A3, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev1 = esA1.eigenvalues();
    const Eigen::VectorXd ev3 = esA3.eigenvalues();
    double lam1_d0 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ev3.size(); ++j)
      if (std::abs(ev3(j)) > 1e-8) lam1_d0 = std::min(lam1_d0, std::abs(ev3(j)));
    const double b_off = 0.05 * std::min(1.0, lam1_d0);
    const double a2 = pr.a2_norm;
    const double lam_cut = 0.5 * ev1.cwiseAbs().minCoeff();  // lambda0 / (2 eps)
    const double x_core = std::sqrt(std::max(lam_cut * lam_cut - b_off * b_off, 1e-12));
    const double X = std::sqrt(38.0 / t);
    auto bound_at = [&](double x) {
      const std::complex<double> lam(x, b_off);
      double d1 = 0.0, d3 = 0.0;
      for (int j = 0; j < ev1.size(); ++j) d1 = std::max(d1, 1.0 / std::abs(lam - ev1(j)));
      for (int j = 0; j < ev3.size(); ++j) d3 = std::max(d3, 1.0 / std::abs(lam - ev3(j)));
      const double beta = std::min(0.5, d1 * d3 * a2 * a2);
      const double amp = std::exp(-t * (x * x - b_off * b_off));
      return amp * (d1 + 2.0 * d1 * a2 * d3 / (1.0 - beta) + d1 * d3 * d3 * a2 * a2 / (1.0 - beta));
    };
    const double xc = std::min(x_core, X);
    const auto [core, core_err] = integrate_gauss(bound_at, -xc, xc, 24, 16);
    pr.core_bound = (core + core_err) / kPi;  // both lines, 1/(2 pi) each
    // outer part: resolvent capped by 1/b, Gaussian tail in closed form
    const double outer_tail =
        std::sqrt(kPi / t) * std::erfc(std::sqrt(t) * xc) * std::exp(t * b_off * b_off);
    pr.bound = pr.core_bound + outer_tail / (kPi * b_off);
    results[i] = pr;
  });

  std::vector<double> core_bounds, diffs;
  for (size_t i = 0; i < grid.epsilons.size(); ++i) {
    const auto& pr = results[i];
    core_bounds.push_back(pr.core_bound);
    diffs.push_back(pr.heat_diff);
    ReportRow row;
    row.params = {{"epsilon", grid.epsilons[i]}, {"t", t}};
    row.observed = pr.heat_diff;
    row.predicted = pr.bound;
    row.budget = 1e-12;
    row.pass = pr.heat_diff <= pr.bound + 1e-10 && pr.a2_norm < 1e-8 && pr.pblock_err < 1e-3 &&
               pr.reassembly < 1e-9;
    std::ostringstream note;
    note << "a2=" << format_g17(pr.a2_norm) << " pblock=" << format_g17(pr.pblock_err);
    if (pr.heat_diff < 1e-14) note << " (difference at round-off: exact product factorization)";
    row.note = note.str();
    rep.add(row);
  }
  const auto fit = loglog_slope(grid.epsilons, core_bounds, 0.0);
  rep.slopes["resolvent_bound_slope"] = fit.valid ? fit.slope : 0.0;
  const bool slope_ok = fit.valid && fit.slope >= 0.8 && fit.slope <= 1.2;
  const bool vanishing = diffs.back() <= std::max(1e-8, results.back().bound);
  if (!slope_ok || !vanishing) rep.overall = false;
  std::ostringstream os;
  os << "heat-operator difference tends to 0 (final " << format_g17(diffs.back())
     << "); O(eps) certified on the resolvent-block bound, slope "
     << format_g17(rep.slopes["resolvent_bound_slope"]);
  rep.finish(os.str());
  return rep;
}

ExperimentReport supertrace_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "thm-4.2-supertrace-limits";
  const ThetaSeries base_nm = theta_series_from_spectrum(base_spectrum(geom), TraceWeight::NBase);
  const double predicted = base_nm.eval(t, true).value;

  std::vector<double> ny_values;
  for (double eps : grid.epsilons) {
    const double s = t / (eps * eps);
    const Spectrum spec = total_spectrum(geom, eps * eps, 1.0, s);
    const auto item1 = heat_supertrace(spec, s, TraceWeight::N, false);
    const auto item2 = heat_supertrace(spec, s, TraceWeight::NFiber, false);
    const auto item3 = heat_supertrace(spec, s, TraceWeight::One, false);
    ny_values.push_back(std::abs(item2.value));

    ReportRow r1;
    r1.params = {{"epsilon", eps}, {"t", t}, {"item", 1}};
    r1.observed = item1.value;
    r1.predicted = predicted;
    r1.budget = item1.bound + 1e-10;
    r1.pass = std::abs(item1.value - predicted) <= std::max(1e-10, r1.budget);
    r1.note = "exact by structure (product factorization)";
    rep.add(r1);

    ReportRow r2;
    r2.params = {{"epsilon", eps}, {"t", t}, {"item", 2}};
    r2.observed = item2.value;
    r2.predicted = 0.0;
    r2.budget = item2.bound + 1e-10;
    r2.pass = std::abs(item2.value) <= std::max(1e-10, r2.budget);
    r2.note = "N_Y supertrace vanishes exactly in this family";
    rep.add(r2);

    ReportRow r3;
    r3.params = {{"epsilon", eps}, {"t", t}, {"item", 3}};
    r3.observed = item3.value;
    r3.predicted = 0.0;
    r3.budget = item3.bound + 1e-8;
    r3.pass = std::abs(item3.value) <= std::max(1e-8, r3.budget);
    rep.add(r3);
  }
  const auto fit = loglog_slope(grid.epsilons, ny_values, 1e-12);
  if (fit.valid) {
    rep.slopes["ny_decay_slope"] = fit.slope;
    if (fit.slope < 1.0) rep.overall = false;
    rep.finish("N_Y decay slope fitted");
  } else {
    rep.slopes["ny_points_above_floor"] = fit.points;
    rep.finish("N_Y values at round-off zero; the C eps bound holds trivially");
  }
  return rep;
}

ExperimentReport alpha_form_check(const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "prop-5.x-alpha-closed";
  const auto& ts = grid.times;
  const auto& Tset = grid.Ts;
  if (ts.size() < 3 || Tset.size() < 3)
    throw std::invalid_argument("alpha_form_check: grid too coarse for stable differences");

  // a(t,T) = (2/t) tr_s(N e^{-D~^2_{t,T}}), b(t,T) = (2/T) tr_s(N_Y e^{-D~^2_{t,T}});
  // evaluated through the verified factorized series (T-dependence cancels, and
  // b vanishes, exactly in this family)
  const double t_floor = 0.25 * ts.front() * ts.front();
  std::map<double, ThetaSeries> a_series;  // keyed by T
  auto a_comp = [&](double t, double T) {
    auto it = a_series.find(T);
    if (it == a_series.end())
      it = a_series.emplace(T, theta_series_product(base_spectrum(geom), fiber_spectrum_staggered(geom),
                                                    1.0, T * T, TraceWeight::N))
               .first;
    return 2.0 / t * it->second.eval(t * t, true).value;
  };
  auto b_comp = [&](double t, double T) {
    const ThetaSeries s = theta_series_product(base_spectrum(geom), fiber_spectrum_staggered(geom),
                                               1.0, T * T, TraceWeight::NFiber);
    return 2.0 / T * s.eval(t * t, true).value;
  };

  const double tol = geom.alpha == 0.0 ? 1e-12 : 1e-4;
  for (size_t i = 1; i + 1 < ts.size(); ++i)
    for (size_t j = 1; j + 1 < Tset.size(); ++j) {
      const double t = ts[i], T = Tset[j];
      const double hT = 0.05 * T, ht = 0.05 * t;
      // central differences at two step sizes, Richardson-extrapolated
      auto dT_a = [&](double h) { return (a_comp(t, T + h) - a_comp(t, T - h)) / (2.0 * h); };
      auto dt_b = [&](double h) { return (b_comp(t + h, T) - b_comp(t - h, T)) / (2.0 * h); };
      const double dTa = (4.0 * dT_a(hT / 2) - dT_a(hT)) / 3.0;
      const double dtb = (4.0 * dt_b(ht / 2) - dt_b(ht)) / 3.0;
      ReportRow row;
      row.params = {{"t", t}, {"T", T}};
      row.observed = std::abs(dTa - dtb);
      row.predicted = 0.0;
      row.budget = tol;
      row.pass = row.observed <= tol;
      row.note = "closedness residual";
      rep.add(row);
    }

  // generic-path agreement: brute line sums against the factorized values
  for (double T : {Tset.front(), Tset.back()}) {
    const double t_probe = std::max(1.0, ts.back());
    const Spectrum spec = total_spectrum(geom, 1.0, T * T, t_probe * t_probe);
    const double brute = 2.0 / t_probe *
                         heat_supertrace(spec, t_probe * t_probe, TraceWeight::N, false).value;
    const double fact = a_comp(t_probe, T);
    ReportRow row;
    row.params = {{"t", t_probe}, {"T", T}};
    row.observed = std::abs(brute - fact);
    row.predicted = 0.0;
    row.budget = 1e-9;
    row.pass = row.observed <= 1e-9;
    row.note = "brute line sums vs factorized series";
    rep.add(row);
  }

  // conformal identity: spectra of g~_{t,T} match t^2-scaled spectra of g~_T
  for (double t : {0.5, 1.5})
    for (double T : {2.0, 4.0}) {
      const Spectrum left = total_spectrum(geom, t * t, t * t * T * T, 1.0);
      const Spectrum right = total_spectrum(geom, 1.0, T * T, t * t);
      const double lhs = heat_supertrace(left, 1.0, TraceWeight::N, false).value;
      const double rhs = heat_supertrace(right, t * t, TraceWeight::N, false).value;
      ReportRow row;
      row.params = {{"t", t}, {"T", T}};
      row.observed = std::abs(lhs - rhs);
      row.predicted = 0.0;
      row.budget = 1e-9;
      row.pass = row.observed <= 1e-9;
      row.note = "conformal identity sigma^N D sigma^{-N} = sigma D";
      rep.add(row);
    }
  (void)t_floor;
  rep.finish("alpha-form closedness and the conformal reduction hold on the grid");
  return rep;
}

ExperimentReport rectangle_contour_check(double A, double T0, double sigma, const LabGeometry& geom) {
  ExperimentReport rep;
  rep.theorem = "sect-5-rectangle-contour";
  if (!(A > 0 && T0 >= 1.0 && sigma > 0 && sigma < A))
    throw std::invalid_argument("rectangle_contour_check: need 0 < sigma < A and T0 >= 1");

  const Spectrum base = circle_hodge_spectrum(geom.circle, geom.max_mode);
  const Spectrum fib = fiber_witten_spectrum(geom.fiber, true);
  auto a_series_at = [&](double T) {
    return theta_series_product(base, fib, 1.0, T * T, TraceWeight::N);
  };
  auto b_series_at = [&](double T) {
    return theta_series_product(base, fib, 1.0, T * T, TraceWeight::NFiber);
  };

  const ThetaSeries aT0 = a_series_at(T0), a1 = a_series_at(1.0);
  auto a_integrand = [&](const ThetaSeries& s) {
    return [&s](double t) { return 2.0 / t * s.eval(t * t, true).value; };
  };
  const auto [i1, e1] = integrate_gauss(a_integrand(aT0), sigma, A, 24, 16);
  const auto [i3n, e3] = integrate_gauss(a_integrand(a1), sigma, A, 24, 16);
  const double i3 = -i3n;
  double i2 = 0.0, i4 = 0.0, e2 = 0.0, e4 = 0.0;
  if (T0 > 1.0) {
    auto b_int = [&](double t) {
      return [&, t](double T) { return 2.0 / T * b_series_at(T).eval(t * t, true).value; };
    };
    const auto [v2, q2] = integrate_gauss(b_int(A), 1.0, T0, 12, 16);
    const auto [v4, q4] = integrate_gauss(b_int(sigma), 1.0, T0, 12, 16);
    i2 = -v2;
    i4 = v4;
    e2 = q2;
    e4 = q4;
  }
  const double total = i1 + i2 + i3 + i4;
  const double budget = e1 + e2 + e3 + e4 + 1e-9;

  ReportRow row;
  row.params = {{"A", A}, {"T0", T0}, {"sigma", sigma}};
  row.observed = std::abs(total);
  row.predicted = 0.0;
  row.budget = budget;
  row.pass = row.observed <= std::max(budget, 1e-3);
  {
    std::ostringstream note;
    note << "I1=" << format_g17(i1) << " I2=" << format_g17(i2) << " I3=" << format_g17(i3)
         << " I4=" << format_g17(i4);
    row.note = note.str();
  }
  rep.add(row);

  // divergence-matching helpers for the degenerate regimes
  if (A > 4.0 || sigma < 0.05) {
    const double chi2 = -1.0;  // chi_2(E) = chi_2(M) for the circle base
    const double b_half = -geom.circle.L / (2.0 * std::sqrt(kPi));
    double i1_reg = i1 - 2.0 * chi2 * std::log(A);
    double i3_reg = i3 + 2.0 * chi2 * std::log(A);
    if (sigma < 0.05) {
      i1_reg -= 2.0 * b_half / sigma;
      i3_reg += 2.0 * b_half / sigma;
    }
    ReportRow reg;
    reg.params = {{"A", A}, {"T0", T0}, {"sigma", sigma}};
    reg.observed = i1_reg + i3_reg + i2 + i4;
    reg.predicted = 0.0;
    reg.budget = budget;
    reg.pass = std::abs(reg.observed) <= std::max(budget, 1e-3);
    reg.note = "after divergence subtraction (the log A and 1/sigma terms cancel in the sum)";
    rep.add(reg);
  }

  if (T0 == 1.0) {
    ReportRow deg;
    deg.params = {{"A", A}, {"T0", T0}, {"sigma", sigma}};
    deg.observed = std::abs(i1 + i3);
    deg.predicted = 0.0;
    deg.budget = budget;
    deg.pass = i2 == 0.0 && i4 == 0.0 && deg.observed <= std::max(budget, 1e-3);
    deg.note = "degenerate rectangle: I2 = I4 = 0 and I1 = -I3";
    rep.add(deg);
  }
  rep.finish("rectangle contour integral of the alpha-form sums to zero");
  return rep;
}

ExperimentReport index_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "thm-1.1-index-limit";
  const ThetaSeries base_one = theta_series_from_spectrum(base_spectrum(geom), TraceWeight::One);
  const double rhs = base_one.eval(t, true).value;
  for (double eps : grid.epsilons) {
    const double s = t / (eps * eps);
    const Spectrum spec = total_spectrum(geom, eps * eps, 1.0, s);
    const auto lhs = heat_supertrace(spec, s, TraceWeight::One, false);
    ReportRow row;
    row.params = {{"epsilon", eps}, {"t", t}};
    row.observed = lhs.value;
    row.predicted = rhs;
    row.budget = lhs.bound + 1e-8;
    row.pass = std::abs(lhs.value - rhs) <= std::max(1e-8, row.budget) && std::abs(rhs) <= 1e-8;
    row.note = "both sides equal chi(S^1) = 0";
    rep.add(row);
  }
  // kernel counts per total degree
  const Spectrum spec = total_spectrum(geom, 1.0, 1.0, 1.0);
  const auto dims = spec.kernel_dims(3);
  const std::vector<std::int64_t> expect = {1, 1, 0, 0};
  for (int q = 0; q <= 3; ++q) {
    ReportRow row;
    row.params = {{"degree", double(q)}};
    row.observed = double(dims[q]);
    row.predicted = double(expect[q]);
    row.budget = 0.0;
    row.pass = dims[q] == expect[q];
    row.note = "b_p(E) = b_p(M)";
    rep.add(row);
  }
  rep.finish("index and kernel dimensions match the base circle");
  return rep;
}

TorsionSummary compute_torsion_summary(double L, double tau, double alpha, const LabGeometry& geom0) {
  LabGeometry geom = geom0;
  geom.circle.L = L;
  geom.fiber.tau = tau;
  geom.alpha = alpha;

  TorsionSummary out;
  const Spectrum base = base_spectrum(geom);
  const ZetaResult closed = torsion_zeta_closed_form(base);
  out.log_torsion_M_closed = closed.log_torsion;

  const ThetaSeries theta_m = theta_series_from_spectrum(base, TraceWeight::NBase);
  const ZetaResult heat_m = torsion_heat_split_auto(theta_m, theta_m.kernel_coef);
  out.log_torsion_M_heat = heat_m.log_torsion;

  const ThetaSeries theta_e = total_theta(geom, 1.0, 1.0, TraceWeight::N);
  const ZetaResult heat_e = torsion_heat_split_auto(theta_e, theta_e.kernel_coef);
  out.log_torsion_E_heat = heat_e.log_torsion;
  out.flags_ok = !heat_m.constant_term_violation && !heat_e.constant_term_violation;

  // determinant-line correction: Gram drift of the epsilon = 1 harmonics under
  // g~_T, stabilized over the T grid (the infinity-norm stand-in)
  const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(geom.grid_N, L));
  const FiberOperator fop = build_fiber_operator(geom.fiber, geom.fiber_basis);
  ScalingParams sc;
  sc.holonomy_angle = alpha;
  const WittenAssembly asm_ = assemble_total_dirac(cx, fop, sc);
  const Eigen::MatrixXd S = asm_.sym_dirac();
  const Eigen::MatrixXd S2 = S * S;

  std::vector<Eigen::MatrixXd> kernels(2);  // degrees 0, 1, original coordinates
  for (int deg = 0; deg <= 1; ++deg) {
    std::vector<int> idx;
    for (int i = 0; i < asm_.dim; ++i)
      if (asm_.degree[i] == deg) idx.push_back(i);
    Eigen::MatrixXd blk(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) blk(i, j) = S2(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (blk + blk.transpose()));
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<int> kcols;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (std::abs(es.eigenvalues()(i)) <= 1e-10 * scale) kcols.push_back(i);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(asm_.dim, kcols.size());
    for (size_t c = 0; c < kcols.size(); ++c) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(asm_.dim);
      for (size_t i = 0; i < idx.size(); ++i) v(idx[i]) = es.eigenvectors()(i, kcols[c]);
      // back to original coordinates: v_orig = M^{-1/2} v_sym
      K.col(c) = asm_.mass.cwiseSqrt().cwiseInverse().asDiagonal() * v;
    }
    kernels[deg] = K;
  }

  auto log_norm_at_T = [&](double T) {
    Eigen::VectorXd massT(asm_.dim);
    for (int i = 0; i < asm_.dim; ++i)
      massT(i) = asm_.mass(i) * std::pow(T, 2.0 * asm_.q_fiber[i] - 2.0);
    std::vector<Eigen::MatrixXd> grams;
    for (int deg = 0; deg <= 1; ++deg) grams.push_back(gram_matrix(kernels[deg], massT));
    return det_line_log_norm(grams, {1, 1});
  };
  const DetLineNorm at1 = log_norm_at_T(1.0);
  std::vector<double> drifts;
  for (double T : {2.0, 4.0, 8.0, 16.0}) drifts.push_back(log_norm_at_T(T).log_norm - at1.log_norm);
  out.correction = drifts.back();
  out.correction_drift = std::abs(drifts.back() - drifts[drifts.size() - 2]);
  out.flags_ok = out.flags_ok && !at1.cohomology_violation;

  out.residual = out.log_torsion_E_heat - out.correction - out.log_torsion_M_closed;
  out.budget = heat_m.error_budget + heat_e.error_budget + closed.error_budget + out.correction_drift;
  return out;
}

ExperimentReport main_theorem_check(double L, double tau, double alpha, const LabGeometry& geom) {
  ExperimentReport rep;
  rep.theorem = "thm-1.4-torsion-comparison";
  rep.acceptance = (alpha == 0.0);  // twisted comparisons are exploratory
  const TorsionSummary s = compute_torsion_summary(L, tau, alpha, geom);

  ReportRow row;
  row.params = {{"L", L}, {"tau", tau}, {"alpha", alpha}};
  row.observed = std::abs(s.residual);
  row.predicted = 0.0;
  row.budget = s.budget;
  row.pass = s.flags_ok && std::abs(s.residual) <= 1e-3 && std::abs(s.correction) <= 1e-6;
  {
    std::ostringstream note;
    note << "logT_E=" << format_g17(s.log_torsion_E_heat)
         << " logT_M=" << format_g17(s.log_torsion_M_closed)
         << " corr=" << format_g17(s.correction) << " heatM=" << format_g17(s.log_torsion_M_heat);
    row.note = note.str();
  }
  rep.add(row);
  rep.finish("log T(E) - correction - log T(M) residual within tolerance");
  return rep;
}

ExperimentReport fiber_supertrace_decay_check(const SweepGrid& grid, const LabGeometry& geom) {
  grid.validate();
  ExperimentReport rep;
  rep.theorem = "thm-4.9-4.11-fiber-decay";
  std::vector<double> tvals, values;
  for (double sigma : grid.sigmas)
    for (double T : grid.Ts) {
      const Spectrum spec = total_spectrum(geom, sigma * sigma, T * T, 1.0);
      const auto v = heat_supertrace(spec, 1.0, TraceWeight::NFiber, false);
      const double obs = std::abs(v.value) / T;
      ReportRow row;
      row.params = {{"sigma", sigma}, {"T", T}};
      row.observed = obs;
      row.predicted = 0.0;
      row.budget = v.bound / T + 1e-12;
      row.pass = obs <= std::max(1e-12, row.budget);
      rep.add(row);
      if (sigma == grid.sigmas.front() && T >= 1.0) {
        tvals.push_back(T);
        values.push_back(obs);
      }
    }
  const auto fit = loglog_slope(tvals, values, 1e-13);
  if (fit.valid) {
    rep.slopes["T_decay_exponent"] = -fit.slope;
    if (-fit.slope < 1.0) rep.overall = false;
    rep.finish("fitted T-decay exponent recorded");
  } else {
    rep.slopes["values_above_floor"] = fit.points;
    rep.finish("grid values at round-off zero; the C/T^{1+delta} bound holds for every delta > 0");
  }
  return rep;
}

}  // namespace torsionlab
