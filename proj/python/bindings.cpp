#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torsionlab/assembly.hpp"
#include "torsionlab/clifford.hpp"
#include "torsionlab/experiments.hpp"
#include "torsionlab/heat.hpp"
#include "torsionlab/model_spectra.hpp"
#include "torsionlab/trace_series.hpp"
#include "torsionlab/zeta.hpp"

namespace py = pybind11;
using namespace torsionlab;

namespace {

py::list spectrum_lines(const Spectrum& s) {
  py::list out;
  for (const auto& l : s.lines)
    out.append(py::make_tuple(l.degree, l.q_base, l.q_fiber, l.lambda, l.mult));
  return out;
}

py::dict zeta_dict(const ZetaResult& z) {
  py::dict d;
  d["zeta_at_zero"] = z.zeta_at_zero;
  d["zeta_prime_at_zero"] = z.zeta_prime_at_zero;
  d["log_torsion"] = z.log_torsion;
  d["method"] = z.method;
  d["error_budget"] = z.error_budget;
  d["constant_term_violation"] = z.constant_term_violation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_torsionlab, m) {
  m.doc() = "analytic torsion and adiabatic-limit workbench (C++ core)";

  m.def(
      "clifford_anticommutator_is_exact",
      [](int n, int k) {
        Algebra alg({n, k});
        const auto id = ExteriorOperator::identity(alg);
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j) {
            const auto ci = clifford_left(alg, GeneratorKind::Base, i);
            const auto cj = clifford_left(alg, GeneratorKind::Base, j);
            const auto want = id.scaled(Rational(i == j ? -2 : 0));
            if (!(ci * cj + cj * ci == want)) return false;
          }
        return true;
      },
      py::arg("n"), py::arg("k"), "exact {c(e^i), c(e^j)} = -2 delta_ij check");

  m.def(
      "clifford_matrix",
      [](int n, int k, const std::string& kind, int index) {
        Algebra alg({n, k});
        const GeneratorKind g = index <= n ? GeneratorKind::Base : GeneratorKind::Fiber;
        const int idx = index <= n ? index : index - n;
        const auto op = kind == "left" ? clifford_left(alg, g, idx) : clifford_right(alg, g, idx);
        return op.to_dense();
      },
      py::arg("n"), py::arg("k"), py::arg("kind"), py::arg("index"),
      "dense matrix of c / hat-c on the exterior algebra (index runs over e then f)");

  m.def(
      "top_supertrace_constant",
      [](int n, int k) { return top_supertrace_constant({n, k}); }, py::arg("n"), py::arg("k"));

  m.def(
      "circle_spectrum",
      [](double L, int max_mode) { return spectrum_lines(circle_hodge_spectrum({L}, max_mode)); },
      py::arg("L"), py::arg("max_mode") = 64,
      "(degree, q_base, q_fiber, eigenvalue, mult) lines of the circle Hodge Laplacian");

  m.def(
      "fiber_spectrum",
      [](double tau, int cutoff) {
        return spectrum_lines(fiber_witten_spectrum({2, tau, cutoff}));
      },
      py::arg("tau") = 1.0, py::arg("cutoff") = 12,
      "Witten oscillator lines 2 tau (|n| + q) on the R^2 fiber");

  m.def(
      "twisted_spectrum",
      [](double L, double tau, double alpha, int cutoff, int max_mode) {
        return spectrum_lines(holonomy_twisted_spectrum({L}, {2, tau, cutoff}, alpha, max_mode));
      },
      py::arg("L"), py::arg("tau"), py::arg("alpha"), py::arg("cutoff") = 10,
      py::arg("max_mode") = 16, "rotation-twisted Witten spectrum over the circle");

  m.def(
      "heat_supertrace",
      [](double L, double tau, double t, const std::string& weight, double eps) {
        const Spectrum s = scaled_product_spectrum(circle_hodge_spectrum({L}, 128),
                                                   fiber_witten_spectrum({2, tau, 40}, true),
                                                   eps * eps, 1.0);
        const TraceWeight w = weight == "one"  ? TraceWeight::One
                              : weight == "N"  ? TraceWeight::N
                              : weight == "NM" ? TraceWeight::NBase
                                               : TraceWeight::NFiber;
        const auto v = heat_supertrace(s, t, w, false);
        return py::make_tuple(v.value, v.bound);
      },
      py::arg("L"), py::arg("tau"), py::arg("t"), py::arg("weight") = "N", py::arg("eps") = 1.0,
      "(value, truncation bound) of the product-geometry heat supertrace");

  m.def(
      "circle_torsion_closed_form",
      [](double L) { return zeta_dict(torsion_zeta_closed_form(circle_hodge_spectrum({L}, 400))); },
      py::arg("L"));

  m.def(
      "circle_torsion_heat_split",
      [](double L) {
        const ThetaSeries theta =
            theta_series_from_spectrum(circle_hodge_spectrum({L}, 2000), TraceWeight::NBase);
        return zeta_dict(torsion_heat_split_auto(theta, theta.kernel_coef));
      },
      py::arg("L"));

  m.def(
      "torsion_comparison",
      [](double L, double tau, double alpha) {
        LabGeometry geom;
        const TorsionSummary s = compute_torsion_summary(L, tau, alpha, geom);
        py::dict d;
        d["log_torsion_E"] = s.log_torsion_E_heat;
        d["log_torsion_M"] = s.log_torsion_M_closed;
        d["correction"] = s.correction;
        d["residual"] = s.residual;
        d["budget"] = s.budget;
        return d;
      },
      py::arg("L") = 6.283185307179586, py::arg("tau") = 1.0, py::arg("alpha") = 0.0,
      "log T(E) - correction - log T(M) summary for the product geometry");

  m.def(
      "contour_heat",
      [](const Eigen::MatrixXd& D, double t, double b, double x_max, int nodes) {
        return contour_heat_operator(D, t, {b, x_max, nodes}).matrix;
      },
      py::arg("D"), py::arg("t") = 1.0, py::arg("b") = 1.0, py::arg("x_max") = 40.0,
      py::arg("nodes") = 256, "e^{-t D^2} through the Riesz-Dunford contour integral");

  m.def(
      "heat_matrix", [](const Eigen::MatrixXd& S, double t) { return heat_operator(S, t); },
      py::arg("S"), py::arg("t"), "e^{-t S} by symmetric eigendecomposition");

  m.def(
      "fit_leading_coefficient",
      [](double L) {
        const ThetaSeries theta =
            theta_series_from_spectrum(circle_hodge_spectrum({L}, 2000), TraceWeight::NBase);
        const auto [lo, hi] = scaled_fit_window(theta.min_positive_lambda());
        const auto fit =
            fit_small_time_expansion(sample_theta(theta, lo, hi, 16), default_expansion_powers());
        py::dict d;
        d["a_minus_half"] = fit.coefficient(-0.5);
        d["constant"] = fit.coefficient(0.0);
        d["residual_max"] = fit.residual_max;
        return d;
      },
      py::arg("L"), "fitted small-time coefficients of tr_s(N_M e^{-t D_M^2})");
}
