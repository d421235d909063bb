#include "torsionlab/heat.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "torsionlab/special.hpp"

namespace torsionlab {

HeatCalculator::HeatCalculator(const Eigen::MatrixXd& S, double sym_tol) {
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
    throw std::invalid_argument("HeatCalculator: matrix is not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  if (es.info() != Eigen::Success) throw std::runtime_error("HeatCalculator: eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Eigen::MatrixXd HeatCalculator::heat(double t) const {
  if (t < 0.0) throw std::domain_error("heat: t must be nonnegative");
  Eigen::VectorXd e = (-t * evals_.array()).exp();
  return evecs_ * e.asDiagonal() * evecs_.transpose();
}

double HeatCalculator::min_abs_nonzero(double zero_eps) const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < evals_.size(); ++i) {
    const double a = std::abs(evals_(i));
    if (a > zero_eps) m = std::min(m, a);
  }
  return m;
}

Eigen::MatrixXd heat_operator(const Eigen::MatrixXd& S, double t) {
  return HeatCalculator(S).heat(t);
}

ContourResult contour_heat_operator(const Eigen::MatrixXd& D, double t, const ContourSpec& spec) {
  if (t <= 0.0) throw std::domain_error("contour_heat_operator: t must be positive");
  if (spec.b <= 0.0) throw std::domain_error("contour_heat_operator: offset b must be positive");
  if (spec.n_nodes < 64)
    throw std::invalid_argument("contour_heat_operator: at least 64 quadrature nodes required");
  const int n = int(D.rows());
  if (D.cols() != n) throw std::invalid_argument("contour_heat_operator: square matrix required");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("contour_heat_operator: matrix is not symmetric");

  using CMat = Eigen::MatrixXcd;
  const std::complex<double> I(0.0, 1.0);

  // counterclockwise two-line contour around the real axis:
  //   e^{-t D^2} = -(1/pi) Im int_{-X}^{X} e^{-t (x+ib)^2} (x + ib - D)^{-1} dx
  // The integrand lives on the scale min(1/sqrt(t), b); grade the panels so the
  // core region is resolved and the exponentially dead tails get the remainder.
  const double core = std::min(spec.x_max, spec.b + 9.0 / std::sqrt(t));
  auto panel_edges = [&](int panels) {
    std::vector<double> edges;
    const int core_panels = std::max(2, 3 * panels / 4);
    const int tail_panels = std::max(1, (panels - core_panels) / 2);
    for (int i = 0; i <= tail_panels; ++i)
      edges.push_back(-spec.x_max + (spec.x_max - core) * i / tail_panels);
    for (int i = 1; i <= core_panels; ++i) edges.push_back(-core + 2.0 * core * i / core_panels);
    for (int i = 1; i <= tail_panels; ++i)
      edges.push_back(core + (spec.x_max - core) * i / tail_panels);
    return edges;
  };
  auto sweep = [&](int nodes, double* max_res) {
    CMat acc = CMat::Zero(n, n);
    const GaussRule& g = gauss_legendre(16);
    const auto edges = panel_edges(std::max(4, nodes / 16));
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
      const double h = edges[p + 1] - edges[p];
      const double mid = 0.5 * (edges[p] + edges[p + 1]);
      for (size_t i = 0; i < g.x.size(); ++i) {
        const double x = mid + 0.5 * h * g.x[i];
        const std::complex<double> lam(x, spec.b);
        CMat A = -CMat(D.cast<std::complex<double>>());
        A.diagonal().array() += lam;
        Eigen::PartialPivLU<CMat> lu(A);
        CMat R = lu.solve(CMat::Identity(n, n));
        if (max_res) {
          const double rn = R.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm bound
          *max_res = std::max(*max_res, rn);
        }
        acc += (0.5 * h * g.w[i]) * std::exp(-t * lam * lam) * R;
      }
    }
    return Eigen::MatrixXd((-1.0 / 3.141592653589793) * acc.imag());
  };

  ContourResult out;
  Eigen::MatrixXd fine = sweep(spec.n_nodes, &out.max_resolvent_norm);
  Eigen::MatrixXd coarse = sweep(spec.n_nodes / 2, nullptr);
  out.matrix = fine;
  out.quadrature_error = (fine - coarse).cwiseAbs().maxCoeff();
  // |e^{-t lambda^2}| = e^{-t(x^2 - b^2)} on the lines; tail of the truncated x-range
  out.truncation_error = std::exp(t * spec.b * spec.b) *
                         std::erfc(std::sqrt(t) * spec.x_max) /
                         (spec.b * std::sqrt(3.141592653589793 * t)) *
                         std::sqrt(3.141592653589793);
  // self-adjointness forces ||(lambda - D)^{-1}|| <= 1/b in 2-norm; the inf-norm
  // estimate gets a dimension factor of slack before we call it a blow-up
  if (out.max_resolvent_norm > std::sqrt(double(n)) * 1.01 / spec.b)
    throw std::runtime_error("contour_heat_operator: resolvent blow-up on the contour");
  return out;
}

}  // namespace torsionlab
