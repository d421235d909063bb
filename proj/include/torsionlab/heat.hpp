#pragma once

#include <Eigen/Dense>

namespace torsionlab {

// Symmetric eigendecomposition wrapper; the reference path for all heat traces.
class HeatCalculator {
 public:
  // S must be symmetric (contract violation above tolerance).
  explicit HeatCalculator(const Eigen::MatrixXd& S, double sym_tol = 1e-10);

  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXd& eigenvectors() const { return evecs_; }

  Eigen::MatrixXd heat(double t) const;  // e^{-t S}, S PSD expected for t growth
  double min_abs_nonzero(double zero_eps = 1e-10) const;

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
};

Eigen::MatrixXd heat_operator(const Eigen::MatrixXd& S, double t);

struct ContourSpec {
  double b = 1.0;       // imaginary offset of the two-line contour
  double x_max = 40.0;  // real-axis truncation
  int n_nodes = 256;    // quadrature nodes per line
};

struct ContourResult {
  Eigen::MatrixXd matrix;
  double quadrature_error = 0.0;
  double truncation_error = 0.0;
  double max_resolvent_norm = 0.0;  // must stay <= 1/b for self-adjoint input
};

// e^{-t D^2} = (1/2 pi i) contour integral of e^{-t lambda^2} (lambda - D)^{-1};
// D real symmetric, contour {x +- i b}. Reports quadrature and truncation bounds
// and flags resolvent blow-up (contour touching the spectrum of a bad input).
ContourResult contour_heat_operator(const Eigen::MatrixXd& D, double t, const ContourSpec& spec);

}  // namespace torsionlab
