#pragma once

#include <Eigen/Dense>
#include <vector>

#include "torsionlab/model_spectra.hpp"

namespace torsionlab {

// Hermite-Galerkin assembly of the deformed fiber complex on R^2. Scalar levels
// are truncated per degree as (cutoff, cutoff-1, cutoff-2) so the retained spaces
// form an exact subcomplex: the assembled square reproduces the analytic lines
// exactly, with no truncation error inside the retained set.
struct FiberOperator {
  double tau = 1.0;
  int cutoff = 4;
  int n0 = 0, n1 = 0, n2 = 0;  // scalar dimensions per degree (n1 per 1-form component)
  int dim = 0;                 // n0 + 2 n1 + n2
  Eigen::MatrixXd d0;          // 0-forms -> 1-forms, (2 n1) x n0
  Eigen::MatrixXd d1;          // 1-forms -> 2-forms, n2 x (2 n1)
  Eigen::MatrixXd dirac;       // d + d^T on the full fiber space
  std::vector<int> q_fiber;    // degree label per dof
  std::vector<int> level;      // scalar oscillator level per dof

  int ground_index() const { return 0; }  // vacuum |0,0> in degree 0
};

// basisSize = scalar cutoff for the 0-form block; needs >= 4.
FiberOperator build_fiber_operator(const FiberModel& fiber, int basis_size);

// Pullback action of the fiber rotation by alpha on the Hermite-Galerkin basis:
// block-orthogonal, commutes with the deformed differential, R(2 pi) = Id.
Eigen::MatrixXd fiber_rotation(const FiberOperator& op, double alpha);

// 1-D finite-difference oracle for the oscillator factor -d^2/dy^2 + tau^2 y^2
// on [-R, R]; returns eigenvalues (ascending) and vectors of the lowest `count`.
struct OscillatorOracle {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::VectorXd ygrid;
};
OscillatorOracle fd_oscillator_oracle(double tau, int grid_n, double radius, int count);

// First `count` eigenvalues of the k=2 fiber Witten Laplacian in degree q from
// the finite-difference oracle (Kronecker-sum composition of the 1-D operator
// plus the degree shift tau (2q - k)).
std::vector<double> fd_fiber_eigenvalues(double tau, int q, int grid_n, double radius, int count);

}  // namespace torsionlab
