#pragma once

#include <Eigen/Dense>
#include <vector>

namespace torsionlab {

struct CircleGrid {
  int N = 0;
  std::vector<double> theta;  // node coordinates on [0, 2 pi)
  std::vector<double> g;      // metric samples per node, > 0
};

// Uniform grid for a circle of total length L: g == (L / 2 pi)^2.
CircleGrid uniform_circle_grid(int N, double L);

// Primal/dual finite-difference de Rham complex on the circle.
struct DiscreteComplex {
  int N = 0;
  Eigen::MatrixXd d0;       // periodic forward difference, 0-forms -> 1-forms
  Eigen::VectorXd m0, m1;   // diagonal mass matrices per degree
  Eigen::MatrixXd dstar;    // M0^{-1} d0^T M1
  Eigen::MatrixXd dirac;    // d + d* on the 2N-dim total space
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd mass;     // block-diagonal mass of the total space
};

DiscreteComplex build_circle_complex(const CircleGrid& grid);

// Symmetric reduction by Cholesky congruence of the (diagonal) mass matrix:
// S = M^{1/2} A M^{-1/2}. Eigenvalues agree with the mass-generalized problem.
Eigen::MatrixXd symmetrize_with_mass(const Eigen::MatrixXd& A, const Eigen::VectorXd& mass);

}  // namespace torsionlab
