#include "torsionlab/circle_complex.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CircleGrid uniform_circle_grid(int N, double L) {
  if (L <= 0.0) throw std::domain_error("uniform_circle_grid: L must be positive");
  CircleGrid grid;
  grid.N = N;
  grid.theta.resize(N);
  grid.g.assign(N, (L / kTwoPi) * (L / kTwoPi));
  for (int j = 0; j < N; ++j) grid.theta[j] = kTwoPi * j / N;
  return grid;
}

DiscreteComplex build_circle_complex(const CircleGrid& grid) {
  const int N = grid.N;
  if (N < 8) throw std::invalid_argument("build_circle_complex: N >= 8 required");
  if (int(grid.theta.size()) != N || int(grid.g.size()) != N)
    throw std::invalid_argument("build_circle_complex: grid arrays must have length N");
  for (double v : grid.g)
    if (!(v > 0.0)) throw std::domain_error("build_circle_complex: metric samples must be positive");

  DiscreteComplex c;
  c.N = N;
  const double dth = kTwoPi / N;
  c.d0 = Eigen::MatrixXd::Zero(N, N);
  c.m0 = Eigen::VectorXd::Zero(N);
  c.m1 = Eigen::VectorXd::Zero(N);
  for (int j = 0; j < N; ++j) {
    const int jn = (j + 1) % N;
    c.d0(j, jn) += 1.0 / dth;
    c.d0(j, j) -= 1.0 / dth;
    c.m0(j) = std::sqrt(grid.g[j]) * dth;
    // edge sample: geometric mean of the endpoint nodes keeps positivity
    c.m1(j) = dth / std::sqrt(std::sqrt(grid.g[j] * grid.g[jn]));
  }
  c.dstar = c.m0.cwiseInverse().asDiagonal() * c.d0.transpose() * Eigen::MatrixXd(c.m1.asDiagonal());
  c.dirac = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  c.dirac.block(0, N, N, N) = c.dstar;
  c.dirac.block(N, 0, N, N) = c.d0;
  c.laplacian = c.dirac * c.dirac;
  c.mass = Eigen::VectorXd(2 * N);
  c.mass << c.m0, c.m1;
  return c;
}

Eigen::MatrixXd symmetrize_with_mass(const Eigen::MatrixXd& A, const Eigen::VectorXd& mass) {
  if (A.rows() != mass.size() || A.cols() != mass.size())
    throw std::invalid_argument("symmetrize_with_mass: dimension mismatch");
  for (int i = 0; i < mass.size(); ++i)
    if (!(mass(i) > 0.0)) throw std::domain_error("symmetrize_with_mass: mass must be positive");
  Eigen::VectorXd s = mass.cwiseSqrt();
  return s.asDiagonal() * A * s.cwiseInverse().asDiagonal();
}

}  // namespace torsionlab
