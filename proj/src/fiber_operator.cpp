#include "torsionlab/fiber_operator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace torsionlab {

namespace {

using Basis = std::vector<std::pair<int, int>>;  // (n1, n2) with n1 + n2 <= level cap

Basis scalar_basis(int cap) {
  Basis b;
  for (int s = 0; s <= cap; ++s)
    for (int n1 = 0; n1 <= s; ++n1) b.emplace_back(n1, s - n1);
  return b;
}

std::map<std::pair<int, int>, int> index_of(const Basis& b) {
  std::map<std::pair<int, int>, int> m;
  for (int i = 0; i < int(b.size()); ++i) m[b[i]] = i;
  return m;
}

// annihilation ladder a_j between scalar bases
Eigen::MatrixXd ladder(int j, const Basis& src, const Basis& dst) {
  auto di = index_of(dst);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dst.size(), src.size());
  for (int i = 0; i < int(src.size()); ++i) {
    auto [n1, n2] = src[i];
    const int nj = j == 0 ? n1 : n2;
    if (nj < 1) continue;
    const auto key = j == 0 ? std::make_pair(n1 - 1, n2) : std::make_pair(n1, n2 - 1);
    auto it = di.find(key);
    if (it != di.end()) A(it->second, i) = std::sqrt(double(nj));
  }
  return A;
}

// rotation generator a_1^T a_2 - a_2^T a_1 on a scalar basis (skew, level-preserving)
Eigen::MatrixXd rotation_generator(const Basis& b) {
  auto idx = index_of(b);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(b.size(), b.size());
  for (int i = 0; i < int(b.size()); ++i) {
    auto [n1, n2] = b[i];
    if (n2 >= 1) {
      auto it = idx.find({n1 + 1, n2 - 1});
      if (it != idx.end()) J(it->second, i) += std::sqrt(double((n1 + 1) * n2));
    }
    if (n1 >= 1) {
      auto it = idx.find({n1 - 1, n2 + 1});
      if (it != idx.end()) J(it->second, i) -= std::sqrt(double(n1 * (n2 + 1)));
    }
  }
  return J;
}

}  // namespace

FiberOperator build_fiber_operator(const FiberModel& fiber, int basis_size) {
  if (fiber.k != 2)
    throw std::invalid_argument("build_fiber_operator: Galerkin assembly is built for k = 2");
  if (fiber.tau <= 0.0) throw std::domain_error("build_fiber_operator: tau must be positive");
  if (basis_size < 4) throw std::invalid_argument("build_fiber_operator: basisSize >= 4 required");

  FiberOperator op;
  op.tau = fiber.tau;
  op.cutoff = basis_size;
  const Basis b0 = scalar_basis(basis_size);
  const Basis b1 = scalar_basis(basis_size - 1);
  const Basis b2 = scalar_basis(basis_size - 2);
  op.n0 = int(b0.size());
  op.n1 = int(b1.size());
  op.n2 = int(b2.size());
  op.dim = op.n0 + 2 * op.n1 + op.n2;

  const double s = std::sqrt(2.0 * fiber.tau);
  const Eigen::MatrixXd a1_01 = ladder(0, b0, b1), a2_01 = ladder(1, b0, b1);
  const Eigen::MatrixXd a1_12 = ladder(0, b1, b2), a2_12 = ladder(1, b1, b2);

  // d(u) = sqrt(2 tau)(a_1 u dy^1 + a_2 u dy^2); d(f_1, f_2) = sqrt(2 tau)(a_1 f_2 - a_2 f_1)
  op.d0 = Eigen::MatrixXd::Zero(2 * op.n1, op.n0);
  op.d0.topRows(op.n1) = s * a1_01;
  op.d0.bottomRows(op.n1) = s * a2_01;
  op.d1 = Eigen::MatrixXd::Zero(op.n2, 2 * op.n1);
  op.d1.leftCols(op.n1) = -s * a2_12;
  op.d1.rightCols(op.n1) = s * a1_12;

  op.dirac = Eigen::MatrixXd::Zero(op.dim, op.dim);
  op.dirac.block(op.n0, 0, 2 * op.n1, op.n0) = op.d0;
  op.dirac.block(0, op.n0, op.n0, 2 * op.n1) = op.d0.transpose();
  op.dirac.block(op.n0 + 2 * op.n1, op.n0, op.n2, 2 * op.n1) = op.d1;
  op.dirac.block(op.n0, op.n0 + 2 * op.n1, 2 * op.n1, op.n2) = op.d1.transpose();

  op.q_fiber.assign(op.dim, 0);
  op.level.assign(op.dim, 0);
  int at = 0;
  for (const auto& [n1, n2] : b0) {
    op.q_fiber[at] = 0;
    op.level[at++] = n1 + n2;
  }
  for (int comp = 0; comp < 2; ++comp)
    for (const auto& [n1, n2] : b1) {
      op.q_fiber[at] = 1;
      op.level[at++] = n1 + n2;
    }
  for (const auto& [n1, n2] : b2) {
    op.q_fiber[at] = 2;
    op.level[at++] = n1 + n2;
  }
  return op;
}

Eigen::MatrixXd fiber_rotation(const FiberOperator& op, double alpha) {
  const Basis b0 = scalar_basis(op.cutoff);
  const Basis b1 = scalar_basis(op.cutoff - 1);
  const Basis b2 = scalar_basis(op.cutoff - 2);
  const Eigen::MatrixXd R0 = (alpha * rotation_generator(b0)).exp();
  const Eigen::MatrixXd R1s = (alpha * rotation_generator(b1)).exp();
  const Eigen::MatrixXd R2s = (alpha * rotation_generator(b2)).exp();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(op.dim, op.dim);
  R.block(0, 0, op.n0, op.n0) = R0;
  // the (dy^1, dy^2) doublet rotates the same way as the (y_1, y_2) scalar doublet
  const double c = std::cos(alpha), s = std::sin(alpha);
  R.block(op.n0, op.n0, op.n1, op.n1) = c * R1s;
  R.block(op.n0, op.n0 + op.n1, op.n1, op.n1) = s * R1s;
  R.block(op.n0 + op.n1, op.n0, op.n1, op.n1) = -s * R1s;
  R.block(op.n0 + op.n1, op.n0 + op.n1, op.n1, op.n1) = c * R1s;
  R.block(op.n0 + 2 * op.n1, op.n0 + 2 * op.n1, op.n2, op.n2) = R2s;  // dy^1 ^ dy^2 invariant
  return R;
}

OscillatorOracle fd_oscillator_oracle(double tau, int grid_n, double radius, int count) {
  if (tau <= 0.0) throw std::domain_error("fd_oscillator_oracle: tau must be positive");
  if (grid_n < 64) throw std::invalid_argument("fd_oscillator_oracle: grid too coarse");
  const double h = 2.0 * radius / (grid_n + 1);
  OscillatorOracle o;
  o.ygrid = Eigen::VectorXd::Zero(grid_n);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(grid_n, grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const double y = -radius + h * (i + 1);
    o.ygrid(i) = y;
    H(i, i) = 2.0 / (h * h) + tau * tau * y * y;
    if (i + 1 < grid_n) {
      H(i, i + 1) = -1.0 / (h * h);
      H(i + 1, i) = -1.0 / (h * h);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  count = std::min(count, grid_n);
  o.eigenvalues = es.eigenvalues().head(count);
  o.eigenvectors = es.eigenvectors().leftCols(count);
  return o;
}

std::vector<double> fd_fiber_eigenvalues(double tau, int q, int grid_n, double radius, int count) {
  if (q < 0 || q > 2) throw std::invalid_argument("fd_fiber_eigenvalues: q in {0,1,2}");
  const int oneD = std::min(grid_n, 2 + int(std::sqrt(double(count))) + 8);
  auto o = fd_oscillator_oracle(tau, grid_n, radius, oneD);
  std::vector<double> sums;
  for (int i = 0; i < o.eigenvalues.size(); ++i)
    for (int j = 0; j < o.eigenvalues.size(); ++j)
      sums.push_back(o.eigenvalues(i) + o.eigenvalues(j) + tau * (2.0 * q - 2.0));
  std::sort(sums.begin(), sums.end());
  sums.resize(std::min<size_t>(count, sums.size()));
  return sums;
}

}  // namespace torsionlab
