#include "torsionlab/detline.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& basis_columns, const Eigen::VectorXd& mass_diag) {
  if (basis_columns.rows() != mass_diag.size())
    throw std::invalid_argument("gram_matrix: dimension mismatch");
  return basis_columns.transpose() * mass_diag.asDiagonal() * basis_columns;
}

DetLineNorm det_line_log_norm(const std::vector<Eigen::MatrixXd>& gram_per_degree,
                              const std::vector<long long>& expected_betti) {
  DetLineNorm out;
  out.grams = gram_per_degree;
  for (size_t q = 0; q < gram_per_degree.size(); ++q) {
    const auto& G = gram_per_degree[q];
    const long long expected = q < expected_betti.size() ? expected_betti[q] : 0;
    if (G.rows() != expected) out.cohomology_violation = true;
    if (G.rows() == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (G + G.transpose()));
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("det_line_log_norm: Gram matrix is not positive definite");
    double logdet = 0.0;
    for (int i = 0; i < G.rows(); ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    out.log_norm += (q % 2 == 0 ? 0.5 : -0.5) * logdet;
  }
  return out;
}

}  // namespace torsionlab
