#pragma once

#include <Eigen/Dense>
#include <vector>

namespace torsionlab {

struct DetLineNorm {
  std::vector<Eigen::MatrixXd> grams;  // per degree
  double log_norm = 0.0;               // sum_q (-1)^q (1/2) log det Gram_q
  bool cohomology_violation = false;
};

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& basis_columns, const Eigen::VectorXd& mass_diag);

// Determinant-line convention: lambda = tensor_q (det H^q)^{(-1)^q}. Expected
// kernel dimensions trip the cohomology-violation flag when they disagree.
DetLineNorm det_line_log_norm(const std::vector<Eigen::MatrixXd>& gram_per_degree,
                              const std::vector<long long>& expected_betti);

}  // namespace torsionlab
