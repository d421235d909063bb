#include "torsionlab/expansion_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace torsionlab {

double ExpansionFit::coefficient(double power) const {
  for (size_t i = 0; i < powers.size(); ++i)
    if (std::abs(powers[i] - power) < 1e-12) return coefficients[i];
  return 0.0;
}

std::vector<double> default_expansion_powers() { return {-0.5, 0.0, 0.5, 1.5, 2.5}; }

ExpansionFit fit_small_time_expansion(const std::vector<std::array<double, 3>>& samples,
                                      const std::vector<double>& powers) {
  if (samples.size() < 8)
    throw std::invalid_argument("fit_small_time_expansion: need at least 8 samples");
  if (powers.empty()) throw std::invalid_argument("fit_small_time_expansion: empty basis");
  const int m = int(samples.size()), n = int(powers.size());
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd y(m);
  ExpansionFit fit;
  fit.t_min = samples.front()[0];
  fit.t_max = samples.back()[0];
  for (int i = 0; i < m; ++i) {
    const auto& [t, v, b] = samples[i];
    if (t <= 0.0 || t >= 1.0)
      throw std::domain_error("fit_small_time_expansion: window must lie strictly inside (0,1)");
    for (int j = 0; j < n; ++j) A(i, j) = std::pow(t, powers[j]);
    y(i) = v;
    fit.data_bound = std::max(fit.data_bound, b);
  }
  // column scaling keeps the conditioning measure meaningful across powers
  Eigen::VectorXd scale = A.colwise().norm();
  for (int j = 0; j < n; ++j)
    if (scale(j) > 0) A.col(j) /= scale(j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  fit.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(smin > 0) || fit.condition > 1e12)
    throw std::runtime_error("fit_small_time_expansion: ill-conditioned design matrix; adjust window");
  Eigen::VectorXd c = svd.solve(y);
  for (int j = 0; j < n; ++j) c(j) /= (scale(j) > 0 ? scale(j) : 1.0);
  fit.powers = powers;
  fit.coefficients.assign(c.data(), c.data() + n);
  double rss = 0.0;
  for (int i = 0; i < m; ++i) {
    double pred = 0.0;
    for (int j = 0; j < n; ++j) pred += fit.coefficients[j] * std::pow(samples[i][0], powers[j]);
    const double r = std::abs(pred - samples[i][1]);
    rss += r * r;
    fit.residual_max = std::max(fit.residual_max, r);
  }
  fit.residual_rms = std::sqrt(rss / m);
  return fit;
}

std::vector<std::array<double, 3>> sample_theta(const ThetaSeries& theta, double t_min,
                                                double t_max, int count) {
  if (!(0.0 < t_min && t_min < t_max && t_max < 1.0))
    throw std::domain_error("sample_theta: window must satisfy 0 < t_min < t_max < 1");
  std::vector<std::array<double, 3>> out;
  out.reserve(count);
  const double la = std::log(t_min), lb = std::log(t_max);
  for (int i = 0; i < count; ++i) {
    const double t = std::exp(la + (lb - la) * i / double(count - 1));
    const auto v = theta.eval(t, true);
    out.push_back({t, v.value, v.bound});
  }
  return out;
}

std::pair<double, double> scaled_fit_window(double lambda1) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
    throw std::domain_error("scaled_fit_window: need a positive first eigenvalue");
  double lo = 0.02 / lambda1, hi = 0.5 / lambda1;
  if (hi > 0.5) {
    lo *= 0.5 / hi;
    hi = 0.5;
  }
  return {lo, hi};
}

}  // namespace torsionlab
