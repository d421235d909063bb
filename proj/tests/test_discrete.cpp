#include <doctest.h>

#include <cmath>

#include "torsionlab/assembly.hpp"
#include "torsionlab/circle_complex.hpp"
#include "torsionlab/fiber_operator.hpp"
#include "torsionlab/heat.hpp"
#include "torsionlab/model_spectra.hpp"

using namespace torsionlab;

namespace {
constexpr double kTwoPi = 6.283185307179586;

Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}
}  // namespace

TEST_CASE("circle complex basics") {
  const auto grid = uniform_circle_grid(512, kTwoPi);
  const DiscreteComplex cx = build_circle_complex(grid);
  // smallest 0-form eigenvalue is 0 with constant eigenvector
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(cx.N);
  CHECK((cx.d0 * ones).cwiseAbs().maxCoeff() <= 1e-12);
  // lowest nonzero Laplacian eigenvalues approximate (2 pi m / L)^2
  const Eigen::MatrixXd L0 = symmetrize_with_mass(cx.dstar * cx.d0, cx.m0);
  const Eigen::VectorXd ev = sorted_eigs(L0);
  for (int m = 1; m <= 5; ++m) {
    const double lam = ev(2 * m - 1);
    CHECK(std::abs(lam - m * m) / (m * m) <= 1e-3);
  }
  // invalid grids
  CircleGrid bad = uniform_circle_grid(16, 1.0);
  bad.g[3] = -1.0;
  CHECK_THROWS_AS(build_circle_complex(bad), std::domain_error);
  CHECK_THROWS_AS(build_circle_complex(uniform_circle_grid(4, 1.0)), std::invalid_argument);
}

TEST_CASE("variable metric of the same total length converges to the flat spectrum") {
  // the 1-D Hodge Laplacian depends only on the total length
  const double L = kTwoPi;
  std::vector<double> errs;
  for (int N : {256, 512, 1024}) {
    CircleGrid grid = uniform_circle_grid(N, L);
    double len = 0.0;
    for (int j = 0; j < N; ++j) {
      grid.g[j] = std::pow(1.0 + 0.4 * std::sin(grid.theta[j]), 2.0);
      len += std::sqrt(grid.g[j]) * (kTwoPi / N);
    }
    // rescale to total length L
    const double scale = (L / len) * (L / len);
    for (auto& v : grid.g) v *= scale;
    const DiscreteComplex cx = build_circle_complex(grid);
    const Eigen::MatrixXd L0 = symmetrize_with_mass(cx.dstar * cx.d0, cx.m0);
    const Eigen::VectorXd ev = sorted_eigs(L0);
    errs.push_back(std::abs(ev(1) - 1.0));
  }
  CHECK(errs[2] <= errs[0]);
  CHECK(errs[2] <= 5e-3);
}

TEST_CASE("Hermite-Galerkin fiber operator") {
  const FiberOperator op = build_fiber_operator({2, 1.0, 12}, 12);
  // deformed differential squares to zero
  CHECK((op.d1 * op.d0).cwiseAbs().maxCoeff() <= 1e-12);
  // eigenvalues of the square match 2 tau (|n| + q) exactly up to truncation
  const Eigen::MatrixXd sq = op.dirac * op.dirac;
  std::vector<int> idx0;
  for (int i = 0; i < op.dim; ++i)
    if (op.q_fiber[i] == 0) idx0.push_back(i);
  Eigen::MatrixXd blk(idx0.size(), idx0.size());
  for (size_t i = 0; i < idx0.size(); ++i)
    for (size_t j = 0; j < idx0.size(); ++j) blk(i, j) = sq(idx0[i], idx0[j]);
  const Eigen::VectorXd ev = sorted_eigs(blk);
  CHECK(std::abs(ev(0)) <= 1e-10);
  CHECK(ev(1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ev(2) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ev(3) == doctest::Approx(4.0).epsilon(1e-10));
  // ground eigenvector concentrates on the Hermite vacuum
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk);
  Eigen::VectorXd ground = es.eigenvectors().col(0);
  CHECK(std::abs(std::abs(ground(0)) - 1.0) <= 1e-10);
  // tau scaling doubles eigenvalues
  const FiberOperator op2 = build_fiber_operator({2, 2.0, 12}, 12);
  const Eigen::VectorXd ev2 = sorted_eigs(op2.dirac * op2.dirac);
  const Eigen::VectorXd ev1 = sorted_eigs(op.dirac * op.dirac);
  for (int i = 0; i < ev1.size(); ++i) CHECK(ev2(i) == doctest::Approx(2.0 * ev1(i)).epsilon(1e-9));
  CHECK_THROWS_AS(build_fiber_operator({2, 1.0, 12}, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_fiber_operator({4, 1.0, 12}, 8), std::invalid_argument);
}

TEST_CASE("fiber rotation representation") {
  const FiberOperator op = build_fiber_operator({2, 1.0, 6}, 6);
  const double alpha = 1.234;
  const Eigen::MatrixXd R = fiber_rotation(op, alpha);
  CHECK((R * R.transpose() - Eigen::MatrixXd::Identity(op.dim, op.dim)).cwiseAbs().maxCoeff() <= 1e-12);
  // commutes with the deformed differential (equivariance)
  Eigen::MatrixXd dY = Eigen::MatrixXd::Zero(op.dim, op.dim);
  dY.block(op.n0, 0, 2 * op.n1, op.n0) = op.d0;
  dY.block(op.n0 + 2 * op.n1, op.n0, op.n2, 2 * op.n1) = op.d1;
  CHECK((R * dY - dY * R).cwiseAbs().maxCoeff() <= 1e-11);
  // R(2 pi) = identity
  const Eigen::MatrixXd R2pi = fiber_rotation(op, kTwoPi);
  CHECK((R2pi - Eigen::MatrixXd::Identity(op.dim, op.dim)).cwiseAbs().maxCoeff() <= 1e-11);
  // R(pi)^2 folds into the alpha = 2 pi identification
  const Eigen::MatrixXd Rpi = fiber_rotation(op, 3.141592653589793);
  CHECK((Rpi * Rpi - R2pi).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("total assembly") {
  const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(24, kTwoPi));
  const FiberOperator fop = build_fiber_operator({2, 1.0, 4}, 4);
  ScalingParams sc;
  sc.epsilon = 0.5;
  const WittenAssembly a = assemble_total_dirac(cx, fop, sc);
  // deformed differential squares to zero
  CHECK((a.d_total * a.d_total).cwiseAbs().maxCoeff() <= 1e-10);
  // symmetric in the mass inner product
  const Eigen::MatrixXd S = a.sym_dirac();
  CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  // eigenvalues of D^2 at eps = 1 match the closed-form product lines within
  // discretization error (second-order in 1/N)
  {
    const DiscreteComplex cx64 = build_circle_complex(uniform_circle_grid(64, kTwoPi));
    ScalingParams unit;
    const Spectrum dspec = assembly_spectrum(assemble_total_dirac(cx64, fop, unit));
    const Spectrum cf = scaled_product_spectrum(circle_hodge_spectrum({kTwoPi}, 12),
                                                fiber_witten_spectrum({2, 1.0, 4}, true), 1.0, 1.0);
    std::vector<double> got, want;
    for (const auto& l : dspec.lines)
      for (int m = 0; m < l.mult; ++m) got.push_back(l.lambda);
    for (const auto& l : cf.lines)
      for (int m = 0; m < l.mult; ++m) want.push_back(l.lambda);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(got[i] - want[i]) <= 1e-3 * std::max(1.0, want[i]));
  }
  // epsilon linearity of the base block
  ScalingParams sc1;
  const WittenAssembly a1 = assemble_total_dirac(cx, fop, sc1);
  ScalingParams sc2;
  sc2.epsilon = 0.5;
  const WittenAssembly a2 = assemble_total_dirac(cx, fop, sc2);
  // d_total(eps) = eps * base part + fiber part, so d(0.5) = 0.5 d(1) + 0.5 fiber
  Eigen::MatrixXd fiber_part = Eigen::MatrixXd::Zero(a1.dim, a1.dim);
  {
    Eigen::MatrixXd dY = Eigen::MatrixXd::Zero(fop.dim, fop.dim);
    dY.block(fop.n0, 0, 2 * fop.n1, fop.n0) = fop.d0;
    dY.block(fop.n0 + 2 * fop.n1, fop.n0, fop.n2, 2 * fop.n1) = fop.d1;
    const int nb = a1.N * a1.fdim;
    for (int j = 0; j < a1.N; ++j) {
      fiber_part.block(j * a1.fdim, j * a1.fdim, a1.fdim, a1.fdim) += dY;
      fiber_part.block(nb + j * a1.fdim, nb + j * a1.fdim, a1.fdim, a1.fdim) -= dY;
    }
  }
  CHECK((a2.d_total - (0.5 * a1.d_total + 0.5 * fiber_part)).cwiseAbs().maxCoeff() <= 1e-12);
  // degree parity: D^2 is block diagonal by total parity
  const Eigen::MatrixXd S2 = S * S;
  double offparity = 0.0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      if ((a.degree[i] & 1) != (a.degree[j] & 1)) offparity = std::max(offparity, std::abs(S2(i, j)));
  CHECK(offparity <= 1e-10);
}

TEST_CASE("twisted assembly against the twisted closed form") {
  const double alpha = 3.141592653589793;
  const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(48, kTwoPi));
  const FiberOperator fop = build_fiber_operator({2, 1.0, 4}, 4);
  ScalingParams sc;
  sc.holonomy_angle = alpha;
  const WittenAssembly a = assemble_total_dirac(cx, fop, sc);
  const Spectrum dspec = assembly_spectrum(a);
  double lam_max = 0.0;
  for (const auto& l : dspec.lines) lam_max = std::max(lam_max, l.lambda);
  const auto dims = dspec.kernel_dims(3, 1e-10 * lam_max);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 1);
  CHECK(dims[2] == 0);
  CHECK(dims[3] == 0);
  // first twisted lines: 0, 0, ~1 (x4, ell = 0 base mode), ~2.25 (x4, ell = +-1)
  std::vector<double> all;
  for (const auto& l : dspec.lines) all.push_back(l.lambda);
  std::sort(all.begin(), all.end());
  CHECK(all[2] == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(all[5] == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(all[6] == doctest::Approx(2.25).epsilon(2e-3));
  // oracle: dense twisted closed form
  const Spectrum cf = holonomy_twisted_spectrum({kTwoPi}, {2, 1.0, 4}, alpha, 12);
  std::vector<double> want;
  for (const auto& l : cf.lines) want.push_back(l.lambda);
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 10; ++i) CHECK(std::abs(all[i] - want[i]) <= 2e-3 * std::max(1.0, want[i]));
}

TEST_CASE("kernel projection and block decomposition") {
  const DiscreteComplex cx = build_circle_complex(uniform_circle_grid(16, kTwoPi));
  const FiberOperator fop = build_fiber_operator({2, 1.0, 4}, 4);
  std::vector<double> a1_mins;
  for (double eps : {1.0, 0.5, 0.25}) {
    ScalingParams sc;
    sc.epsilon = eps;
    const WittenAssembly a = assemble_total_dirac(cx, fop, sc);
    const KernelProjection proj = kernel_projection(a);
    // dim range(p) per total degree: (N, N, 0, 0)
    std::vector<int> counts(4, 0);
    for (size_t i = 0; i < proj.p_index.size(); ++i) ++counts[proj.p_degree[i]];
    CHECK(counts[0] == 16);
    CHECK(counts[1] == 16);
    CHECK(counts[2] == 0);
    CHECK(counts[3] == 0);
    const BlockDecomposition blocks = block_decompose(a, proj);
    CHECK(blocks.reassembly_error <= 1e-10);
    // A2 vanishes structurally for the product
    CHECK(blocks.A2.cwiseAbs().maxCoeff() <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blocks.A1, Eigen::EigenvaluesOnly);
    a1_mins.push_back(es.eigenvalues().cwiseAbs().minCoeff());
  }
  // min singular value of A1 grows like lambda0 / eps
  CHECK(a1_mins[1] / a1_mins[0] == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(a1_mins[2] / a1_mins[0] == doctest::Approx(4.0).epsilon(1e-2));
  // p applied to a ground-state section is itself; excited sectors map to zero
  ScalingParams sc;
  const WittenAssembly a = assemble_total_dirac(cx, fop, sc);
  const KernelProjection proj = kernel_projection(a);
  for (int i : proj.p_index) CHECK(a.fiber_dof[i] == 0);
  for (int i : proj.perp_index) CHECK(a.fiber_dof[i] != 0);
}

TEST_CASE("heat operator") {
  Eigen::MatrixXd D(2, 2);
  D << 1.0, 0.0, 0.0, 3.0;
  // t -> 0 limit is the identity
  CHECK((heat_operator(D, 0.0) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
  // semigroup property
  const Eigen::MatrixXd h1 = heat_operator(D, 0.7), h2 = heat_operator(D, 0.3);
  CHECK((h1 * h2 - heat_operator(D, 1.0)).cwiseAbs().maxCoeff() <= 1e-10);
  // oscillator-block trace matches the geometric sum
  const FiberOperator fop = build_fiber_operator({2, 1.0, 10}, 10);
  const Eigen::MatrixXd sq = fop.dirac * fop.dirac;
  const double tr = heat_operator(sq, 1.0).trace();
  double closed = 0.0;
  for (int i = 0; i < fop.dim; ++i) closed += std::exp(-(2.0 * (fop.level[i] + fop.q_fiber[i])));
  CHECK(tr == doctest::Approx(closed).epsilon(1e-10));
  // asymmetric input rejected
  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(heat_operator(bad, 1.0), std::invalid_argument);
}

TEST_CASE("contour heat operator") {
  SUBCASE("closed-form diagonal") {
    Eigen::MatrixXd D(2, 2);
    D << 1.0, 0.0, 0.0, 3.0;
    const auto res = contour_heat_operator(D, 1.0, {1.0, 40.0, 256});
    CHECK(std::abs(res.matrix(0, 0) - std::exp(-1.0)) <= 1e-8);
    CHECK(std::abs(res.matrix(1, 1) - std::exp(-9.0)) <= 1e-8);
    CHECK(std::abs(res.matrix(0, 1)) <= 1e-10);
  }
  SUBCASE("zero matrix gives the identity") {
    const auto res = contour_heat_operator(Eigen::MatrixXd::Zero(3, 3), 2.0, {0.7, 30.0, 128});
    CHECK((res.matrix - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("resolvent norm bound (self-adjointness)") {
    Eigen::MatrixXd D(3, 3);
    D << 2, 1, 0, 1, -1, 0.5, 0, 0.5, 0.3;
    const auto res = contour_heat_operator(D, 1.0, {0.5, 30.0, 256});
    CHECK(res.max_resolvent_norm <= std::sqrt(3.0) * 1.01 / 0.5);
    // the embedded half-order estimate is conservative; the result itself is sharp
    CHECK(res.quadrature_error <= 0.05);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    Eigen::VectorXd decay = (-es.eigenvalues().array().square()).exp();
    const Eigen::MatrixXd exact =
        es.eigenvectors() * decay.asDiagonal() * es.eigenvectors().transpose();
    CHECK((res.matrix - exact).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(contour_heat_operator(Eigen::MatrixXd::Zero(2, 2), 1.0, {0.0, 30.0, 128}),
                    std::domain_error);
    CHECK_THROWS_AS(contour_heat_operator(Eigen::MatrixXd::Zero(2, 2), 1.0, {1.0, 30.0, 32}),
                    std::invalid_argument);
  }
}
