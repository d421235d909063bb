#include "torsionlab/assembly.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "torsionlab/io.hpp"

namespace torsionlab {

Eigen::MatrixXd WittenAssembly::sym_dirac() const { return symmetrize_with_mass(dirac, mass); }

WittenAssembly assemble_total_dirac(const DiscreteComplex& complex_, const FiberOperator& fiber,
                                    const ScalingParams& scaling) {
  if (scaling.epsilon <= 0.0) throw std::domain_error("assemble_total_dirac: epsilon > 0 required");
  const int N = complex_.N;
  const int fdim = fiber.dim;
  WittenAssembly a;
  a.N = N;
  a.fdim = fdim;
  a.dim = 2 * N * fdim;
  a.tau = fiber.tau;
  a.epsilon = scaling.epsilon;
  a.alpha = scaling.holonomy_angle;

  const Eigen::MatrixXd R = a.alpha != 0.0 ? fiber_rotation(fiber, a.alpha)
                                           : Eigen::MatrixXd::Identity(fdim, fdim);

  // fiber deformed differential as a degree-raising square block
  Eigen::MatrixXd dY = Eigen::MatrixXd::Zero(fdim, fdim);
  dY.block(fiber.n0, 0, 2 * fiber.n1, fiber.n0) = fiber.d0;
  dY.block(fiber.n0 + 2 * fiber.n1, fiber.n0, fiber.n2, 2 * fiber.n1) = fiber.d1;

  const int nb = N * fdim;
  a.d_total = Eigen::MatrixXd::Zero(a.dim, a.dim);
  // base difference with seam conjugation, epsilon-scaled
  for (int j = 0; j < N; ++j) {
    const int jn = (j + 1) % N;
    const bool seam = (j == N - 1);
    // row block: edge j (lives at offset nb), column blocks: nodes j, j+1
    auto row = a.d_total.block(nb + j * fdim, 0, fdim, nb);
    const double inv_dth = complex_.d0(j, jn);
    if (seam)
      row.block(0, jn * fdim, fdim, fdim) += scaling.epsilon * inv_dth * R;
    else
      row.block(0, jn * fdim, fdim, fdim) +=
          scaling.epsilon * inv_dth * Eigen::MatrixXd::Identity(fdim, fdim);
    row.block(0, j * fdim, fdim, fdim) +=
        scaling.epsilon * complex_.d0(j, j) * Eigen::MatrixXd::Identity(fdim, fdim);
  }
  // fiber differential with the Koszul sign per base degree
  for (int j = 0; j < N; ++j) {
    a.d_total.block(j * fdim, j * fdim, fdim, fdim) += dY;
    a.d_total.block(nb + j * fdim, nb + j * fdim, fdim, fdim) -= dY;
  }

  a.mass = Eigen::VectorXd(a.dim);
  a.q_base.assign(a.dim, 0);
  a.q_fiber.assign(a.dim, 0);
  a.degree.assign(a.dim, 0);
  a.fiber_dof.assign(a.dim, 0);
  for (int qm = 0; qm <= 1; ++qm)
    for (int j = 0; j < N; ++j)
      for (int f = 0; f < fdim; ++f) {
        const int at = qm * nb + j * fdim + f;
        a.mass(at) = qm == 0 ? complex_.m0(j) : complex_.m1(j);
        a.q_base[at] = qm;
        a.q_fiber[at] = fiber.q_fiber[f];
        a.degree[at] = qm + fiber.q_fiber[f];
        a.fiber_dof[at] = f;
      }

  const Eigen::MatrixXd dstar =
      a.mass.cwiseInverse().asDiagonal() * a.d_total.transpose() * Eigen::MatrixXd(a.mass.asDiagonal());
  a.dirac = a.d_total + dstar;
  return a;
}

KernelProjection kernel_projection(const WittenAssembly& assembly) {
  for (int i = 0; i < assembly.mass.size(); ++i)
    if (!(assembly.mass(i) > 0.0))
      throw std::runtime_error("kernel_projection: degenerate mass matrix");
  KernelProjection proj;
  for (int i = 0; i < assembly.dim; ++i) {
    // fiber ground state: degree-0 vacuum, the first fiber dof
    if (assembly.fiber_dof[i] == 0) {
      proj.p_index.push_back(i);
      proj.p_degree.push_back(assembly.degree[i]);
    } else {
      proj.perp_index.push_back(i);
    }
  }
  return proj;
}

BlockDecomposition block_decompose(const WittenAssembly& assembly, const KernelProjection& proj) {
  const Eigen::MatrixXd S = assembly.sym_dirac() / assembly.epsilon;
  const auto& P = proj.p_index;
  const auto& Q = proj.perp_index;
  BlockDecomposition b;
  b.A1.resize(Q.size(), Q.size());
  b.A2.resize(Q.size(), P.size());
  b.A3.resize(P.size(), P.size());
  for (size_t i = 0; i < Q.size(); ++i)
    for (size_t j = 0; j < Q.size(); ++j) b.A1(i, j) = S(Q[i], Q[j]);
  for (size_t i = 0; i < Q.size(); ++i)
    for (size_t j = 0; j < P.size(); ++j) b.A2(i, j) = S(Q[i], P[j]);
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = 0; j < P.size(); ++j) b.A3(i, j) = S(P[i], P[j]);

  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  for (size_t i = 0; i < Q.size(); ++i) {
    for (size_t j = 0; j < Q.size(); ++j) re(Q[i], Q[j]) = b.A1(i, j);
    for (size_t j = 0; j < P.size(); ++j) {
      re(Q[i], P[j]) = b.A2(i, j);
      re(P[j], Q[i]) = b.A2(i, j);
    }
  }
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = 0; j < P.size(); ++j) re(P[i], P[j]) = b.A3(i, j);
  b.reassembly_error = (re - S).cwiseAbs().maxCoeff();
  return b;
}

Spectrum assembly_spectrum(const WittenAssembly& assembly) {
  // the square is block-diagonal by total degree; solve per degree block
  const Eigen::MatrixXd S = assembly.sym_dirac();
  const Eigen::MatrixXd S2 = S * S;
  Spectrum spec;
  const int maxdeg = 3;
  for (int deg = 0; deg <= maxdeg; ++deg) {
    std::vector<int> idx;
    for (int i = 0; i < assembly.dim; ++i)
      if (assembly.degree[i] == deg) idx.push_back(i);
    if (idx.empty()) continue;
    Eigen::MatrixXd blk(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) blk(i, j) = S2(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (blk + blk.transpose()));
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = std::max(0.0, es.eigenvalues()(i));
      spec.lines.push_back({deg, -1, -1, lam, 1});
    }
  }
  spec.split_degrees = false;
  spec.tail = {0.0, 0.0, 0.0};  // finite model: nothing omitted
  spec.sort_lines();
  return spec;
}

void write_assembly_matrix(const std::string& path_prefix, const WittenAssembly& assembly) {
  {
    std::ofstream os(path_prefix + ".coo");
    if (!os) throw std::runtime_error("cannot open for writing: " + path_prefix + ".coo");
    for (int i = 0; i < assembly.dim; ++i)
      for (int j = 0; j < assembly.dim; ++j)
        if (assembly.dirac(i, j) != 0.0)
          os << i << ' ' << j << ' ' << format_g17(assembly.dirac(i, j)) << '\n';
  }
  std::ofstream os(path_prefix + ".desc");
  if (!os) throw std::runtime_error("cannot open for writing: " + path_prefix + ".desc");
  os << "dim " << assembly.dim << "\nbase_nodes " << assembly.N << "\nfiber_dim " << assembly.fdim
     << "\ntau " << format_g17(assembly.tau) << "\nepsilon " << format_g17(assembly.epsilon)
     << "\nalpha " << format_g17(assembly.alpha) << "\ndegrees";
  for (int i = 0; i < assembly.dim; ++i) os << ' ' << assembly.degree[i];
  os << '\n';
}

}  // namespace torsionlab
