#pragma once

#include <Eigen/Dense>
#include <vector>

#include "torsionlab/circle_complex.hpp"
#include "torsionlab/fiber_operator.hpp"
#include "torsionlab/spectrum.hpp"

namespace torsionlab {

// Total Witten-Dirac assembly on the tensor-product basis. Dof layout:
// base-degree-major, then base node/edge index, then fiber dof:
//   [q_M = 0: (node j) x (fiber)] ++ [q_M = 1: (edge j) x (fiber)].
// Holonomy enters as a seam condition: the wrap-around difference on the last
// edge is conjugated by the fiber rotation representation.
struct WittenAssembly {
  int N = 0;          // base nodes
  int fdim = 0;       // fiber dofs
  int dim = 0;        // 2 N fdim
  double tau = 1.0, epsilon = 1.0, alpha = 0.0;
  Eigen::MatrixXd d_total;  // eps d_M + (-1)^{q_M} d_Y; squares to zero
  Eigen::MatrixXd dirac;    // d_total + its mass adjoint
  Eigen::VectorXd mass;     // diagonal total mass
  std::vector<int> q_base, q_fiber, degree;
  std::vector<int> fiber_dof;  // fiber index per dof

  Eigen::MatrixXd sym_dirac() const;  // M^{1/2} D M^{-1/2}
};

WittenAssembly assemble_total_dirac(const DiscreteComplex& complex_, const FiberOperator& fiber,
                                    const ScalingParams& scaling);

// Index split against (range p)^perp ++ (range p) where p projects onto
// (base forms) x (fiber ground state).
struct KernelProjection {
  std::vector<int> p_index;     // dofs spanning range p
  std::vector<int> perp_index;  // complement
  std::vector<int> p_degree;    // total degree per p dof
};

KernelProjection kernel_projection(const WittenAssembly& assembly);

// Blocks of (1/eps) D against the projection, in the mass-symmetrized frame.
struct BlockDecomposition {
  Eigen::MatrixXd A1;  // perp x perp
  Eigen::MatrixXd A2;  // perp x p
  Eigen::MatrixXd A3;  // p x p (= D0 here: the torsion term vanishes on a 1-d base)
  double reassembly_error = 0.0;
};

BlockDecomposition block_decompose(const WittenAssembly& assembly, const KernelProjection& proj);

// Eigenvalues of the symmetrized square, labeled per total degree, as a Spectrum.
Spectrum assembly_spectrum(const WittenAssembly& assembly);

// Matrix export: `row col value` coordinate text plus a sidecar descriptor.
void write_assembly_matrix(const std::string& path_prefix, const WittenAssembly& assembly);

}  // namespace torsionlab
