#pragma once

#include <array>

#include "entwig/fock.hpp"

namespace entwig {

/// Dispersive-interaction parameters. The field starts in |beta>, the
/// qubit in (|e>+|g>)/sqrt(2); the interaction rotates the field phase by
/// -chi*t on the excited branch and +chi*t on the ground branch. Only the
/// product chi*t enters the physics.
struct ModelParams {
  Complex beta;
  double chi = 1.0;
  double t = 0.0;
  int dim = 0;  // 0 = derive from |beta| via default_dim
  Tolerances tol;

  double chit() const { return chi * t; }
  int effective_dim() const { return dim > 0 ? dim : default_dim(std::abs(beta)); }
  void validate() const;
};

/// 2x2 operator on the qubit.
struct QubitOperator {
  Eigen::Matrix2cd m;

  Complex trace() const { return m.trace(); }
  double herm_defect() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }
  static QubitOperator identity();
};

/// Pure joint qubit (x) field state in block form:
///   blocks[0][0]=|c><c|  blocks[0][1]=|c><s|
///   blocks[1][0]=|s><c|  blocks[1][1]=|s><s|
/// where |c>, |s> are the (unnormalized) field branches attached to the
/// excited and ground qubit states. <c|c> + <s|s> = 1.
struct JointState {
  FockVector c, s;
  std::array<std::array<FieldOperator, 2>, 2> blocks;
  Tolerances tol;

  int field_dim() const { return c.dim(); }
  /// Dense 2N x 2N view, for spectrum/PSD checks.
  Eigen::MatrixXcd assemble() const;
};

/// Assemble the joint pure state from arbitrary branch vectors.
/// Requires <c|c> + <s|s> = 1 within eq_tol.
JointState make_joint(const FockVector& c, const FockVector& s, const Tolerances& tol = {});

/// Branches of the dispersive model at time t:
///   |c> = |beta e^{-i chi t}> / sqrt(2),  |s> = |beta e^{+i chi t}> / sqrt(2)
JointState build_joint(const ModelParams& p);

/// rho_A = [[<c|c>, <s|c>], [<c|s>, <s|s>]]
QubitOperator reduce_atom(const JointState& j);

/// rho_B = |c><c| + |s><s|
FieldOperator reduce_field(const JointState& j);

/// rho_B^n by dense multiplication, n >= 1.
FieldOperator field_power(const JointState& j, int n);

/// Tr_A{ rho (q (x) 1) } = sum_{a,a'} q[a',a] blocks[a][a'].
/// With q = rho_A^n this yields rho_B^{n+1}.
FieldOperator weighted_atom_trace(const JointState& j, const QubitOperator& q);

/// Tr_B{ rho (1 (x) f) }: entry (a,a') = Tr(blocks[a][a'] f).
/// With f = rho_B^n this yields rho_A^{n+1}.
QubitOperator weighted_field_trace(const JointState& j, const FieldOperator& f);

}  // namespace entwig
