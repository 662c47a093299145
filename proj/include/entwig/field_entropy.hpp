#pragma once

#include "entwig/qubit_entropy.hpp"

namespace entwig {

/// Branch overlaps of the dispersive model, in closed form:
///   <c|c> = <s|s> = 1/2,
///   <c|s> = <s|c>* = exp(-|beta|^2 [1 - e^{2i chi t}]) / 2.
struct OverlapSet {
  double cc = 0.5;
  double ss = 0.5;
  Complex cs;
  Complex sc;
};

OverlapSet analytic_overlaps(const ModelParams& p);

/// S_B as a polynomial in the field density matrix:
///   S_B = (F1 + F2/det) rho_B - (F2/det) rho_B^2.
/// Acts as -ln rho_B on the support of rho_B and as zero on its kernel.
FieldOperator field_entropy_from_polynomial(const JointState& j);

/// S_B = Tr_A{ rho S_A rho_A^{-1} }.
FieldOperator field_entropy_from_trace(const JointState& j);

/// S_B = Tr_A{ rho (F1 + (F2/det)[1 - rho_A]) }, the purity-operator
/// expansion of the trace route.
FieldOperator field_entropy_from_purity(const JointState& j);

/// S_B = (1/det) Tr_A{ rho S_A sigma_y rho_A* sigma_y }, using the
/// spin-flip operator in place of the explicit inverse.
FieldOperator field_entropy_from_concurrence(const JointState& j);

/// S_B assembled directly from the branch dyads and analytic overlaps:
///   (F1 + F2/(2 det)) (|c><c| + |s><s|)
///   - (F2/det) (<s|c> |s><c| + <c|s> |c><s|).
FieldOperator field_entropy_from_dyads(const ModelParams& p);

/// Tr(rho_B S_B); 0 in the near_pure regime.
double mean_field_entropy(const JointState& j);

}  // namespace entwig
