#include "entwig/field_entropy.hpp"

#include <cmath>

namespace entwig {

namespace {

struct FieldCoeffs {
  double f1, f2, det;
};

FieldCoeffs coeffs_or_throw(const JointState& j) {
  const AtomSpectralData sd = spectral_data(reduce_atom(j), j.tol);
  const EntropyCoefficients ec = entropy_coeffs(sd, j.tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) {
    throw NearPureError("field entropy operator: state is pure within pure_cutoff");
  }
  return {ec.f1, ec.f2, sd.det};
}

}  // namespace

OverlapSet analytic_overlaps(const ModelParams& p) {
  p.validate();
  const double b2 = std::norm(p.beta);
  const Complex rot2 = std::polar(1.0, 2.0 * p.chit());
  OverlapSet ov;
  ov.cs = 0.5 * std::exp(-b2 * (1.0 - rot2));
  ov.sc = std::conj(ov.cs);
  return ov;
}

FieldOperator field_entropy_from_polynomial(const JointState& j) {
  const auto [f1, f2, det] = coeffs_or_throw(j);
  const FieldOperator rho_b = reduce_field(j);
  const Eigen::MatrixXcd rho_b2 = rho_b.m * rho_b.m;
  return FieldOperator{(f1 + f2 / det) * rho_b.m - (f2 / det) * rho_b2};
}

FieldOperator field_entropy_from_trace(const JointState& j) {
  const QubitOperator s_a = atom_entropy_operator(reduce_atom(j), j.tol);
  const QubitOperator inv = atom_inverse(reduce_atom(j), j.tol);
  return weighted_atom_trace(j, QubitOperator{s_a.m * inv.m});
}

FieldOperator field_entropy_from_purity(const JointState& j) {
  const auto [f1, f2, det] = coeffs_or_throw(j);
  const QubitOperator rho_a = reduce_atom(j);
  const Eigen::Matrix2cd q =
      f1 * Eigen::Matrix2cd::Identity() +
      (f2 / det) * (Eigen::Matrix2cd::Identity() - rho_a.m);
  return weighted_atom_trace(j, QubitOperator{q});
}

FieldOperator field_entropy_from_concurrence(const JointState& j) {
  const double det = coeffs_or_throw(j).det;
  const QubitOperator rho_a = reduce_atom(j);
  const QubitOperator s_a = atom_entropy_operator(rho_a, j.tol);
  Eigen::Matrix2cd sigma_y;
  sigma_y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const Eigen::Matrix2cd spin_flip = sigma_y * rho_a.m.conjugate() * sigma_y;
  return weighted_atom_trace(j, QubitOperator{s_a.m * spin_flip / det});
}

FieldOperator field_entropy_from_dyads(const ModelParams& p) {
  p.validate();
  const OverlapSet ov = analytic_overlaps(p);
  // the branch populations are equal, so eps is just |<c|s>|
  AtomSpectralData sd;
  sd.delta = 0.0;
  sd.eps = std::min(0.5, std::abs(ov.cs));
  sd.det = 0.25 - sd.eps * sd.eps;
  sd.lambda_plus = 0.5 + sd.eps;
  sd.lambda_minus = 0.5 - sd.eps;
  const EntropyCoefficients ec = entropy_coeffs(sd, p.tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) {
    throw NearPureError("field_entropy_from_dyads: state is pure within pure_cutoff");
  }

  const int d = p.effective_dim();
  const Complex rot = std::polar(1.0, -p.chit());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  FockVector c = coherent_state(p.beta * rot, d, p.tol.tail_tol);
  FockVector s = coherent_state(p.beta * std::conj(rot), d, p.tol.tail_tol);
  c.a *= inv_sqrt2;
  s.a *= inv_sqrt2;

  const double diag = ec.f1 + ec.f2 / (2.0 * sd.det);
  const double cross = ec.f2 / sd.det;
  Eigen::MatrixXcd acc = diag * (op_from_dyad(c, c).m + op_from_dyad(s, s).m);
  acc -= cross * (ov.sc * op_from_dyad(s, c).m + ov.cs * op_from_dyad(c, s).m);
  return FieldOperator{std::move(acc)};
}

double mean_field_entropy(const JointState& j) {
  const AtomSpectralData sd = spectral_data(reduce_atom(j), j.tol);
  const EntropyCoefficients ec = entropy_coeffs(sd, j.tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) return 0.0;
  const FieldOperator rho_b = reduce_field(j);
  const FieldOperator s_b = field_entropy_from_polynomial(j);
  return rho_b.m.cwiseProduct(s_b.m.transpose()).sum().real();
}

}  // namespace entwig
