#include "entwig/model.hpp"

#include <cmath>
#include <sstream>

namespace entwig {

void ModelParams::validate() const {
  tol.validate();
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw ValidationError("ModelParams: beta must be finite");
  }
  if (!std::isfinite(chi) || !std::isfinite(t)) {
    throw ValidationError("ModelParams: chi and t must be finite");
  }
  if (effective_dim() < 1) throw ValidationError("ModelParams: dim must be >= 1");
}

QubitOperator QubitOperator::identity() {
  return QubitOperator{Eigen::Matrix2cd::Identity()};
}

Eigen::MatrixXcd JointState::assemble() const {
  const int d = field_dim();
  Eigen::MatrixXcd full(2 * d, 2 * d);
  full.topLeftCorner(d, d) = blocks[0][0].m;
  full.topRightCorner(d, d) = blocks[0][1].m;
  full.bottomLeftCorner(d, d) = blocks[1][0].m;
  full.bottomRightCorner(d, d) = blocks[1][1].m;
  return full;
}

JointState make_joint(const FockVector& c, const FockVector& s, const Tolerances& tol) {
  if (c.dim() != s.dim()) {
    std::ostringstream ss;
    ss << "make_joint: branch dimension mismatch " << c.dim() << " vs " << s.dim();
    throw ValidationError(ss.str());
  }
  const double total = c.norm2() + s.norm2();
  if (std::abs(total - 1.0) > tol.eq_tol) {
    std::ostringstream ss;
    ss << "make_joint: <c|c> + <s|s> = " << total << " deviates from 1 beyond eq_tol="
       << tol.eq_tol;
    throw ValidationError(ss.str());
  }
  JointState j{c, s, {}, tol};
  j.blocks[0][0] = op_from_dyad(c, c);
  j.blocks[0][1] = op_from_dyad(c, s);
  j.blocks[1][0] = op_from_dyad(s, c);
  j.blocks[1][1] = op_from_dyad(s, s);
  return j;
}

JointState build_joint(const ModelParams& p) {
  p.validate();
  const int d = p.effective_dim();
  const double phase = p.chit();
  const Complex rot = std::polar(1.0, -phase);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  FockVector c = coherent_state(p.beta * rot, d, p.tol.tail_tol);
  FockVector s = coherent_state(p.beta * std::conj(rot), d, p.tol.tail_tol);
  c.a *= inv_sqrt2;
  s.a *= inv_sqrt2;
  return make_joint(c, s, p.tol);
}

QubitOperator reduce_atom(const JointState& j) {
  QubitOperator q;
  q.m << inner(j.c, j.c), inner(j.s, j.c), inner(j.c, j.s), inner(j.s, j.s);
  return q;
}

FieldOperator reduce_field(const JointState& j) {
  return FieldOperator{j.blocks[0][0].m + j.blocks[1][1].m};
}

FieldOperator field_power(const JointState& j, int n) {
  if (n < 1) throw ValidationError("field_power: n must be >= 1");
  const FieldOperator base = reduce_field(j);
  Eigen::MatrixXcd acc = base.m;
  for (int k = 1; k < n; ++k) acc = acc * base.m;
  return FieldOperator{std::move(acc)};
}

FieldOperator weighted_atom_trace(const JointState& j, const QubitOperator& q) {
  const int d = j.field_dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      acc += q.m(b, a) * j.blocks[a][b].m;
    }
  }
  return FieldOperator{std::move(acc)};
}

QubitOperator weighted_field_trace(const JointState& j, const FieldOperator& f) {
  if (f.dim() != j.field_dim()) {
    std::ostringstream ss;
    ss << "weighted_field_trace: operator dim " << f.dim() << " vs field dim "
       << j.field_dim();
    throw ValidationError(ss.str());
  }
  QubitOperator q;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // Tr(blocks[a][b] * f) without forming the product
      q.m(a, b) = j.blocks[a][b].m.cwiseProduct(f.m.transpose()).sum();
    }
  }
  return q;
}

}  // namespace entwig
