#pragma once

#include <Eigen/Dense>
#include <complex>

#include "entwig/errors.hpp"

namespace entwig {

using Complex = std::complex<double>;

/// Numerical guard thresholds shared across the library. All are
/// dimensionless and must lie in (0, 1).
struct Tolerances {
  double tail_tol = 1e-9;      // max coherent-state mass lost to truncation
  double herm_tol = 1e-9;      // max |M - M^dag| entry for Hermitian operators
  double eq_tol = 1e-9;        // identity-check tolerance (traces, normalization)
  double series_tol = 1e-12;   // Wigner series tail-term threshold
  double pure_cutoff = 1e-8;   // |eps - 1/2| below this counts as pure

  void validate() const;
};

/// Complex amplitude vector over the truncated number basis |0>..|N-1>.
struct FockVector {
  Eigen::VectorXcd a;

  int dim() const { return static_cast<int>(a.size()); }
  double norm2() const { return a.squaredNorm(); }
};

/// Dense operator on the truncated Fock space.
struct FieldOperator {
  Eigen::MatrixXcd m;

  int dim() const { return static_cast<int>(m.rows()); }
  Complex trace() const { return m.trace(); }
  /// max entry-wise deviation from the adjoint
  double herm_defect() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }
};

/// Truncation dimension that keeps the Poisson tail of a coherent state
/// of amplitude `beta_max` far below 1e-12: mean + 8*sqrt(mean) photons
/// plus fixed headroom.
int default_dim(double beta_max);

/// Tail mass a coherent state of amplitude beta loses when truncated to
/// `dim` levels (pure query, never throws on large tails).
double coherent_tail_mass(Complex beta, int dim);

/// |beta> = e^{-|beta|^2/2} sum_k beta^k/sqrt(k!) |k>, truncated to `dim`.
/// Throws TruncationError if the lost tail mass exceeds `tail_tol`.
FockVector coherent_state(Complex beta, int dim, double tail_tol = Tolerances{}.tail_tol);

/// <a|b> = sum_k conj(a_k) b_k
Complex inner(const FockVector& a, const FockVector& b);

/// D(alpha)|n>, computed in the truncated basis. The amplitudes below the
/// cutoff are exact; throws TruncationError when the mass lost above the
/// cutoff exceeds `tail_tol`.
FockVector displaced_number_state(Complex alpha, int n, int dim,
                                  double tail_tol = Tolerances{}.tail_tol);

/// M = |u><v|
FieldOperator op_from_dyad(const FockVector& u, const FockVector& v);

/// Walks the displaced-number ladder |alpha,0>, |alpha,1>, ... in the
/// truncated basis. Uses D(alpha) a^dag = (a^dag - conj(alpha)) D(alpha),
/// so each stored amplitude stays exact under truncation; only the mass
/// above the cutoff is missing. Callers that sum series against operators
/// supported well below the cutoff may keep stepping past the point where
/// the norm deficit grows.
class DisplacedLadder {
 public:
  DisplacedLadder(Complex alpha, int dim, double tail_tol = Tolerances{}.tail_tol);

  const FockVector& vec() const { return v_; }
  int n() const { return n_; }
  double norm_deficit() const { return 1.0 - v_.norm2(); }

  /// advance |alpha,n> -> |alpha,n+1>
  void step();

 private:
  FockVector v_;
  Complex alpha_;
  int n_ = 0;
};

}  // namespace entwig
