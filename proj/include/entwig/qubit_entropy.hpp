#pragma once

#include "entwig/model.hpp"

namespace entwig {

/// Where a qubit state sits relative to the eps = |lambda - 1/2| scale:
/// regular states admit finite entropy-operator coefficients, near_pure
/// states do not (the operator diverges), near_maximal states need the
/// series limits of G(n) and F1 instead of the 0/0 closed forms.
enum class EntropyRegime { regular, near_pure, near_maximal };

/// Spectral summary of a qubit density matrix:
///   delta = rho00 - rho11,   eps = sqrt(delta^2/4 + |rho01|^2),
///   det   = 1/4 - eps^2,     lambda_{+,-} = 1/2 +- eps.
struct AtomSpectralData {
  double delta = 0.0;
  double eps = 0.0;
  double det = 0.25;
  double lambda_plus = 0.5;
  double lambda_minus = 0.5;
};

/// Coefficients of the linear form S_A = f1 * rho_A + f2 * 1:
///   f1 = ln((1-2eps)/(1+2eps)) / (2eps)       (-> -2 as eps -> 0)
///   f2 = -(ln(det) + f1) / 2
struct EntropyCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
  EntropyRegime regime = EntropyRegime::regular;
};

/// Validates that rho is a density matrix (Hermitian within herm_tol,
/// trace 1 within eq_tol, spectrum in [0,1] within eq_tol) and extracts
/// the spectral data. eps is clamped into [0, 1/2] when within eq_tol of
/// the bounds.
AtomSpectralData spectral_data(const QubitOperator& rho, const Tolerances& tol = {});

/// G(n) = [ (1/2+eps)^n - (1/2-eps)^n ] / (2 eps), with the eps->0 limit
/// n/2^{n-1}. Evaluated as the (finite, all-positive) odd-binomial sum,
/// which is cancellation-free for every eps in [0, 1/2].
double g_coeff(const AtomSpectralData& sd, int n);

/// rho_A^n = G(n) rho_A - det G(n-1) 1, n >= 1. Matches the n-fold
/// product; the 2x2 characteristic equation collapses every power onto
/// span{rho, 1}.
QubitOperator atom_power(const QubitOperator& rho, int n, const Tolerances& tol = {});

/// F1/F2 with regime detection. |eps - 1/2| < pure_cutoff flags near_pure
/// and returns zeroed coefficients (callers must branch); eps < pure_cutoff
/// evaluates the series limits and flags near_maximal.
EntropyCoefficients entropy_coeffs(const AtomSpectralData& sd,
                                   double pure_cutoff = Tolerances{}.pure_cutoff);

/// S_A = F1 rho_A + F2 1, the operator whose expectation in rho_A is the
/// von Neumann entropy; eigenvalues -ln(1/2 +- eps).
/// Throws NearPureError in the near_pure regime.
QubitOperator atom_entropy_operator(const QubitOperator& rho, const Tolerances& tol = {});

/// <S_A> = F2 + F1 (1 - 2 det) = -sum lambda ln lambda.
/// Returns 0 in the near_pure regime.
double mean_atom_entropy(const QubitOperator& rho, const Tolerances& tol = {});

/// sqrt(<S_A^2> - <S_A>^2) = |ln((1-2eps)/(1+2eps))| sqrt(det).
/// Returns 0 in the near_pure regime.
double atom_entropy_fluctuation(const QubitOperator& rho, const Tolerances& tol = {});

/// rho_A^{-1}, computed both as the spin-flip form sigma_y rho* sigma_y / det
/// and as the purity form (1 - rho_A) / det; the two must agree.
/// Throws NearPureError when det <= eq_tol.
QubitOperator atom_inverse(const QubitOperator& rho, const Tolerances& tol = {});

}  // namespace entwig
