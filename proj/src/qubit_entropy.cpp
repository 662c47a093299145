#include "entwig/qubit_entropy.hpp"

#include <cmath>
#include <sstream>

namespace entwig {

namespace {

Eigen::Matrix2cd hermitize(const Eigen::Matrix2cd& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

AtomSpectralData spectral_data(const QubitOperator& rho, const Tolerances& tol) {
  if (rho.herm_defect() > tol.herm_tol) {
    std::ostringstream ss;
    ss << "spectral_data: input deviates from Hermitian by " << rho.herm_defect();
    throw ValidationError(ss.str());
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol.eq_tol) {
    std::ostringstream ss;
    ss << "spectral_data: trace " << tr << " deviates from 1 beyond eq_tol=" << tol.eq_tol;
    throw ValidationError(ss.str());
  }
  const Eigen::Matrix2cd h = hermitize(rho.m);
  AtomSpectralData sd;
  sd.delta = h(0, 0).real() - h(1, 1).real();
  double eps = std::sqrt(0.25 * sd.delta * sd.delta + std::norm(h(0, 1)));
  if (eps > 0.5) {
    if (eps > 0.5 + tol.eq_tol) {
      std::ostringstream ss;
      ss << "spectral_data: eps = " << eps << " > 1/2 + eq_tol; spectrum leaves [0,1]";
      throw ValidationError(ss.str());
    }
    eps = 0.5;
  }
  sd.eps = eps;
  sd.det = 0.25 - eps * eps;
  sd.lambda_plus = 0.5 + eps;
  sd.lambda_minus = 0.5 - eps;
  return sd;
}

double g_coeff(const AtomSpectralData& sd, int n) {
  if (n < 0) throw ValidationError("g_coeff: n must be >= 0");
  // Odd-binomial expansion of [(1/2+eps)^n - (1/2-eps)^n] / (2 eps):
  //   G(n) = sum_{m odd <= n} C(n,m) (1/2)^{n-m} eps^{m-1}.
  // Every term is nonnegative, so this is cancellation-free for all
  // eps in [0, 1/2] and reproduces the eps->0 limit n/2^{n-1} exactly.
  if (n == 0) return 0.0;
  const double eps2 = sd.eps * sd.eps;
  double term = static_cast<double>(n) * std::pow(0.5, n - 1);  // m = 1
  double sum = term;
  for (int m = 1; m + 2 <= n; m += 2) {
    term *= 4.0 * eps2 * static_cast<double>(n - m) * static_cast<double>(n - m - 1) /
            (static_cast<double>(m + 1) * static_cast<double>(m + 2));
    sum += term;
  }
  return sum;
}

QubitOperator atom_power(const QubitOperator& rho, int n, const Tolerances& tol) {
  if (n < 1) throw ValidationError("atom_power: n must be >= 1");
  const AtomSpectralData sd = spectral_data(rho, tol);
  const double gn = g_coeff(sd, n);
  const double gn1 = g_coeff(sd, n - 1);
  return QubitOperator{gn * rho.m - sd.det * gn1 * Eigen::Matrix2cd::Identity()};
}

EntropyCoefficients entropy_coeffs(const AtomSpectralData& sd, double pure_cutoff) {
  const double eps = sd.eps;
  if (std::abs(eps - 0.5) < pure_cutoff) {
    return {0.0, 0.0, EntropyRegime::near_pure};
  }
  EntropyCoefficients ec;
  if (eps < pure_cutoff) {
    // series of ln((1-2e)/(1+2e))/(2e); the dropped term is O(eps^6)
    const double e2 = eps * eps;
    ec.f1 = -(2.0 + (8.0 / 3.0) * e2 + (32.0 / 5.0) * e2 * e2);
    ec.regime = EntropyRegime::near_maximal;
  } else {
    ec.f1 = (std::log1p(-2.0 * eps) - std::log1p(2.0 * eps)) / (2.0 * eps);
    ec.regime = EntropyRegime::regular;
  }
  ec.f2 = -0.5 * (std::log(sd.det) + ec.f1);
  return ec;
}

QubitOperator atom_entropy_operator(const QubitOperator& rho, const Tolerances& tol) {
  const AtomSpectralData sd = spectral_data(rho, tol);
  const EntropyCoefficients ec = entropy_coeffs(sd, tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) {
    throw NearPureError("atom_entropy_operator: state is pure within pure_cutoff");
  }
  return QubitOperator{ec.f1 * rho.m + ec.f2 * Eigen::Matrix2cd::Identity()};
}

double mean_atom_entropy(const QubitOperator& rho, const Tolerances& tol) {
  const AtomSpectralData sd = spectral_data(rho, tol);
  const EntropyCoefficients ec = entropy_coeffs(sd, tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) return 0.0;
  return ec.f2 + ec.f1 * (1.0 - 2.0 * sd.det);
}

double atom_entropy_fluctuation(const QubitOperator& rho, const Tolerances& tol) {
  const AtomSpectralData sd = spectral_data(rho, tol);
  const EntropyCoefficients ec = entropy_coeffs(sd, tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) return 0.0;
  // |ln((1-2e)/(1+2e))| sqrt(det); the log ratio is 2 eps f1. Returned
  // nonnegative: the quantity is a standard deviation.
  return std::abs(2.0 * sd.eps * ec.f1) * std::sqrt(sd.det);
}

QubitOperator atom_inverse(const QubitOperator& rho, const Tolerances& tol) {
  const AtomSpectralData sd = spectral_data(rho, tol);
  if (sd.det <= tol.eq_tol) {
    std::ostringstream ss;
    ss << "atom_inverse: determinant " << sd.det << " is singular within eq_tol";
    throw NearPureError(ss.str());
  }
  Eigen::Matrix2cd sigma_y;
  sigma_y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const Eigen::Matrix2cd spin_flip = sigma_y * rho.m.conjugate() * sigma_y / sd.det;
  const Eigen::Matrix2cd purity = (Eigen::Matrix2cd::Identity() - rho.m) / sd.det;
  const double gap = (spin_flip - purity).cwiseAbs().maxCoeff();
  // the two forms differ by (tr(rho) - 1)/det exactly
  if (gap > tol.eq_tol * (1.0 + 1.0 / sd.det)) {
    std::ostringstream ss;
    ss << "atom_inverse: spin-flip and purity forms disagree by " << gap;
    throw ValidationError(ss.str());
  }
  return QubitOperator{purity};
}

}  // namespace entwig
