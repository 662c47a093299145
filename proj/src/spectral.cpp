#include "entwig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace entwig::spectral {

namespace {

using Complex = std::complex<double>;

double off_diagonal_norm(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  double sum = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) sum += 2.0 * std::norm(a(p, q));
  }
  return std::sqrt(sum);
}

}  // namespace

Spectrum eig_hermitian(const Eigen::MatrixXcd& m, double herm_tol) {
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.cols() != n) {
    throw ValidationError("eig_hermitian: matrix must be square and nonempty");
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol) {
    std::ostringstream ss;
    ss << "eig_hermitian: input deviates from Hermitian by " << defect;
    throw ValidationError(ss.str());
  }

  Eigen::MatrixXcd a = 0.5 * (m + m.adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  const double scale = a.norm();
  const double target = 1e-13 * scale;

  // Cyclic-by-row complex Jacobi. Each (p,q) rotation peels the phase off
  // a(p,q) and applies the real rotation that annihilates the pair; the
  // off-diagonal Frobenius norm decreases monotonically.
  const int max_sweeps = 100;
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    const double skip_below = target / (10.0 * n);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b <= skip_below) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / b;  // e^{i psi}

        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;

        // right-multiply by J: columns p, q
        const Eigen::VectorXcd col_p = a.col(p);
        const Eigen::VectorXcd col_q = std::conj(phase) * a.col(q);
        a.col(p) = c * col_p - s * col_q;
        a.col(q) = s * col_p + c * col_q;
        // left-multiply by J^dag: rows p, q
        const Eigen::RowVectorXcd row_p = a.row(p);
        const Eigen::RowVectorXcd row_q = phase * a.row(q);
        a.row(p) = c * row_p - s * row_q;
        a.row(q) = s * row_p + c * row_q;

        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        const Eigen::VectorXcd v_p = v.col(p);
        const Eigen::VectorXcd v_q = std::conj(phase) * v.col(q);
        v.col(p) = c * v_p - s * v_q;
        v.col(q) = s * v_p + c * v_q;
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > target) {
    throw std::runtime_error("eig_hermitian: Jacobi sweep limit reached without convergence");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int k) { return a(i, i).real() < a(k, k).real(); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]).real();
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  return out;
}

Eigen::MatrixXcd matrix_neg_log(const Eigen::MatrixXcd& m, KernelPolicy policy,
                                double eq_tol, double herm_tol) {
  const Spectrum s = eig_hermitian(m, herm_tol);
  const int n = static_cast<int>(s.eigenvalues.size());
  if (s.eigenvalues[0] < -eq_tol) {
    std::ostringstream ss;
    ss << "matrix_neg_log: eigenvalue " << s.eigenvalues[0] << " below -eq_tol; not PSD";
    throw ValidationError(ss.str());
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double lambda = s.eigenvalues[i];
    if (lambda <= kKernelCutoff) {
      if (policy == KernelPolicy::reject) {
        std::ostringstream ss;
        ss << "matrix_neg_log: eigenvalue " << lambda << " in the kernel (policy reject)";
        throw ValidationError(ss.str());
      }
      continue;  // kernel maps to zero
    }
    out.noalias() -=
        std::log(lambda) * (s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint());
  }
  return out;
}

}  // namespace entwig::spectral
