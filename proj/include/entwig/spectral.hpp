#pragma once

#include <Eigen/Dense>

#include "entwig/errors.hpp"

namespace entwig::spectral {

/// Eigenvalues below this are treated as the kernel by matrix_neg_log.
inline constexpr double kKernelCutoff = 1e-10;

/// Full Hermitian eigensystem; eigenvalues ascending, eigenvectors the
/// matching orthonormal columns.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

enum class KernelPolicy { zero, reject };

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||A||_F. Kept deliberately free of the closed-form algebra it
/// is used to check elsewhere in the library. Throws ValidationError if
/// the input deviates from Hermitian by more than herm_tol.
Spectrum eig_hermitian(const Eigen::MatrixXcd& m, double herm_tol = 1e-9);

/// -ln(m) on the support of a PSD matrix:
///   sum_{lambda > kKernelCutoff} (-ln lambda) v v^dag.
/// Eigenvalues in [-eq_tol, kKernelCutoff] are mapped to zero under
/// KernelPolicy::zero and rejected under KernelPolicy::reject; anything
/// below -eq_tol is an error.
Eigen::MatrixXcd matrix_neg_log(const Eigen::MatrixXcd& m, KernelPolicy policy,
                                double eq_tol = 1e-9, double herm_tol = 1e-9);

}  // namespace entwig::spectral
