#include "entwig/fock.hpp"

#include <cmath>
#include <sstream>

namespace entwig {

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      std::ostringstream ss;
      ss << "tolerance " << name << " = " << v << " must lie in (0, 1)";
      throw ValidationError(ss.str());
    }
  };
  check(tail_tol, "tail_tol");
  check(herm_tol, "herm_tol");
  check(eq_tol, "eq_tol");
  check(series_tol, "series_tol");
  check(pure_cutoff, "pure_cutoff");
}

int default_dim(double beta_max) {
  const double b = std::abs(beta_max);
  return static_cast<int>(std::ceil(b * b + 8.0 * b + 20.0));
}

namespace {

// Amplitudes built by the running product amp_k = amp_{k-1} * beta / sqrt(k);
// beta^k and k! would each overflow long before the product does.
Eigen::VectorXcd coherent_amplitudes(Complex beta, int dim) {
  Eigen::VectorXcd a(dim);
  Complex amp = std::exp(-0.5 * std::norm(beta));
  for (int k = 0; k < dim; ++k) {
    a[k] = amp;
    amp *= beta / std::sqrt(static_cast<double>(k + 1));
  }
  return a;
}

}  // namespace

double coherent_tail_mass(Complex beta, int dim) {
  if (dim < 1) throw ValidationError("coherent_tail_mass: dim must be >= 1");
  const double captured = coherent_amplitudes(beta, dim).squaredNorm();
  return std::max(0.0, 1.0 - captured);
}

FockVector coherent_state(Complex beta, int dim, double tail_tol) {
  if (dim < 1) throw ValidationError("coherent_state: dim must be >= 1");
  FockVector v{coherent_amplitudes(beta, dim)};
  const double tail = std::max(0.0, 1.0 - v.norm2());
  if (tail > tail_tol) {
    std::ostringstream ss;
    ss << "coherent_state: truncation at dim=" << dim << " loses tail mass " << tail
       << " > tail_tol=" << tail_tol << " for |beta|=" << std::abs(beta);
    throw TruncationError(ss.str());
  }
  return v;
}

Complex inner(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream ss;
    ss << "inner: dimension mismatch " << a.dim() << " vs " << b.dim();
    throw ValidationError(ss.str());
  }
  return a.a.dot(b.a);
}

DisplacedLadder::DisplacedLadder(Complex alpha, int dim, double tail_tol)
    : v_{coherent_state(alpha, dim, tail_tol).a}, alpha_(alpha) {}

void DisplacedLadder::step() {
  // |alpha,n+1> = (a^dag - conj(alpha)) |alpha,n> / sqrt(n+1), entry-wise:
  //   w_k = (sqrt(k) v_{k-1} - conj(alpha) v_k) / sqrt(n+1)
  // Each w_k depends only on lower-index entries, so the truncated
  // amplitudes are the exact ones.
  const int dim = v_.dim();
  const double inv = 1.0 / std::sqrt(static_cast<double>(n_ + 1));
  const Complex ac = std::conj(alpha_);
  Eigen::VectorXcd w(dim);
  w[0] = -ac * v_.a[0] * inv;
  for (int k = 1; k < dim; ++k) {
    w[k] = (std::sqrt(static_cast<double>(k)) * v_.a[k - 1] - ac * v_.a[k]) * inv;
  }
  v_.a.swap(w);
  ++n_;
}

FockVector displaced_number_state(Complex alpha, int n, int dim, double tail_tol) {
  if (n < 0 || n >= dim) {
    std::ostringstream ss;
    ss << "displaced_number_state: need 0 <= n < dim, got n=" << n << ", dim=" << dim;
    throw ValidationError(ss.str());
  }
  DisplacedLadder ladder(alpha, dim, tail_tol);
  for (int k = 0; k < n; ++k) ladder.step();
  const double deficit = ladder.norm_deficit();
  if (deficit > tail_tol) {
    std::ostringstream ss;
    ss << "displaced_number_state: norm deficit " << deficit << " > tail_tol=" << tail_tol
       << " for |alpha|=" << std::abs(alpha) << ", n=" << n << ", dim=" << dim;
    throw TruncationError(ss.str());
  }
  return ladder.vec();
}

FieldOperator op_from_dyad(const FockVector& u, const FockVector& v) {
  if (u.dim() != v.dim()) {
    std::ostringstream ss;
    ss << "op_from_dyad: dimension mismatch " << u.dim() << " vs " << v.dim();
    throw ValidationError(ss.str());
  }
  return FieldOperator{u.a * v.a.adjoint()};
}

}  // namespace entwig
