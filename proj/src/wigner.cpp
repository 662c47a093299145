#include "entwig/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace entwig {

double wigner_series(const FieldOperator& op, PhasePoint a, const ModelParams& p,
                     WignerConvention conv) {
  p.tol.validate();
  if (op.herm_defect() > p.tol.herm_tol) {
    std::ostringstream ss;
    ss << "wigner_series: operator deviates from Hermitian by " << op.herm_defect();
    throw ValidationError(ss.str());
  }
  const int dim = op.dim();
  DisplacedLadder ladder(a.alpha(), dim, p.tol.tail_tol);

  // sum_n (-1)^n <alpha,n|op|alpha,n>. The ladder amplitudes below the
  // cutoff are exact, so each term is the exact parity-series term of the
  // truncated operator; convergence is judged by the term magnitudes.
  Complex sum = 0.0;
  int small_run = 0;
  double sign = 1.0;
  for (int n = 0; n < dim; ++n) {
    const Eigen::VectorXcd& v = ladder.vec().a;
    const Complex term = v.dot(op.m * v);
    sum += sign * term;
    sign = -sign;
    if (std::abs(term) < p.tol.series_tol) {
      if (++small_run >= 5 && n >= 1) break;
    } else {
      small_run = 0;
    }
    if (n + 1 < dim) ladder.step();
  }
  if (small_run == 0) {
    std::ostringstream ss;
    ss << "wigner_series: tail term still above series_tol=" << p.tol.series_tol
       << " at the truncation dim=" << dim << "; enlarge dim";
    throw TruncationError(ss.str());
  }
  if (std::abs(sum.imag()) > 1e-10) {
    std::ostringstream ss;
    ss << "wigner_series: imaginary residue " << sum.imag() << " exceeds 1e-10";
    throw ValidationError(ss.str());
  }
  const double factor = conv == WignerConvention::standard ? 2.0 / std::numbers::pi : 1.0;
  return factor * sum.real();
}

double wigner_closed_form(PhasePoint a, const ModelParams& p, WignerConvention conv) {
  p.validate();
  if (p.beta.imag() != 0.0) {
    throw ValidationError("wigner_closed_form: requires real beta (the closed form is "
                          "derived for a real coherent amplitude); use the series route");
  }
  const double beta = p.beta.real();
  const double theta = p.chit();

  AtomSpectralData sd;
  sd.delta = 0.0;
  sd.eps = std::min(0.5, 0.5 * std::exp(-beta * beta * (1.0 - std::cos(2.0 * theta))));
  sd.det = 0.25 - sd.eps * sd.eps;
  sd.lambda_plus = 0.5 + sd.eps;
  sd.lambda_minus = 0.5 - sd.eps;
  const EntropyCoefficients ec = entropy_coeffs(sd, p.tol.pure_cutoff);
  if (ec.regime == EntropyRegime::near_pure) {
    throw NearPureError("wigner_closed_form: state is pure within pure_cutoff");
  }

  const double envelope_arg =
      -2.0 * beta * beta - 2.0 * (a.x * a.x + a.y * a.y) + 4.0 * beta * a.x * std::cos(theta);
  const double h = 4.0 * beta * a.y * std::sin(theta);
  // e^{arg} cosh(h) with the exponentials merged, so neither factor
  // overflows on its own
  const double envelope_cosh = 0.5 * (std::exp(envelope_arg + h) + std::exp(envelope_arg - h));
  const double half_ratio = ec.f2 / (2.0 * sd.det);
  const double oscillation =
      std::cos(2.0 * beta * (beta * std::sin(2.0 * theta) - 2.0 * a.x * std::sin(theta)));

  const double w = (ec.f1 + half_ratio) * envelope_cosh -
                   half_ratio * std::exp(envelope_arg) * oscillation;
  const double factor = conv == WignerConvention::standard ? 2.0 / std::numbers::pi : 1.0;
  return factor * w;
}

WignerGrid wigner_grid(const ModelParams& p, const std::vector<double>& xs,
                       const std::vector<double>& ys, WignerSource source,
                       WignerConvention conv) {
  p.validate();
  if (xs.empty() || ys.empty()) throw ValidationError("wigner_grid: grid must be nonempty");

  double max_x = 0.0, max_y = 0.0;
  for (double x : xs) max_x = std::max(max_x, std::abs(x));
  for (double y : ys) max_y = std::max(max_y, std::abs(y));
  const double reach = std::abs(p.beta) + std::hypot(max_x, max_y);

  ModelParams run = p;
  run.dim = p.dim > 0 ? p.dim : default_dim(reach);

  WignerGrid grid;
  grid.xs = xs;
  grid.ys = ys;
  grid.meta = run;
  grid.convention = conv;

  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  const bool want_series = source != WignerSource::closed;
  const bool want_closed = source != WignerSource::series;

  if (want_closed && run.beta.imag() != 0.0) {
    throw ValidationError("wigner_grid: the closed-form route requires real beta");
  }

  if (want_series) {
    const FieldOperator s_b = field_entropy_from_polynomial(build_joint(run));
    Eigen::MatrixXd vals(nx, ny);
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < ny; ++k) {
        vals(i, k) = wigner_series(s_b, {xs[i], ys[k]}, run, conv);
      }
    }
    grid.series = std::move(vals);
  }
  if (want_closed) {
    Eigen::MatrixXd vals(nx, ny);
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < ny; ++k) {
        vals(i, k) = wigner_closed_form({xs[i], ys[k]}, run, conv);
      }
    }
    grid.closed = std::move(vals);
  }
  if (grid.series && grid.closed) {
    grid.max_abs_diff = (*grid.series - *grid.closed).cwiseAbs().maxCoeff();
  }
  return grid;
}

}  // namespace entwig
