#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "entwig/wigner.hpp"
#include "oracles.hpp"

using namespace entwig;

namespace {

const double kPi = std::numbers::pi;

ModelParams model_point(double beta, double chit, int dim = 0) {
  ModelParams p;
  p.beta = beta;
  p.t = chit;
  p.dim = dim;
  return p;
}

FieldOperator model_entropy_op(const ModelParams& p) {
  return field_entropy_from_polynomial(build_joint(p));
}

}  // namespace

TEST_CASE("parity of the vacuum projector") {
  const int dim = 10;
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(dim, dim);
  proj(0, 0) = 1.0;
  const double w = wigner_series(FieldOperator{proj}, {0.0, 0.0}, model_point(0.0, 0.0, dim));
  CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("displaced vacuum parity pins the convention") {
  // rho_B at t=0 is |beta><beta|; at alpha = beta the bare parity sum is 1
  // (no 2/pi in the paper convention)
  const ModelParams p = model_point(1.0, 0.0);
  const JointState j = build_joint(p);
  const FieldOperator rho_b = reduce_field(j);
  const double w = wigner_series(rho_b, {1.0, 0.0}, p);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-9));

  const double w_std = wigner_series(rho_b, {1.0, 0.0}, p, WignerConvention::standard);
  CHECK(w_std == doctest::Approx(2.0 / kPi).epsilon(1e-9));
}

TEST_CASE("series matches the closed form at a generic point") {
  const ModelParams p = model_point(1.0, kPi / 2.0);
  const FieldOperator s_b = model_entropy_op(p);
  const PhasePoint a{0.3, 0.4};
  const double series = wigner_series(s_b, a, p);
  const double closed = wigner_closed_form(a, p);
  CHECK(std::abs(series - closed) < 1e-8);
}

TEST_CASE("closed form at the origin collapses to the envelope times F1") {
  // beta=1, chi*t=pi/2: sin(2 chi t)=0 and alpha=0, so the bracket reduces
  // to F1 + F2/(2 det) - F2/(2 det)
  const ModelParams p = model_point(1.0, kPi / 2.0);
  const AtomSpectralData sd = spectral_data(reduce_atom(build_joint(p)));
  const EntropyCoefficients ec = entropy_coeffs(sd, p.tol.pure_cutoff);
  const double expected = std::exp(-2.0) * ec.f1;
  CHECK(std::abs(wigner_closed_form({0.0, 0.0}, p) - expected) < 1e-12);
  const FieldOperator s_b = model_entropy_op(p);
  CHECK(std::abs(wigner_series(s_b, {0.0, 0.0}, p) - expected) < 1e-8);
}

TEST_CASE("even in alpha_y for real beta") {
  // truncation must hold the displacement headroom |beta| + |alpha|
  const ModelParams p = model_point(1.0, 0.7, default_dim(1.0 + 2.0));
  const FieldOperator s_b = model_entropy_op(p);
  for (double x : {-0.8, 0.2, 1.5}) {
    for (double y : {0.4, 1.1}) {
      CHECK(wigner_closed_form({x, y}, p) == wigner_closed_form({x, -y}, p));
      CHECK(std::abs(wigner_series(s_b, {x, y}, p) - wigner_series(s_b, {x, -y}, p)) <
            1e-10);
    }
  }
}

TEST_CASE("complex beta: series works, closed form refuses") {
  ModelParams p = model_point(0.0, 0.9);
  p.beta = Complex(0.7, 0.7);
  const FieldOperator s_b = model_entropy_op(p);
  CHECK(std::isfinite(wigner_series(s_b, {0.5, -0.3}, p)));
  CHECK_THROWS_AS(wigner_closed_form({0.5, -0.3}, p), ValidationError);
}

TEST_CASE("a non-decaying series trips the truncation guard") {
  const int dim = 20;
  const FieldOperator ident{Eigen::MatrixXcd::Identity(dim, dim)};
  CHECK_THROWS_AS(wigner_series(ident, {0.5, 0.0}, model_point(0.0, 0.0, dim)),
                  TruncationError);
}

TEST_CASE("grid: single point reproduces the point evaluations") {
  const ModelParams p = model_point(1.0, kPi / 2.0);
  const WignerGrid g = wigner_grid(p, {0.0}, {0.0}, WignerSource::both);
  CHECK((*g.series)(0, 0) == doctest::Approx(wigner_closed_form({0.0, 0.0}, p)).epsilon(1e-8));
  CHECK((*g.closed)(0, 0) == wigner_closed_form({0.0, 0.0}, g.meta));
  CHECK(g.max_abs_diff < 1e-8);
}

TEST_CASE("grid: routes agree and the truncation is converged") {
  const ModelParams p = model_point(1.0, kPi / 2.0);
  std::vector<double> xs, ys;
  for (int i = 0; i < 5; ++i) {
    xs.push_back(-2.0 + i * 1.0);
    ys.push_back(-2.0 + i * 1.0);
  }
  const WignerGrid g = wigner_grid(p, xs, ys, WignerSource::both);
  CHECK(g.max_abs_diff < 1e-8);

  // doubling the truncation moves nothing
  ModelParams doubled = p;
  doubled.dim = 2 * g.meta.dim;
  const WignerGrid g2 = wigner_grid(doubled, xs, ys, WignerSource::series);
  CHECK(oracles::max_abs((*g.series - *g2.series).cast<Complex>()) < 1e-9);
}

TEST_CASE("standard-convention surface integrates to the operator trace") {
  // trapezoid quadrature of (2/pi) sum_n (-1)^n <alpha,n|S_B|alpha,n> over the
  // phase plane recovers Tr(S_B) = -ln(det); a route-independent check of the
  // parity-kernel normalization
  const ModelParams p = model_point(0.5, 1.9);
  const int n = 29;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = -3.5 + 7.0 * i / (n - 1);
  const double h = 7.0 / (n - 1);

  const WignerGrid g = wigner_grid(p, grid, grid, WignerSource::series,
                                   WignerConvention::standard);
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      w *= (k == 0 || k == n - 1) ? 0.5 : 1.0;
      integral += w * (*g.series)(i, k);
    }
  }
  integral *= h * h;
  const AtomSpectralData sd = spectral_data(reduce_atom(build_joint(p)));
  CHECK(std::abs(integral + std::log(sd.det)) < 1e-7);
}

TEST_CASE("grid validates its inputs") {
  const ModelParams p = model_point(1.0, kPi / 2.0);
  CHECK_THROWS_AS(wigner_grid(p, {}, {0.0}, WignerSource::both), ValidationError);
  ModelParams imag = p;
  imag.beta = Complex(1.0, 0.5);
  CHECK_THROWS_AS(wigner_grid(imag, {0.0}, {0.0}, WignerSource::both), ValidationError);
  CHECK_NOTHROW(wigner_grid(imag, {0.0}, {0.0}, WignerSource::series));
}
