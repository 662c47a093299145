#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "entwig/field_entropy.hpp"
#include "entwig/qubit_entropy.hpp"
#include "entwig/spectral.hpp"
#include "oracles.hpp"

using namespace entwig;

namespace {

const double kPi = std::numbers::pi;

QubitOperator maximally_mixed() {
  return QubitOperator{0.5 * Eigen::Matrix2cd::Identity()};
}

QubitOperator equal_superposition() {
  Eigen::Matrix2cd m;
  m << 0.5, 0.5, 0.5, 0.5;
  return QubitOperator{m};
}

/// density matrix with a prescribed eps, via off-diagonal coherence
QubitOperator density_with_eps(double eps) {
  Eigen::Matrix2cd m;
  m << 0.5, eps, eps, 0.5;
  return QubitOperator{m};
}

AtomSpectralData data_with_eps(double eps) {
  AtomSpectralData sd;
  sd.delta = 0.0;
  sd.eps = eps;
  sd.det = 0.25 - eps * eps;
  sd.lambda_plus = 0.5 + eps;
  sd.lambda_minus = 0.5 - eps;
  return sd;
}

QubitOperator model_rho_a(double beta, double chit) {
  ModelParams p;
  p.beta = beta;
  p.t = chit;
  return reduce_atom(build_joint(p));
}

}  // namespace

TEST_CASE("spectral_data on the reference states") {
  {
    const AtomSpectralData sd = spectral_data(maximally_mixed());
    CHECK(sd.delta == 0.0);
    CHECK(sd.eps == 0.0);
    CHECK(sd.det == 0.25);
  }
  {
    const AtomSpectralData sd = spectral_data(equal_superposition());
    CHECK(sd.eps == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(sd.det) < 1e-15);
  }
  {
    const AtomSpectralData sd = spectral_data(model_rho_a(1.0, kPi / 2.0));
    const double eps_expected = 0.5 * std::exp(-2.0);  // 0.067667641...
    CHECK(std::abs(sd.delta) < 1e-12);
    CHECK(std::abs(sd.eps - eps_expected) < 1e-10);
    CHECK(std::abs(sd.det - (0.25 - eps_expected * eps_expected)) < 1e-10);
    CHECK(sd.det == doctest::Approx(0.245421).epsilon(1e-5));
    CHECK(std::abs(sd.lambda_plus + sd.lambda_minus - 1.0) == 0.0);
    CHECK(std::abs(sd.det - sd.lambda_plus * sd.lambda_minus) < 1e-14);
  }
}

TEST_CASE("spectral_data rejects non-density input and clamps rounding") {
  {
    Eigen::Matrix2cd m;
    m << 0.7, 0.0, 0.0, 0.7;  // trace 1.4
    CHECK_THROWS_AS(spectral_data(QubitOperator{m}), ValidationError);
  }
  {
    Eigen::Matrix2cd m;
    m << 0.5, 0.3, 0.1, 0.5;  // not Hermitian
    CHECK_THROWS_AS(spectral_data(QubitOperator{m}), ValidationError);
  }
  {
    // eps a hair above 1/2 from rounding: clamp to the boundary
    const double z = std::sqrt(0.1875 + 4e-10);
    Eigen::Matrix2cd m;
    m << 0.75, z, z, 0.25;
    const AtomSpectralData sd = spectral_data(QubitOperator{m});
    CHECK(sd.eps == 0.5);
    CHECK(sd.det == 0.0);
  }
  {
    // far outside [0,1]: rejected
    Eigen::Matrix2cd m;
    m << 0.75, 0.6, 0.6, 0.25;
    CHECK_THROWS_AS(spectral_data(QubitOperator{m}), ValidationError);
  }
}

TEST_CASE("G(n) values and limits") {
  const AtomSpectralData mixed = data_with_eps(0.0);
  const AtomSpectralData generic = data_with_eps(0.3);
  CHECK(g_coeff(mixed, 0) == 0.0);
  CHECK(g_coeff(generic, 0) == 0.0);
  CHECK(g_coeff(mixed, 1) == 1.0);
  CHECK(g_coeff(generic, 1) == 1.0);
  CHECK(g_coeff(mixed, 3) == doctest::Approx(0.75).epsilon(1e-15));

  // against the direct two-power form at the model eps
  const double eps = 0.0676676;
  const AtomSpectralData sd = data_with_eps(eps);
  for (int n : {2, 3, 4, 6, 8}) {
    const double direct =
        (std::pow(0.5 + eps, n) - std::pow(0.5 - eps, n)) / (2.0 * eps);
    CHECK(g_coeff(sd, n) == doctest::Approx(direct).epsilon(1e-13));
  }
  CHECK_THROWS_AS(g_coeff(sd, -1), ValidationError);
}

TEST_CASE("atom_power: closed form equals repeated multiplication") {
  const QubitOperator rho = model_rho_a(1.0, kPi / 2.0);
  CHECK(oracles::max_abs(atom_power(rho, 1).m - rho.m) < 1e-15);
  CHECK(oracles::max_abs(atom_power(rho, 2).m - rho.m * rho.m) < 1e-12);
  CHECK(oracles::max_abs(atom_power(rho, 6).m - oracles::mat_chain(rho.m, 6)) < 1e-11);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const QubitOperator r{oracles::random_density2(rng)};
    Eigen::Matrix2cd chain = r.m;
    for (int n = 1; n <= 8; ++n) {
      CHECK(oracles::max_abs(atom_power(r, n).m - chain) < 1e-10);
      chain = chain * r.m;
    }
  }
  CHECK_THROWS_AS(atom_power(rho, 0), ValidationError);
}

TEST_CASE("characteristic equation") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const QubitOperator r{oracles::random_density2(rng)};
    const AtomSpectralData sd = spectral_data(r);
    const Eigen::Matrix2cd lhs = r.m * r.m;
    const Eigen::Matrix2cd rhs = r.m - sd.det * Eigen::Matrix2cd::Identity();
    CHECK(oracles::max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("entropy coefficients") {
  {
    const EntropyCoefficients ec = entropy_coeffs(data_with_eps(0.0));
    CHECK(ec.regime == EntropyRegime::near_maximal);
    CHECK(ec.f1 == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(ec.f2 == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-14));
  }
  {
    // the defining property: f1*lambda + f2 = -ln(lambda) on both eigenvalues
    for (double eps : {0.0676676, 0.01, 0.2, 0.45}) {
      const EntropyCoefficients ec = entropy_coeffs(data_with_eps(eps));
      CHECK(ec.regime == EntropyRegime::regular);
      CHECK(ec.f1 <= 0.0);
      CHECK(std::abs(ec.f1 * (0.5 + eps) + ec.f2 + std::log(0.5 + eps)) < 1e-10);
      CHECK(std::abs(ec.f1 * (0.5 - eps) + ec.f2 + std::log(0.5 - eps)) < 1e-10);
    }
  }
  {
    // cutoff behavior: the flag fires within pure_cutoff of a pure state
    CHECK(entropy_coeffs(data_with_eps(0.499999), 1e-5).regime == EntropyRegime::near_pure);
    CHECK(entropy_coeffs(data_with_eps(0.5 - 5e-9)).regime == EntropyRegime::near_pure);
    // just outside the default cutoff the coefficients stay finite
    const EntropyCoefficients ec = entropy_coeffs(data_with_eps(0.499999));
    CHECK(ec.regime == EntropyRegime::regular);
    CHECK(std::isfinite(ec.f1));
    CHECK(std::isfinite(ec.f2));
  }
}

TEST_CASE("atom entropy operator") {
  {
    const QubitOperator s = atom_entropy_operator(maximally_mixed());
    CHECK(oracles::max_abs(s.m - std::log(2.0) * Eigen::Matrix2cd::Identity()) < 1e-14);
  }
  {
    const QubitOperator rho = model_rho_a(1.0, kPi / 2.0);
    const AtomSpectralData sd = spectral_data(rho);
    const QubitOperator s = atom_entropy_operator(rho);
    CHECK(s.herm_defect() < 1e-14);

    const auto spec = spectral::eig_hermitian(s.m);
    CHECK(std::abs(spec.eigenvalues[0] + std::log(sd.lambda_plus)) < 1e-10);
    CHECK(std::abs(spec.eigenvalues[1] + std::log(sd.lambda_minus)) < 1e-10);

    const Eigen::MatrixXcd neg_log =
        spectral::matrix_neg_log(rho.m, spectral::KernelPolicy::zero);
    CHECK(oracles::max_abs(s.m - neg_log) < 1e-10);
  }
  CHECK_THROWS_AS(atom_entropy_operator(equal_superposition()), NearPureError);
}

TEST_CASE("mean entropy") {
  CHECK(mean_atom_entropy(maximally_mixed()) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(mean_atom_entropy(equal_superposition()) == 0.0);

  const QubitOperator rho = model_rho_a(1.0, kPi / 2.0);
  const double eps = 0.5 * std::exp(-2.0);
  const double expected = -(0.5 + eps) * std::log(0.5 + eps) -
                          (0.5 - eps) * std::log(0.5 - eps);
  CHECK(std::abs(mean_atom_entropy(rho) - expected) < 1e-10);
  // frozen from the eigenvalue sum at lambda = 1/2 +- e^{-2}/2
  CHECK(expected == doctest::Approx(0.68396119905675965).epsilon(1e-12));
}

TEST_CASE("mean entropy equals the eigenvalue sum across the eps range") {
  for (int i = 0; i < 50; ++i) {
    const double eps = 0.01 + (0.49 - 0.01) * i / 49.0;
    const QubitOperator rho = density_with_eps(eps);
    const double expected = -(0.5 + eps) * std::log(0.5 + eps) -
                            (0.5 - eps) * std::log(0.5 - eps);
    CHECK(std::abs(mean_atom_entropy(rho) - expected) < 1e-10);
  }
}

TEST_CASE("entropy fluctuation") {
  CHECK(atom_entropy_fluctuation(maximally_mixed()) == 0.0);
  CHECK(atom_entropy_fluctuation(equal_superposition()) == 0.0);

  const QubitOperator rho = model_rho_a(1.0, kPi / 2.0);
  const QubitOperator s = atom_entropy_operator(rho);
  const double m1 = (rho.m * s.m).trace().real();
  const double m2 = (rho.m * s.m * s.m).trace().real();
  const double direct = std::sqrt(m2 - m1 * m1);
  CHECK(std::abs(atom_entropy_fluctuation(rho) - direct) < 1e-10);

  const AtomSpectralData sd = spectral_data(rho);
  const double analytic = std::abs(std::log(sd.lambda_minus / sd.lambda_plus)) *
                          std::sqrt(sd.lambda_plus * sd.lambda_minus);
  CHECK(std::abs(atom_entropy_fluctuation(rho) - analytic) < 1e-12);
}

TEST_CASE("fluctuation equals the moment oracle across the eps range") {
  for (int i = 0; i < 50; ++i) {
    const double eps = 0.01 + (0.49 - 0.01) * i / 49.0;
    const QubitOperator rho = density_with_eps(eps);
    const QubitOperator s = atom_entropy_operator(rho);
    const double m1 = (rho.m * s.m).trace().real();
    const double m2 = (rho.m * s.m * s.m).trace().real();
    const double direct = std::sqrt(std::max(0.0, m2 - m1 * m1));
    CHECK(std::abs(atom_entropy_fluctuation(rho) - direct) < 1e-10);
    CHECK(atom_entropy_fluctuation(rho) >= 0.0);
  }
}

TEST_CASE("atom inverse") {
  {
    const QubitOperator inv = atom_inverse(maximally_mixed());
    CHECK(oracles::max_abs(inv.m - 2.0 * Eigen::Matrix2cd::Identity()) < 1e-14);
  }
  {
    const QubitOperator rho = model_rho_a(1.0, kPi / 2.0);
    const AtomSpectralData sd = spectral_data(rho);
    const QubitOperator inv = atom_inverse(rho);

    Eigen::Matrix2cd sigma_y;
    sigma_y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    const Eigen::Matrix2cd spin_flip = sigma_y * rho.m.conjugate() * sigma_y / sd.det;
    CHECK(oracles::max_abs(inv.m - spin_flip) < 1e-12);
    CHECK(oracles::max_abs(rho.m * inv.m - Eigen::Matrix2cd::Identity()) < 1e-10);
  }
  CHECK_THROWS_AS(atom_inverse(equal_superposition()), NearPureError);
}

TEST_CASE("the log-of-purity form of the entropy operator holds as a matrix identity") {
  // S_A = ln(1 - rho_A) - ln(det) holds for trace-one 2x2 densities; checked
  // numerically at model points rather than assumed.
  for (double chit : {0.3, kPi / 2.0, 1.9}) {
    const QubitOperator rho = model_rho_a(1.0, chit);
    const AtomSpectralData sd = spectral_data(rho);
    const QubitOperator s = atom_entropy_operator(rho);
    const Eigen::Matrix2cd xi = Eigen::Matrix2cd::Identity() - rho.m;
    const Eigen::MatrixXcd log_xi =
        -spectral::matrix_neg_log(xi, spectral::KernelPolicy::zero);
    const Eigen::MatrixXcd rhs =
        log_xi - std::log(sd.det) * Eigen::MatrixXcd::Identity(2, 2);
    CHECK(oracles::max_abs(s.m - rhs) < 1e-10);
  }
}
