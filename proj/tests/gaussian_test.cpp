#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qcournot/game.hpp"
#include "qcournot/gaussian.hpp"
#include "oracle_values.hpp"

using namespace qcournot;
namespace g = qcournot::gaussian;

TEST_CASE("squeezer matrices act on the expected quadratures") {
  double gamma = 0.7;
  Eigen::Matrix4d m1 = g::single_mode_squeeze(1, gamma).matrix();
  CHECK(m1(0, 0) == doctest::Approx(std::exp(-gamma)).epsilon(1e-15));
  CHECK(m1(1, 1) == doctest::Approx(std::exp(gamma)).epsilon(1e-15));
  CHECK(m1(2, 2) == 1.0);
  CHECK(m1(3, 3) == 1.0);
  CHECK(m1.cwiseAbs().sum() ==
        doctest::Approx(std::exp(-gamma) + std::exp(gamma) + 2.0)
            .epsilon(1e-15));

  Eigen::Matrix4d m12 = g::two_mode_squeeze(gamma).matrix();
  double c = std::cosh(gamma), s = std::sinh(gamma);
  CHECK(m12(0, 0) == doctest::Approx(c).epsilon(1e-15));
  CHECK(m12(0, 2) == doctest::Approx(-s).epsilon(1e-15));
  CHECK(m12(1, 1) == doctest::Approx(c).epsilon(1e-15));
  CHECK(m12(1, 3) == doctest::Approx(s).epsilon(1e-15));
  CHECK(m12(2, 0) == doctest::Approx(-s).epsilon(1e-15));
  CHECK(m12(3, 1) == doctest::Approx(s).epsilon(1e-15));

  CHECK_THROWS_AS(g::single_mode_squeeze(3, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(g::two_mode_squeeze(-0.1), std::domain_error);
}

TEST_CASE("transforms compose and invert symplectically") {
  EntangleParams p(1.3, -0.7, 2.1);
  g::SymplecticTransform j = g::entangler_transform(p);
  Eigen::Matrix4d omega = g::symplectic_form();
  Eigen::Matrix4d m = j.matrix();
  CHECK((m.transpose() * omega * m - omega).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((j.inverse().matrix() * m - Eigen::Matrix4d::Identity())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);

  // Rebuilding from the raw matrix keeps the same map.
  g::SymplecticTransform copy = g::SymplecticTransform::from_matrix(m);
  CHECK((copy.matrix() - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("from_matrix rejects non-symplectic input") {
  Eigen::Matrix4d bad = Eigen::Matrix4d::Identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(g::SymplecticTransform::from_matrix(bad),
                  std::invalid_argument);
}

TEST_CASE("entangling map momentum row matches the reference point") {
  Eigen::Matrix4d m = g::entangler_transform({1.0, 0.0, 0.5}).matrix();
  CHECK(m(1, 0) == 0.0);
  CHECK(m(1, 2) == 0.0);
  CHECK(m(1, 1) == doctest::Approx(testvals::kAsymP1RowP1).epsilon(1e-14));
  CHECK(m(1, 3) == doctest::Approx(testvals::kAsymP1RowP2).epsilon(1e-14));
}

TEST_CASE("entangled vacuum variances match the closed forms") {
  EntangleParams p(1.0, 0.0, 0.5);
  g::GaussianTwoModeState state = g::entangled_vacuum(p);
  g::ReducedModeStats r1 = g::reduced_mode_stats(state, 1);
  CHECK(r1.var_x == doctest::Approx(testvals::kAsymVarX1).epsilon(1e-13));
  CHECK(std::abs(r1.cov_xp) <= 1e-12);

  double c = std::cosh(0.5), s = std::sinh(0.5);
  double expect_p = 0.5 * (std::exp(2.0) * c * c + s * s);
  CHECK(r1.var_p == doctest::Approx(expect_p).epsilon(1e-13));
  CHECK_THROWS_AS(g::reduced_mode_stats(state, 0), std::invalid_argument);
}

TEST_CASE("final state is the displaced vacuum with closed-form means") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> gam(-2.0, 2.0);
  std::uniform_real_distribution<double> ent(0.0, 3.0);
  std::uniform_real_distribution<double> move(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    EntangleParams p(gam(rng), gam(rng), ent(rng));
    StrategyProfile x{move(rng), move(rng)};
    g::GaussianTwoModeState fs = g::final_state(p, x);
    QuantityPair q = game::quantities(p, x);
    CHECK(std::abs(fs.mean(0) - q.q1) <= 1e-10);
    CHECK(std::abs(fs.mean(2) - q.q2) <= 1e-10);
    CHECK(std::abs(fs.mean(1)) <= 1e-10);
    CHECK(std::abs(fs.mean(3)) <= 1e-10);
    auto nus = g::symplectic_eigenvalues(fs.cov);
    CHECK(std::abs(nus[0] - 0.5) <= 1e-10);
    CHECK(std::abs(nus[1] - 0.5) <= 1e-10);
  }
  CHECK_THROWS_AS(g::final_state({0.0, 0.0, 1.0}, {-0.1, 0.0}),
                  std::domain_error);
}

TEST_CASE("symplectic eigenvalues of a decoupled state are the mode radii") {
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  cov.diagonal() << 2.0, 2.0, 0.5, 0.5;
  auto nus = g::symplectic_eigenvalues(cov);
  CHECK(nus[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(nus[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("wavefunction exponent matches the reference point") {
  g::WavefunctionParams w = g::wavefunction_params({0.0, 0.0, 1.0});
  CHECK(w.alpha == doctest::Approx(testvals::kWavefunAlpha).epsilon(1e-14));
  CHECK(w.beta == doctest::Approx(testvals::kWavefunAlpha).epsilon(1e-14));
  CHECK(w.gamma_c ==
        doctest::Approx(testvals::kWavefunGammaC).epsilon(1e-14));
  CHECK(w.lambda12 == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
}

TEST_CASE("wavefunction exponent inverts to the position covariance") {
  for (EntangleParams p :
       {EntangleParams(1.0, 0.0, 0.5), EntangleParams(-0.6, 0.8, 1.2)}) {
    g::WavefunctionParams w = g::wavefunction_params(p);
    Eigen::Matrix2d a;
    a << w.alpha, w.gamma_c, w.gamma_c, w.beta;
    Eigen::Matrix2d half_inv = 0.5 * a.inverse();
    g::GaussianTwoModeState state = g::entangled_vacuum(p);
    CHECK(std::abs(half_inv(0, 0) - state.cov(0, 0)) <= 1e-10);
    CHECK(std::abs(half_inv(0, 1) - state.cov(0, 2)) <= 1e-10);
    CHECK(std::abs(half_inv(1, 1) - state.cov(2, 2)) <= 1e-10);

    // Its determinant carries the squeezing volume.
    double det = half_inv.determinant();
    double expect =
        0.25 * std::exp(-2.0 * (p.gamma1() + p.gamma2()));
    CHECK(det == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("entropy from the symplectic eigenvalue is stable and exact") {
  CHECK(g::vn_entropy_from_nu(0.5) == 0.0);
  CHECK(g::vn_entropy_from_nu(std::cosh(2.0) / 2.0) ==
        doctest::Approx(testvals::kEntropyG12One).epsilon(1e-14));
  CHECK_THROWS_AS(g::vn_entropy_from_nu(0.4), std::domain_error);

  // Just above the vacuum eigenvalue the entropy is tiny but positive.
  double near = g::vn_entropy_from_nu(0.5 + 1e-12);
  CHECK(near > 0.0);
  CHECK(near < 1e-9);

  // Large-argument agreement with the logarithmic closed form.
  for (double eta : {1e-3, 1.0, 50.0}) {
    double nu = std::hypot(eta, 1.0) / 2.0;
    CHECK(std::abs(g::vn_entropy_from_nu(nu) - game::entropy_eta_form(eta)) <=
          1e-9);
  }
}
