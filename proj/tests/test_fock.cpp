#include "support.hpp"

using namespace testing_support;
using ps::cplx;
using ps::Mat;
using ps::Vec;
namespace fk = ps::fock;

namespace {

// direct series for <n|D(eta)|m>, n >= m, in long double
cplx displacement_series(int n, int m, cplx eta) {
  const int l = n - m;
  long double re = 0, im = 0;
  const std::complex<long double> e(eta.real(), eta.imag());
  for (int k = 0; k <= m; ++k) {
    long double lf = 0.5L * (std::lgamma((long double)n + 1) + std::lgamma((long double)m + 1)) -
                     std::lgamma((long double)k + l + 1) - std::lgamma((long double)k + 1) -
                     std::lgamma((long double)m - k + 1);
    std::complex<long double> term = std::pow(e, k + l) * std::pow(std::conj(e), k) * std::exp(lf);
    if (k % 2) term = -term;
    re += term.real();
    im += term.imag();
  }
  long double pref = std::exp(-0.5L * std::norm(e));
  return cplx(static_cast<double>(re * pref), static_cast<double>(im * pref));
}

}  // namespace

TEST(Ladder, ActionOnNumberStates) {
  ps::CMat a = fk::annihilation(6);
  for (int n = 1; n < 6; ++n) {
    ps::CVec v = a * fk::number_state(n, 6).amps;
    EXPECT_NEAR(std::abs(v(n - 1)), std::sqrt(n), 1e-15);
  }
}

TEST(CoherentVector, EigenvectorOfLowering) {
  const cplx alpha(0.7, -1.1);
  auto c = fk::coherent_vector(alpha, 50);
  ps::CVec ac = fk::annihilation(50) * c.amps;
  EXPECT_LE((ac.head(49) - alpha * c.amps.head(49)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(c.amps.norm(), 1.0, 1e-15);
}

TEST(CoherentVector, OverlapMatchesClosedForm) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  for (int trial = 0; trial < 20; ++trial) {
    cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    cplx got = fk::overlap(fk::coherent_vector(a, 60), fk::coherent_vector(b, 60));
    EXPECT_LE(std::abs(got - fk::coherent_overlap(a, b)), 1e-12);
  }
  EXPECT_NEAR(std::norm(fk::coherent_overlap(0.0, cplx(1.0, 1.0))), std::exp(-2.0), 1e-15);
}

TEST(CoherentVector, TruncationIsReported) {
  EXPECT_TRUE(throws_kind([] { fk::coherent_vector(cplx(3.0, 0.0), 10); }, ps::ErrorKind::Truncation));
}

TEST(CoherentVector, MomentsMatchGaussianCoherentState) {
  const cplx alpha(1.0, 1.0);
  auto g = fk::covariance_from_fock(fk::coherent_vector(alpha, 60));
  EXPECT_TRUE(near(g.mean(), ps::coherent(alpha).mean(), 1e-12));
  EXPECT_TRUE(near(g.cov(), Mat::Identity(2, 2), 1e-11));
}

TEST(NumberState, CovarianceIsTwoNPlusOne) {
  for (int n : {0, 1, 4}) {
    auto g = fk::covariance_from_fock(fk::number_state(n, 10));
    EXPECT_TRUE(near(g.cov(), Mat((2.0 * n + 1.0) * Mat::Identity(2, 2)), 1e-14));
  }
}

TEST(Displacement, ClosedFormAgreesWithDirectSeries) {
  for (cplx eta : {cplx(0.3, 0.2), cplx(-1.0, 0.5), cplx(1.2, -1.5)})
    for (int n = 0; n < 25; ++n)
      for (int m = 0; m <= n; ++m)
        EXPECT_LE(std::abs(fk::displacement_element(n, m, eta) - displacement_series(n, m, eta)), 1e-12)
            << n << "," << m;
}

TEST(Displacement, DiagonalIsLaguerre) {
  const cplx eta(0.8, 0.6);
  for (int n = 0; n < 10; ++n) {
    double x = std::norm(eta);
    // explicit polynomial L_n(x) = sum_k (-1)^k C(n, k) x^k / k!
    double l = 0;
    for (int k = 0; k <= n; ++k)
      l += ((k % 2) ? -1.0 : 1.0) * std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                                             std::lgamma(k + 1.0)) *
           std::pow(x, k);
    EXPECT_NEAR(fk::displacement_element(n, n, eta).real(), std::exp(-x / 2) * l, 1e-13);
    EXPECT_NEAR(fk::displacement_element(n, n, eta).imag(), 0.0, 1e-15);
  }
}

TEST(Displacement, SelfCheckAndGroupLaw) {
  const int dim = 60;
  const cplx eta(1.3, -0.9);
  ps::CMat d = fk::displacement_matrix(eta, dim);
  ps::CMat dm = fk::displacement_matrix(-eta, dim);
  const int low = 25;
  ps::CMat prod = (d * dm).topLeftCorner(low, low);
  EXPECT_LE((prod - ps::CMat::Identity(low, low)).cwiseAbs().maxCoeff(), 1e-9);
  ps::CMat uu = (d.adjoint() * d).topLeftCorner(low, low);
  EXPECT_LE((uu - ps::CMat::Identity(low, low)).cwiseAbs().maxCoeff(), 1e-9);
  // D(eta)|0> = |eta>
  ps::CVec col = d.col(0);
  EXPECT_LE((col - fk::coherent_vector(eta, dim).amps).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Displacement, ConjugatesLoweringOperator) {
  const int dim = 60, low = 20;
  const cplx eta(0.5, 0.4);
  ps::CMat d = fk::displacement_matrix(eta, dim);
  ps::CMat a = fk::annihilation(dim);
  ps::CMat lhs = (d.adjoint() * a * d).topLeftCorner(low, low);
  ps::CMat rhs = (a + eta * ps::CMat::Identity(dim, dim)).topLeftCorner(low, low);
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SqueezedVector, CovarianceMatchesGaussian) {
  for (double r : {0.3, 0.8, 1.2})
    for (double theta : {0.0, 0.9, 2.2}) {
      auto v = fk::squeezed_vacuum_vector(r, theta, 200);
      auto g = fk::covariance_from_fock(v);
      EXPECT_TRUE(near(g.cov(), ps::squeezed_vacuum(r, theta).cov(), 1e-9));
    }
  EXPECT_TRUE(throws_kind([] { fk::squeezed_vacuum_vector(1.5, 0.0, 20); }, ps::ErrorKind::Truncation));
}

TEST(TmsvVector, ReducedStateIsThermalWithDoubledParameter) {
  const double r = 0.6;
  auto v = fk::tmsv_vector(r, 0.4, 80);
  auto rho = fk::reduced_density(v, 0);
  const double t2 = std::tanh(r) * std::tanh(r);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(rho.rho(n, n).real(), std::pow(t2, n) * (1 - t2), 1e-14);
  EXPECT_NEAR(fk::fock_entropy(rho), ps::mode_entropy(std::cosh(2 * r)), 1e-12);
  EXPECT_NEAR(fk::fock_entropy(fk::reduced_density(v, 1)), fk::fock_entropy(rho), 1e-12);
  EXPECT_TRUE(throws_kind([] { fk::tmsv_vector(2.0, 0.0, 10); }, ps::ErrorKind::Truncation));
}

TEST(ThermalDensity, EntropyMatchesModeEntropy) {
  for (double nu : {1.0, 1.5, 2.0, 5.0}) {
    auto rho = fk::thermal_density(fk::nbar_from_nu(nu), 200);
    EXPECT_NEAR(fk::fock_entropy(rho), ps::mode_entropy(nu), 1e-10);
    EXPECT_TRUE(near(fk::covariance_from_fock(rho).cov(), Mat(nu * Mat::Identity(2, 2)), 1e-10));
  }
  EXPECT_TRUE(throws_kind([] { fk::thermal_density(20.0, 50); }, ps::ErrorKind::Truncation));
}

TEST(EmbedRelativeMode, CoupledGroundStateMatchesGaussian) {
  for (double lambda : {0.1, 0.75, 2.0}) {
    const double al = std::sqrt(1 + 4 * lambda);
    auto rel = fk::squeezed_vacuum_vector(0.5 * std::log(al), 0.0, 60);
    auto psi = fk::embed_relative_mode(rel);
    EXPECT_NEAR(psi.amps.norm(), 1.0, 1e-12);
    auto g = ps::normal_mode_ground_state(ps::coupled_oscillators(1, 1, lambda));
    EXPECT_TRUE(near(fk::covariance_from_fock(psi).cov(), g.cov(), 1e-10));
    EXPECT_NEAR(fk::fock_entropy(fk::reduced_density(psi, 0)), ps::entanglement_entropy(g, {0}).total, 1e-9);
  }
}

TEST(FockEntropy, PureStateIsZero) {
  EXPECT_NEAR(fk::fock_entropy(fk::density(fk::coherent_vector(cplx(0.5, 0.5), 30))), 0.0, 1e-12);
  EXPECT_NEAR(fk::fock_entropy(fk::thermal_density(1.0, 80), ps::LogBase::Two),
              ps::mode_entropy(3.0, ps::LogBase::Two), 1e-10);
}
