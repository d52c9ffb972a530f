#include "support.hpp"

using namespace testing_support;
using ps::LogBase;
using ps::Mat;
using ps::Vec;

TEST(ModeEntropy, KnownValues) {
  EXPECT_EQ(ps::mode_entropy(1.0), 0.0);
  EXPECT_EQ(ps::mode_entropy(1.0 + 5e-13), 0.0);
  // nu = 2: 1.5 ln 1.5 - 0.5 ln 0.5
  EXPECT_NEAR(ps::mode_entropy(2.0), 1.5 * std::log(1.5) + 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(ps::mode_entropy(2.0), 0.9547712524, 1e-9);
  EXPECT_NEAR(ps::mode_entropy(2.0, LogBase::Two), ps::mode_entropy(2.0) / std::log(2.0), 1e-15);
  EXPECT_TRUE(throws_kind([] { ps::mode_entropy(0.9); }, ps::ErrorKind::Unphysical));
}

TEST(ModeEntropy, MatchesGeometricDistributionEntropy) {
  // oracle: -sum p_n ln p_n with p_n = nbar^n / (1 + nbar)^{n+1}
  for (double nu : {1.2, 2.0, 5.0, 13.0}) {
    double nbar = (nu - 1) / 2, x = nbar / (1 + nbar), p = 1 / (1 + nbar), s = 0;
    for (int n = 0; n < 5000; ++n, p *= x)
      if (p > 0) s -= p * std::log(p);
    EXPECT_NEAR(ps::mode_entropy(nu), s, 1e-12);
  }
}

TEST(ModeEntropy, MonotoneAndLogarithmicGrowth) {
  double prev = 0;
  for (double nu = 1.0; nu < 50; nu += 0.37) {
    double s = ps::mode_entropy(nu);
    EXPECT_GE(s, prev);
    prev = s;
  }
  // large nu: S ~ ln(nu/2) + 1
  EXPECT_NEAR(ps::mode_entropy(1e6), std::log(0.5e6) + 1.0, 1e-6);
}

TEST(VonNeumann, PureStatesVanish) {
  EXPECT_NEAR(ps::von_neumann_entropy(ps::vacuum(2)).total, 0.0, 1e-15);
  EXPECT_NEAR(ps::von_neumann_entropy(ps::two_mode_squeezed_vacuum(1.3, 0.2)).total, 0.0, 1e-9);
  EXPECT_NEAR(ps::von_neumann_entropy(ps::squeezed_vacuum(0.9, 1.0)).total, 0.0, 1e-9);
}

TEST(VonNeumann, AdditiveOverProducts) {
  auto st = ps::tensor(ps::thermal(2.0), ps::thermal(3.0));
  auto r = ps::von_neumann_entropy(st);
  EXPECT_NEAR(r.total, ps::mode_entropy(2.0) + ps::mode_entropy(3.0), 1e-13);
  ASSERT_EQ(r.per_mode.size(), 2u);
  EXPECT_NEAR(r.per_mode[0], ps::mode_entropy(2.0), 1e-13);
}

TEST(VonNeumann, InvariantUnderChannels) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    ps::GaussianState st(Vec::Zero(4), random_physical_cov(rng, 2));
    auto h = ps::QuadraticHamiltonian::from_matrix(random_symmetric(rng, 4));
    auto out = ps::apply_channel(ps::generate_channel(h, 0.6), st);
    EXPECT_NEAR(ps::von_neumann_entropy(out).total, ps::von_neumann_entropy(st).total, 1e-9);
  }
}

TEST(Entanglement, TmsvReducedIsThermalCoshR) {
  for (double r : {0.1, 0.7, 2.0}) {
    auto st = ps::two_mode_squeezed_vacuum(r, 0.5);
    EXPECT_NEAR(ps::entanglement_entropy(st, {0}).total, ps::mode_entropy(std::cosh(r)), 1e-10);
    EXPECT_NEAR(ps::entanglement_entropy(st, {1}).total, ps::entanglement_entropy(st, {0}).total, 1e-12);
  }
}

TEST(Entanglement, CoupledOscillatorMatchesExactDiagonalization) {
  // frozen from tests/oracles/coupled_oscillator_ed.py (dense diagonalization, 40 levels per mode)
  auto g = ps::normal_mode_ground_state(ps::coupled_oscillators(1.0, 1.0, 0.75));
  EXPECT_NEAR(ps::entanglement_entropy(g, {0}).total, 0.136807769020828, 1e-10);
  auto g2 = ps::normal_mode_ground_state(ps::coupled_oscillators(1.0, 1.0, 2.0));
  EXPECT_NEAR(ps::entanglement_entropy(g2, {1}).total, 0.278238667707892, 1e-10);
  auto g3 = ps::normal_mode_ground_state(ps::coupled_oscillators(1.0, 1.0, 0.1));
  EXPECT_NEAR(ps::entanglement_entropy(g3, {0}).total, 0.0129876921073232, 1e-10);
}

TEST(Entanglement, SymmetricForRandomPureStates) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    Mat s = random_symplectic(rng, 3, 0.5);
    ps::GaussianState st(Vec::Zero(6), s * s.transpose());
    EXPECT_NEAR(ps::entanglement_entropy(st, {0}).total, ps::entanglement_entropy(st, {1, 2}).total, 1e-8);
  }
}

TEST(Entanglement, Errors) {
  auto mixed = ps::tensor(ps::thermal(2.0), ps::vacuum(1));
  EXPECT_TRUE(throws_kind([&] { ps::entanglement_entropy(mixed, {0}); }, ps::ErrorKind::NotPure));
  auto pure = ps::vacuum(2);
  EXPECT_TRUE(throws_kind([&] { ps::entanglement_entropy(pure, {0, 1}); }, ps::ErrorKind::IndexOutOfRange));
  EXPECT_TRUE(throws_kind([&] { ps::entanglement_entropy(pure, {}); }, ps::ErrorKind::IndexOutOfRange));
  EXPECT_TRUE(throws_kind([&] { ps::entanglement_entropy(pure, {5}); }, ps::ErrorKind::IndexOutOfRange));
}

TEST(TmsvTemperature, LimitsAndPartitionFunction) {
  auto zero = ps::tmsv_temperature(0.0);
  EXPECT_EQ(zero.temperature, 0.0);
  EXPECT_EQ(zero.partition_function, 1.0);
  const double r = 0.8, omega = 1.7;
  auto t = ps::tmsv_temperature(r, omega);
  // Boltzmann weights e^{-n omega / T} reproduce tanh^{2n} r
  EXPECT_NEAR(std::exp(-omega / t.temperature), std::tanh(r) * std::tanh(r), 1e-14);
  EXPECT_NEAR(t.partition_function, std::cosh(r) * std::cosh(r), 1e-14);
  // Z equals the geometric sum of the weights
  EXPECT_NEAR(1.0 / (1.0 - std::tanh(r) * std::tanh(r)), t.partition_function, 1e-12);
  EXPECT_TRUE(throws_kind([] { ps::tmsv_temperature(-1.0); }, ps::ErrorKind::InvalidInput));
}
