#include "support.hpp"

#include <numbers>

using namespace testing_support;
using ps::Mat;
using ps::Ordering;
using ps::Vec;

namespace {

Mat rotation(double phi) {
  Mat r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

}  // namespace

TEST(Vacuum, UnitCovarianceZeroMean) {
  auto v = ps::vacuum(3);
  EXPECT_EQ(v.n_modes(), 3);
  EXPECT_TRUE(near(v.cov(), Mat::Identity(6, 6), 0.0));
  EXPECT_TRUE(near(v.mean(), Vec::Zero(6), 0.0));
}

TEST(Thermal, CovarianceAndErrors) {
  EXPECT_TRUE(near(ps::thermal(2.5).cov(), Mat(2.5 * Mat::Identity(2, 2)), 0.0));
  EXPECT_TRUE(throws_kind([] { ps::thermal(0.5); }, ps::ErrorKind::Unphysical));
  EXPECT_NEAR(ps::thermal_nu_from_beta(2.0), 1.0 / std::tanh(1.0), 1e-15);
}

TEST(Coherent, MeanIsSqrt2ReIm) {
  auto c = ps::coherent(ps::cplx(1.0, -0.5));
  EXPECT_NEAR(c.mean()(0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c.mean()(1), -0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(near(c.cov(), Mat::Identity(2, 2), 0.0));
}

TEST(SqueezedVacuum, ThetaZeroIsDiagonal) {
  auto s = ps::squeezed_vacuum(0.5, 0.0);
  Mat expect = Mat::Zero(2, 2);
  expect(0, 0) = std::exp(-1.0);
  expect(1, 1) = std::exp(1.0);
  EXPECT_TRUE(near(s.cov(), expect, 1e-14));
}

TEST(SqueezedVacuum, MatchesRotatedSqueezeOracle) {
  for (double r : {0.0, 0.3, 0.8, 1.5, 2.5})
    for (double theta : {0.0, 0.4, std::numbers::pi / 4, std::numbers::pi / 2, 2.0, 3.5}) {
      Mat d = Mat::Zero(2, 2);
      d(0, 0) = std::exp(-2 * r);
      d(1, 1) = std::exp(2 * r);
      Mat oracle = rotation(theta / 2) * d * rotation(theta / 2).transpose();
      auto st = ps::squeezed_vacuum(r, theta);
      EXPECT_TRUE(near(st.cov(), oracle, 1e-12 * std::cosh(2 * r)));
      EXPECT_NEAR(st.cov().determinant(), 1.0, 1e-10 * std::cosh(2 * r) * std::cosh(2 * r));
    }
}

TEST(SqueezedVacuum, RejectsNegativeR) {
  EXPECT_TRUE(throws_kind([] { ps::squeezed_vacuum(-0.1); }, ps::ErrorKind::InvalidInput));
}

TEST(TwoModeSqueezedVacuum, PureSymmetricAndReducedThermal) {
  for (double r : {0.0, 0.2, 1.0, 2.0})
    for (double theta : {0.0, 1.1, 2.9}) {
      auto st = ps::two_mode_squeezed_vacuum(r, theta);
      EXPECT_TRUE(near(st.cov(), Mat(st.cov().transpose()), 0.0));
      EXPECT_TRUE(ps::physicality_check(st).ok);
      EXPECT_NEAR(ps::purity(st).purity, 1.0, 1e-10);
      for (int k : {0, 1})
        EXPECT_TRUE(near(ps::partial_trace(st, {k}).cov(), Mat(std::cosh(r) * Mat::Identity(2, 2)), 1e-14));
    }
}

TEST(TwoModeSqueezedVacuum, MatchesFockMoments) {
  // the Fock vector with tanh(r/2) carries the same covariance
  for (double r : {0.3, 1.0, 1.7})
    for (double theta : {0.0, 0.7, 2.4}) {
      auto fs = ps::fock::tmsv_vector(r / 2, theta, 120);
      auto from_fock = ps::fock::covariance_from_fock(fs);
      EXPECT_TRUE(near(from_fock.cov(), ps::two_mode_squeezed_vacuum(r, theta).cov(), 1e-10));
    }
}

TEST(Tensor, BlockDiagonalAndBlockwiseInterleaving) {
  auto a = ps::squeezed_vacuum(0.3, 0.2), b = ps::thermal(2.0);
  auto t = ps::tensor(a, b);
  EXPECT_TRUE(near(Mat(t.cov().topLeftCorner(2, 2)), a.cov(), 0.0));
  EXPECT_TRUE(near(Mat(t.cov().bottomRightCorner(2, 2)), b.cov(), 0.0));
  EXPECT_TRUE(near(Mat(t.cov().topRightCorner(2, 2)), Mat::Zero(2, 2), 0.0));

  auto tb = ps::tensor(a.to_ordering(Ordering::Blockwise), b.to_ordering(Ordering::Blockwise));
  EXPECT_EQ(tb.ordering(), Ordering::Blockwise);
  EXPECT_TRUE(near(tb.to_ordering(Ordering::Pairwise).cov(), t.cov(), 0.0));
  EXPECT_TRUE(throws_kind([&] { ps::tensor(a, b.to_ordering(Ordering::Blockwise)); },
                          ps::ErrorKind::OrderingMismatch));
}

TEST(PartialTrace, InvertsTensorOnRandomStates) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    ps::GaussianState a(random_matrix(rng, 4, 1), random_physical_cov(rng, 2));
    ps::GaussianState b(random_matrix(rng, 2, 1), random_physical_cov(rng, 1));
    auto t = ps::tensor(a, b);
    EXPECT_TRUE(near(ps::partial_trace(t, {0, 1}).cov(), a.cov(), 0.0));
    EXPECT_TRUE(near(ps::partial_trace(t, {2}).mean(), b.mean(), 0.0));
    // reordering the kept modes permutes the blocks
    auto swapped = ps::partial_trace(t, {1, 0});
    EXPECT_DOUBLE_EQ(swapped.cov()(0, 0), a.cov()(2, 2));
  }
}

TEST(PartialTrace, IndexErrors) {
  auto st = ps::vacuum(2);
  EXPECT_TRUE(throws_kind([&] { ps::partial_trace(st, {2}); }, ps::ErrorKind::IndexOutOfRange));
  EXPECT_TRUE(throws_kind([&] { ps::partial_trace(st, {0, 0}); }, ps::ErrorKind::IndexOutOfRange));
  EXPECT_TRUE(throws_kind([&] { ps::partial_trace(st, {}); }, ps::ErrorKind::IndexOutOfRange));
}

TEST(Physicality, VacuumSaturatesHalfIdentityFails) {
  auto v = ps::physicality_check(ps::vacuum(1));
  EXPECT_TRUE(v.ok);
  EXPECT_NEAR(v.min_eig_uncertainty, 0.0, 1e-15);
  EXPECT_NEAR(v.min_symplectic_eig, 1.0, 1e-15);
  auto bad = ps::physicality_check(ps::GaussianState(Vec::Zero(2), 0.5 * Mat::Identity(2, 2)));
  EXPECT_FALSE(bad.ok);
  EXPECT_NEAR(bad.min_symplectic_eig, 0.5, 1e-15);
  EXPECT_NEAR(bad.min_eig_uncertainty, -0.5, 1e-15);
}

TEST(Physicality, RandomPhysicalStatesPassBothCriteria) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3;
    ps::GaussianState st(Vec::Zero(2 * n), random_physical_cov(rng, n));
    auto r = ps::physicality_check(st);
    EXPECT_TRUE(r.ok);
    EXPECT_GE(r.min_symplectic_eig, 1.0 - 1e-8);
    // shrinking below the vacuum breaks it
    ps::GaussianState shrunk(Vec::Zero(2 * n), st.cov() / (1.05 * r.min_symplectic_eig));
    EXPECT_FALSE(ps::physicality_check(shrunk).ok);
  }
}

TEST(Physicality, BlockwiseStateUsesBlockwiseForm) {
  auto st = ps::two_mode_squeezed_vacuum(0.9, 0.3).to_ordering(Ordering::Blockwise);
  EXPECT_TRUE(ps::physicality_check(st).ok);
}

TEST(Purity, PureAndMixed) {
  EXPECT_TRUE(ps::purity(ps::squeezed_vacuum(1.2, 0.3)).is_pure);
  auto p = ps::purity(ps::thermal(2.0));
  EXPECT_FALSE(p.is_pure);
  EXPECT_NEAR(p.purity, 0.5, 1e-15);
}

TEST(GaussianState, ConstructionErrors) {
  EXPECT_TRUE(throws_kind([] { ps::GaussianState(Vec::Zero(3), Mat::Identity(3, 3)); },
                          ps::ErrorKind::InvalidDimension));
  EXPECT_TRUE(throws_kind([] { ps::GaussianState(Vec::Zero(4), Mat::Identity(2, 2)); },
                          ps::ErrorKind::InvalidDimension));
  Mat asym = Mat::Identity(2, 2);
  asym(0, 1) = 0.3;
  EXPECT_TRUE(throws_kind([&] { ps::GaussianState(Vec::Zero(2), asym); }, ps::ErrorKind::NotSymmetric));
}

TEST(WignerParams, VacuumNormalization) {
  auto p = ps::gaussian_wigner_params(ps::vacuum(1));
  EXPECT_NEAR(p.normalization, 1.0 / std::numbers::pi, 1e-15);
  EXPECT_TRUE(near(p.inverse_cov, Mat::Identity(2, 2), 1e-15));
  auto t = ps::gaussian_wigner_params(ps::thermal(3.0));
  EXPECT_NEAR(t.normalization, 1.0 / (3.0 * std::numbers::pi), 1e-15);
  EXPECT_TRUE(throws_kind([] { ps::gaussian_wigner_params(ps::GaussianState(Vec::Zero(2), Mat::Zero(2, 2))); },
                          ps::ErrorKind::SingularMatrix));
}
