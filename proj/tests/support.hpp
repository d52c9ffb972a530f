// support.hpp: shared generators and matchers for the test suites
#pragma once

#include <phasespace.hpp>

#include <gtest/gtest.h>

#include <random>

namespace ps = phasespace;

namespace testing_support {

inline ps::Mat random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ps::Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline ps::Mat random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  ps::Mat a = random_matrix(rng, n, n, scale);
  return 0.5 * (a + a.transpose());
}

// A^T A + shift I
inline ps::Mat random_spd(std::mt19937_64& rng, int n, double shift = 0.1) {
  ps::Mat a = random_matrix(rng, n, n);
  return a.transpose() * a + shift * ps::Mat::Identity(n, n);
}

// exp(Omega^{-1} H) with a random symmetric H, plain Taylor series so it does not
// share code with the library's exponential.
inline ps::Mat taylor_expm(const ps::Mat& a, int terms = 60) {
  ps::Mat result = ps::Mat::Identity(a.rows(), a.cols());
  ps::Mat term = result;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
  }
  return result;
}

inline ps::Mat random_symplectic(std::mt19937_64& rng, int n_modes, double scale = 0.4,
                                 ps::Ordering o = ps::Ordering::Pairwise) {
  auto form = ps::make_symplectic_form(n_modes, o);
  return taylor_expm(form.omega_inv * random_symmetric(rng, 2 * n_modes, scale));
}

// Random physical covariance: S (nu-diagonal) S^T.
inline ps::Mat random_physical_cov(std::mt19937_64& rng, int n_modes, double nu_max = 3.0) {
  std::uniform_real_distribution<double> u(1.0, nu_max);
  ps::Vec d(2 * n_modes);
  for (int k = 0; k < n_modes; ++k) d(2 * k) = d(2 * k + 1) = u(rng);
  ps::Mat s = random_symplectic(rng, n_modes);
  return s * d.asDiagonal() * s.transpose();
}

template <typename A, typename B>
::testing::AssertionResult near(const A& a, const B& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return ::testing::AssertionFailure() << "shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
                                         << "x" << b.cols();
  double d = (a - b).cwiseAbs().maxCoeff();
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max deviation " << d << " > " << tol << "\n" << a << "\nvs\n" << b;
}

template <typename F>
::testing::AssertionResult throws_kind(F&& f, ps::ErrorKind kind) {
  try {
    f();
  } catch (const ps::Error& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "wrong error kind: " << e.what();
  } catch (const std::exception& e) {
    return ::testing::AssertionFailure() << "unexpected exception: " << e.what();
  }
  return ::testing::AssertionFailure() << "no exception thrown";
}

}  // namespace testing_support
