// normal_modes.hpp: ground states of quadratic Hamiltonians, coupled oscillators
#pragma once

#include "dynamics.hpp"
#include "williamson.hpp"

#include <cmath>

namespace phasespace {

// Ground state (hbar = 1) of H = 1/2 Theta^T F Theta. With sigma F sigma^T diagonal,
// each normal mode is a unit-covariance vacuum, so cov = sigma^T sigma.
inline GaussianState normal_mode_ground_state(const QuadraticHamiltonian& h) {
  Eigen::LLT<Mat> llt(h.f_bar);
  if (llt.info() != Eigen::Success || Eigen::SelfAdjointEigenSolver<Mat>(h.f_bar).eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::NoGroundState, "normal_mode_ground_state: F is not positive definite");
  WilliamsonResult w = williamson_decompose(h.f_bar, h.ordering);
  const Mat& s = w.sigma.matrix();
  GaussianState st(Vec::Zero(h.f_bar.rows()), s.transpose() * s, h.ordering);
  // a non-zero linear term only displaces the minimum: mean = -F^{-1} alpha
  if (h.alpha.size() > 0 && h.alpha.cwiseAbs().maxCoeff() > 0.0)
    st = GaussianState(-llt.solve(h.alpha), st.cov(), h.ordering);
  return st;
}

// Two oscillators of mass m and frequency omega coupled by lambda (q1 - q2)^2.
inline QuadraticHamiltonian coupled_oscillators(double m, double omega, double lambda) {
  require(m > 0.0 && omega > 0.0 && std::isfinite(m) && std::isfinite(omega), ErrorKind::InvalidInput,
          "coupled_oscillators: m and omega must be positive");
  require(std::isfinite(lambda), ErrorKind::InvalidInput, "coupled_oscillators: lambda must be finite");
  const double k = m * omega * omega + 2.0 * lambda;
  Mat f(4, 4);
  f << k, 0, -2 * lambda, 0,  //
      0, 1 / m, 0, 0,         //
      -2 * lambda, 0, k, 0,   //
      0, 0, 0, 1 / m;
  return QuadraticHamiltonian::from_matrix(f);
}

// Normal-mode frequencies {omega, omega sqrt(1 + 4 lambda / (m omega^2))}.
inline Vec coupled_normal_frequencies(double m, double omega, double lambda) {
  Vec w(2);
  w << omega, omega * std::sqrt(1.0 + 4.0 * lambda / (m * omega * omega));
  if (w(1) < w(0)) std::swap(w(0), w(1));
  return w;
}

// Local rescaling D = (+)_i diag(sqrt(m nu_i), 1/sqrt(m nu_i)) applied after the
// Williamson map, taking (+)_i nu_i I_2 to (+)_i diag(m nu_i^2, 1/m): the normal
// modes written as oscillators of mass m and frequency nu_i. Pairwise only.
struct NormalModeForm {
  Mat transform;  // D sigma
  Mat diagonal;   // (+)_i diag(m nu_i^2, 1/m)
};

inline NormalModeForm normal_mode_form(const WilliamsonResult& w, double mass) {
  require(mass > 0.0, ErrorKind::InvalidInput, "normal_mode_form: mass must be positive");
  if (w.sigma.ordering() != Ordering::Pairwise)
    throw Error(ErrorKind::OrderingMismatch, "normal_mode_form: expects a pairwise decomposition");
  const Eigen::Index n = w.nu.size();
  Vec d(2 * n), diag(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double s = std::sqrt(mass * w.nu(k));
    d(2 * k) = s;
    d(2 * k + 1) = 1.0 / s;
    diag(2 * k) = mass * w.nu(k) * w.nu(k);
    diag(2 * k + 1) = 1.0 / mass;
  }
  return {d.asDiagonal() * w.sigma.matrix(), Mat(diag.asDiagonal())};
}

}  // namespace phasespace
