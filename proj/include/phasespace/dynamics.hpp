// dynamics.hpp: quadratic Hamiltonians, Gaussian channels and their application
#pragma once

#include "gaussian_state.hpp"
#include "matrix_exp.hpp"

#include <cmath>
#include <functional>

namespace phasespace {

// H = 1/2 Theta^T F Theta + alpha^T Theta, stored with F symmetrized.
struct QuadraticHamiltonian {
  int n_modes = 0;
  Ordering ordering = Ordering::Pairwise;
  Mat f_bar;
  Vec alpha;

  // Any square F is accepted; only its symmetric part enters the dynamics.
  static QuadraticHamiltonian from_matrix(const Mat& f, const Vec& alpha, Ordering ordering = Ordering::Pairwise) {
    require(f.rows() == f.cols(), ErrorKind::InvalidDimension, "QuadraticHamiltonian: F must be square");
    QuadraticHamiltonian h;
    h.n_modes = modes_from_dim(f.rows(), "QuadraticHamiltonian");
    require(alpha.size() == f.rows(), ErrorKind::InvalidDimension, "QuadraticHamiltonian: alpha length mismatch");
    require(f.allFinite() && alpha.allFinite(), ErrorKind::InvalidInput, "QuadraticHamiltonian: non-finite entries");
    h.ordering = ordering;
    h.f_bar = 0.5 * (f + f.transpose());
    h.alpha = alpha;
    return h;
  }

  static QuadraticHamiltonian from_matrix(const Mat& f, Ordering ordering = Ordering::Pairwise) {
    return from_matrix(f, Vec::Zero(f.rows()), ordering);
  }

  QuadraticHamiltonian to_ordering(Ordering o) const {
    if (o == ordering) return *this;
    return from_matrix(reorder(f_bar, ordering, o), reorder(alpha, ordering, o), o);
  }

  // generator Omega^{-1} F_bar of the linear flow
  Mat generator() const { return make_symplectic_form(n_modes, ordering).omega_inv * f_bar; }
};

// H = a^dag W a + a^T G a + a^dag G^dag a^dag (up to a constant). W must be Hermitian;
// only the symmetric part of G contributes.
struct LadderHamiltonian {
  CMat w;
  CMat g;
};

inline QuadraticHamiltonian ladder_to_quadrature(const LadderHamiltonian& lh, Ordering ordering = Ordering::Pairwise) {
  const Eigen::Index n = lh.w.rows();
  require(n >= 1 && lh.w.cols() == n && lh.g.rows() == n && lh.g.cols() == n, ErrorKind::InvalidDimension,
          "ladder_to_quadrature: W and G must be square of the same size");
  double scale = std::max(1.0, std::max(max_abs(lh.w), max_abs(lh.g)));
  if (max_abs(CMat(lh.w - lh.w.adjoint())) > kTolSymmetric * scale)
    throw Error(ErrorKind::InvalidInput, "ladder_to_quadrature: W is not Hermitian");
  const cplx i(0.0, 1.0);
  CMat g = 0.5 * (lh.g + lh.g.transpose());
  CMat a = lh.w + g + g.adjoint();
  CMat b = lh.w - g - g.adjoint();
  CMat x = i * (lh.w - g + g.adjoint());
  CMat f(2 * n, 2 * n);
  f << a, x, x.adjoint(), b;
  CMat f_bar = 0.5 * (f + f.transpose());
  double imag = f_bar.imag().cwiseAbs().maxCoeff();
  if (imag > kTolSymmetric * scale)
    throw Error(ErrorKind::InternalConsistency,
                "ladder_to_quadrature: symmetrized F has imaginary residue " + std::to_string(imag));
  Mat fr = f_bar.real();
  return QuadraticHamiltonian::from_matrix(reorder(fr, Ordering::Blockwise, ordering), ordering);
}

// ----- standard generators -----

// Single-mode squeezer, G = -i (r/2) e^{i theta}; at unit time it produces squeezed_vacuum(r, theta).
inline QuadraticHamiltonian squeeze_hamiltonian(double r, double theta = 0.0) {
  LadderHamiltonian lh{CMat::Zero(1, 1), CMat::Constant(1, 1, cplx(0.0, -0.5 * r) * std::polar(1.0, theta))};
  return ladder_to_quadrature(lh);
}

// Two-mode squeezer, G = -i (r/4) e^{i theta} sigma_x; at unit time it produces
// two_mode_squeezed_vacuum(r, theta).
inline QuadraticHamiltonian two_mode_squeeze_hamiltonian(double r, double theta = 0.0) {
  CMat g = CMat::Zero(2, 2);
  g(0, 1) = g(1, 0) = cplx(0.0, -0.25 * r) * std::polar(1.0, theta);
  return ladder_to_quadrature(LadderHamiltonian{CMat::Zero(2, 2), g});
}

// Free oscillators, H = omega sum_k a_k^dag a_k.
inline QuadraticHamiltonian rotation_hamiltonian(int n_modes, double omega) {
  require(n_modes >= 1, ErrorKind::InvalidDimension, "rotation_hamiltonian: n_modes must be >= 1");
  return QuadraticHamiltonian::from_matrix(omega * Mat::Identity(2 * n_modes, 2 * n_modes));
}

// ----- channels -----

// Theta -> S Theta + d
struct GaussianChannel {
  SymplecticMatrix s;
  Vec d;
};

inline GaussianChannel generate_channel(const QuadraticHamiltonian& h, double t) {
  require(std::isfinite(t), ErrorKind::InvalidInput, "generate_channel: time must be finite");
  require(h.f_bar.allFinite() && h.alpha.allFinite(), ErrorKind::InvalidInput,
          "generate_channel: non-finite Hamiltonian");
  auto form = make_symplectic_form(h.n_modes, h.ordering);
  Mat m = form.omega_inv * h.f_bar * t;
  ExpPhi ep = expm_phi1(m);
  require(ep.exp.allFinite() && ep.phi1.allFinite(), ErrorKind::NumericOverflow,
          "generate_channel: exponential overflowed");
  Vec d = t * (ep.phi1 * (form.omega_inv * h.alpha));
  auto check = check_symplectic(ep.exp, form);
  if (!check.ok)
    throw Error(ErrorKind::NumericOverflow,
                "generate_channel: result fails the symplectic check, residual " + std::to_string(check.residual));
  return GaussianChannel{SymplecticMatrix(ep.exp, h.ordering), d};
}

inline GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st) {
  require(ch.s.n_modes() == st.n_modes(), ErrorKind::InvalidDimension,
          "apply_channel: channel acts on " + std::to_string(ch.s.n_modes()) + " modes, state has " +
              std::to_string(st.n_modes()));
  if (ch.s.ordering() != st.ordering())
    throw Error(ErrorKind::OrderingMismatch, "apply_channel: channel and state use different orderings");
  const Mat& s = ch.s.matrix();
  return GaussianState(s * st.mean() + ch.d, s * st.cov() * s.transpose(), st.ordering());
}

inline GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
  require(second.s.n_modes() == first.s.n_modes(), ErrorKind::InvalidDimension, "compose: mode count mismatch");
  if (second.s.ordering() != first.s.ordering())
    throw Error(ErrorKind::OrderingMismatch, "compose: channels use different orderings");
  return GaussianChannel{SymplecticMatrix(second.s.matrix() * first.s.matrix(), first.s.ordering()),
                         second.s.matrix() * first.d + second.d};
}

// ----- direct integration of the moment equations -----

// RK4 on  dxi/dt = Omega^{-1}(F xi + alpha),  dsigma/dt = M sigma + sigma M^T,
// M = Omega^{-1} F. The step is shrunk so that a whole number of steps lands on t.
inline GaussianState evolve_ode(const std::function<QuadraticHamiltonian(double)>& h_of_t, const GaussianState& st,
                                double t, double dt) {
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::InvalidInput, "evolve_ode: dt must be positive");
  require(t >= 0.0 && std::isfinite(t), ErrorKind::InvalidInput, "evolve_ode: t must be >= 0");
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-9)));
  const double h = t / static_cast<double>(steps);
  auto form = make_symplectic_form(st.n_modes(), st.ordering());

  auto rhs = [&](double time, const Vec& xi, const Mat& sig, Vec& dxi, Mat& dsig) {
    QuadraticHamiltonian ham = h_of_t(time);
    require(ham.n_modes == st.n_modes(), ErrorKind::InvalidDimension, "evolve_ode: Hamiltonian mode count mismatch");
    if (ham.ordering != st.ordering()) ham = ham.to_ordering(st.ordering());
    Mat m = form.omega_inv * ham.f_bar;
    dxi = m * xi + form.omega_inv * ham.alpha;
    dsig = m * sig + sig * m.transpose();
  };

  Vec xi = st.mean();
  Mat sig = st.cov();
  Vec k1x, k2x, k3x, k4x;
  Mat k1s, k2s, k3s, k4s;
  for (long k = 0; k < steps; ++k) {
    double t0 = h * static_cast<double>(k);
    rhs(t0, xi, sig, k1x, k1s);
    rhs(t0 + 0.5 * h, xi + 0.5 * h * k1x, sig + 0.5 * h * k1s, k2x, k2s);
    rhs(t0 + 0.5 * h, xi + 0.5 * h * k2x, sig + 0.5 * h * k2s, k3x, k3s);
    rhs(t0 + h, xi + h * k3x, sig + h * k3s, k4x, k4s);
    xi += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    sig += (h / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
  }
  require(xi.allFinite() && sig.allFinite(), ErrorKind::NumericOverflow, "evolve_ode: integration diverged");
  return GaussianState(xi, 0.5 * (sig + sig.transpose()), st.ordering());
}

inline GaussianState evolve_ode(const QuadraticHamiltonian& h, const GaussianState& st, double t, double dt) {
  return evolve_ode([&h](double) { return h; }, st, t, dt);
}

}  // namespace phasespace
