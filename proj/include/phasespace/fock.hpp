// fock.hpp: truncated Fock-space reference computations
#pragma once

#include "entropy.hpp"
#include "gaussian_state.hpp"
#include "matrix_exp.hpp"

#include <cmath>
#include <vector>

namespace phasespace::fock {

// Pure state on one or two truncated modes. For two modes the amplitude of |i, j>
// sits at index i * dims[1] + j.
struct FockState {
  std::vector<int> dims;
  CVec amps;

  int n_modes() const { return static_cast<int>(dims.size()); }
  // amplitudes as a dims[0] x dims[1] matrix (one column for a single mode)
  CMat as_matrix() const {
    const int d1 = n_modes() == 2 ? dims[1] : 1;
    CMat c(dims[0], d1);
    for (int i = 0; i < dims[0]; ++i)
      for (int j = 0; j < d1; ++j) c(i, j) = amps(i * d1 + j);
    return c;
  }
};

struct FockDensity {
  int dim = 0;
  CMat rho;
};

inline void check_dim(int dim, const char* who) {
  require(dim >= 1, ErrorKind::InvalidDimension, std::string(who) + ": truncation must be >= 1");
}

inline CMat annihilation(int dim) {
  check_dim(dim, "annihilation");
  CMat a = CMat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline void check_tail(double tail, double tol, const char* who) {
  if (tail > tol)
    throw Error(ErrorKind::Truncation,
                std::string(who) + ": truncation discards probability " + std::to_string(tail));
}

inline FockState normalized_single(CVec amps) {
  amps /= amps.norm();
  return FockState{{static_cast<int>(amps.size())}, std::move(amps)};
}

// ----- states -----

inline FockState number_state(int n, int dim) {
  check_dim(dim, "number_state");
  require(n >= 0 && n < dim, ErrorKind::OutOfRange, "number_state: n outside the truncation");
  CVec v = CVec::Zero(dim);
  v(n) = 1.0;
  return FockState{{dim}, v};
}

// e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n>
inline FockState coherent_vector(cplx alpha, int dim, double tail_tol = kTolTail) {
  check_dim(dim, "coherent_vector");
  CVec c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  check_tail(1.0 - c.squaredNorm(), tail_tol, "coherent_vector");
  return normalized_single(std::move(c));
}

// C_{2n} = (1/sqrt(cosh r)) (sqrt((2n)!) / (2^n n!)) (-e^{i theta} tanh r)^n
inline FockState squeezed_vacuum_vector(double r, double theta, int dim, double tail_tol = kTolTail) {
  check_dim(dim, "squeezed_vacuum_vector");
  require(r >= 0.0 && std::isfinite(r), ErrorKind::InvalidInput, "squeezed_vacuum_vector: r must be >= 0");
  CVec c = CVec::Zero(dim);
  const cplx ratio = -std::polar(std::tanh(r), theta);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int k = 2; k < dim; k += 2) c(k) = c(k - 2) * ratio * std::sqrt((k - 1.0) / k);
  check_tail(1.0 - c.squaredNorm(), tail_tol, "squeezed_vacuum_vector");
  return normalized_single(std::move(c));
}

// (1/cosh r) sum_n (-e^{i theta} tanh r)^n |n, n>; its covariance is
// two_mode_squeezed_vacuum(2r, theta).
inline FockState tmsv_vector(double r, double theta, int dim, double tail_tol = 1e-14) {
  check_dim(dim, "tmsv_vector");
  require(r >= 0.0 && std::isfinite(r), ErrorKind::InvalidInput, "tmsv_vector: r must be >= 0");
  const double t = std::tanh(r);
  check_tail(std::pow(t, 2.0 * dim), tail_tol, "tmsv_vector");
  CVec c = CVec::Zero(static_cast<Eigen::Index>(dim) * dim);
  const cplx ratio = -std::polar(t, theta);
  cplx amp = 1.0 / std::cosh(r);
  for (int n = 0; n < dim; ++n, amp *= ratio) c(n * dim + n) = amp;
  c /= c.norm();
  return FockState{{dim, dim}, c};
}

// Geometric populations nbar^n / (1 + nbar)^{n+1}.
inline FockDensity thermal_density(double nbar, int dim, double tail_tol = kTolTail) {
  check_dim(dim, "thermal_density");
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::InvalidInput, "thermal_density: nbar must be >= 0");
  const double x = nbar / (1.0 + nbar);
  check_tail(std::pow(x, dim), tail_tol, "thermal_density");
  CMat rho = CMat::Zero(dim, dim);
  double p = 1.0 / (1.0 + nbar), total = 0.0;
  for (int n = 0; n < dim; ++n, p *= x) {
    rho(n, n) = p;
    total += p;
  }
  rho /= total;
  return FockDensity{dim, rho};
}

inline double nbar_from_nu(double nu) { return 0.5 * (nu - 1.0); }

// Places a single-mode state phi in the relative mode (a1 - a2)/sqrt2 with the
// centre-of-mass mode (a1 + a2)/sqrt2 in vacuum; the result lives on dim x dim.
inline FockState embed_relative_mode(const FockState& phi) {
  require(phi.n_modes() == 1, ErrorKind::InvalidDimension, "embed_relative_mode: expects a single-mode state");
  const int dim = phi.dims[0];
  CVec c = CVec::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int k = 0; k < dim; ++k) {
    if (phi.amps(k) == cplx(0.0)) continue;
    for (int j = 0; j <= k; ++j) {
      // (b^dag)^k / sqrt(k!) |00> with b^dag = (a1^dag - a2^dag)/sqrt2
      double log_mag = 0.5 * (std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0)) -
                       0.5 * k * std::log(2.0);
      double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      c(j * dim + (k - j)) += phi.amps(k) * sign * std::exp(log_mag);
    }
  }
  return FockState{{dim, dim}, c};
}

// ----- densities -----

inline FockDensity density(const FockState& s) {
  require(s.n_modes() == 1, ErrorKind::InvalidDimension, "density: expects a single-mode state");
  return FockDensity{s.dims[0], s.amps * s.amps.adjoint()};
}

inline FockDensity reduced_density(const FockState& s, int keep) {
  require(s.n_modes() == 2, ErrorKind::InvalidDimension, "reduced_density: expects a two-mode state");
  require(keep == 0 || keep == 1, ErrorKind::IndexOutOfRange, "reduced_density: mode must be 0 or 1");
  CMat c = s.as_matrix();
  if (keep == 0) return FockDensity{s.dims[0], c * c.adjoint()};
  return FockDensity{s.dims[1], c.transpose() * c.conjugate()};
}

inline double fock_entropy(const FockDensity& d, LogBase base = LogBase::Natural) {
  require(d.rho.rows() == d.dim && d.rho.cols() == d.dim, ErrorKind::InvalidDimension, "fock_entropy: bad shape");
  if (max_abs(CMat(d.rho - d.rho.adjoint())) > 1e-10)
    throw Error(ErrorKind::InvalidInput, "fock_entropy: density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(d.rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double p = es.eigenvalues()(k);
    if (p < -1e-10) throw Error(ErrorKind::InternalConsistency, "fock_entropy: negative eigenvalue");
    if (p > 0.0) s -= p * log_in(p, base);
  }
  return s;
}

// ----- overlaps and displacements -----

inline cplx overlap(const FockState& a, const FockState& b) {
  require(a.dims == b.dims, ErrorKind::InvalidDimension, "overlap: truncations differ");
  return a.amps.dot(b.amps);
}

// <alpha|beta> = exp((-|beta|^2 - |alpha|^2 + 2 beta conj(alpha)) / 2)
inline cplx coherent_overlap(cplx alpha, cplx beta) {
  return std::exp(0.5 * (-std::norm(beta) - std::norm(alpha) + 2.0 * beta * std::conj(alpha)));
}

// Associated Laguerre L_n^{(l)}(x) by the three-term recurrence.
inline double assoc_laguerre(int n, int l, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + l - x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 + l - x) * cur - (k + l) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// <n|D(eta)|m> = sqrt(m!/n!) eta^{n-m} e^{-|eta|^2/2} L_m^{(n-m)}(|eta|^2) for n >= m,
// and conj(<m|D(-eta)|n>) otherwise.
inline cplx displacement_element(int n, int m, cplx eta) {
  if (n < m) return std::conj(displacement_element(m, n, -eta));
  const int l = n - m;
  const double x = std::norm(eta);
  double mag;
  if (l == 0) {
    mag = 1.0;
  } else if (x == 0.0) {
    return 0.0;
  } else {
    mag = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) + 0.5 * l * std::log(x));
  }
  cplx phase = l == 0 ? cplx(1.0) : std::polar(1.0, l * std::arg(eta));
  return phase * (mag * std::exp(-0.5 * x) * assoc_laguerre(m, l, x));
}

// Exponential of the truncated generator eta a^dag - conj(eta) a.
inline CMat displacement_by_expm(cplx eta, int dim) {
  CMat a = annihilation(dim);
  CMat gen = eta * a.adjoint() - std::conj(eta) * a;
  return expm(gen);
}

// Closed-form matrix elements. With self_check the low dim x dim block of the
// generator exponential on a larger truncation must agree to 1e-9.
inline CMat displacement_matrix(cplx eta, int dim, bool self_check = true) {
  check_dim(dim, "displacement_matrix");
  require(std::isfinite(eta.real()) && std::isfinite(eta.imag()), ErrorKind::InvalidInput,
          "displacement_matrix: eta must be finite");
  CMat d(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) d(n, m) = displacement_element(n, m, eta);
  if (self_check) {
    CMat ref = displacement_by_expm(eta, 2 * dim + 20).topLeftCorner(dim, dim);
    double dev = max_abs(CMat(ref - d));
    if (dev > 1e-9)
      throw Error(ErrorKind::InternalConsistency,
                  "displacement_matrix: closed form and generator exponential differ by " + std::to_string(dev));
  }
  return d;
}

// ----- moments -----

// Covariance and mean in the sigma = <{Theta, Theta}> - 2<Theta><Theta> convention,
// built from normal-ordered ladder moments so truncation never touches [a, a^dag] = 1.
struct LadderMoments {
  int n = 0;
  CVec a;     // <a_i>
  CMat aa;    // <a_i a_j>
  CMat ad_a;  // <a_i^dag a_j>
};

inline GaussianState gaussian_from_moments(const LadderMoments& mo) {
  const int n = mo.n;
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  // operators b = (a_0, a_0^dag, a_1, a_1^dag, ...), Theta = T b
  CMat t = CMat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    t(2 * k, 2 * k) = s;
    t(2 * k, 2 * k + 1) = s;
    t(2 * k + 1, 2 * k) = -i * s;
    t(2 * k + 1, 2 * k + 1) = i * s;
  }
  CVec mb(2 * n);
  CMat e(2 * n, 2 * n);  // e(k, l) = <b_k b_l>
  for (int p = 0; p < n; ++p) {
    mb(2 * p) = mo.a(p);
    mb(2 * p + 1) = std::conj(mo.a(p));
    for (int q = 0; q < n; ++q) {
      cplx delta = p == q ? 1.0 : 0.0;
      e(2 * p, 2 * q) = mo.aa(p, q);
      e(2 * p + 1, 2 * q) = mo.ad_a(p, q);
      e(2 * p, 2 * q + 1) = mo.ad_a(q, p) + delta;
      e(2 * p + 1, 2 * q + 1) = std::conj(mo.aa(q, p));
    }
  }
  CVec mean = t * mb;
  CMat cov = t * (e + e.transpose()) * t.transpose() - 2.0 * mean * mean.transpose();
  double imag = std::max(mean.imag().cwiseAbs().maxCoeff(), cov.imag().cwiseAbs().maxCoeff());
  if (imag > 1e-8 * std::max(1.0, cov.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::InternalConsistency, "gaussian_from_moments: moments are not Hermitian");
  return GaussianState(mean.real(), cov.real());
}

inline LadderMoments ladder_moments(const FockState& s) {
  const int n = s.n_modes();
  require(n == 1 || n == 2, ErrorKind::InvalidDimension, "ladder_moments: one or two modes supported");
  CMat c = s.as_matrix();
  std::vector<CMat> low;
  auto lower = [&](const CMat& x, int mode) -> CMat {
    if (mode == 0) return annihilation(s.dims[0]) * x;
    return x * annihilation(s.dims[1]).transpose();
  };
  auto inner = [](const CMat& x, const CMat& y) { return (x.conjugate().cwiseProduct(y)).sum(); };
  LadderMoments mo;
  mo.n = n;
  mo.a.resize(n);
  mo.aa.resize(n, n);
  mo.ad_a.resize(n, n);
  for (int p = 0; p < n; ++p) low.push_back(lower(c, p));
  for (int p = 0; p < n; ++p) {
    mo.a(p) = inner(c, low[p]);
    for (int q = 0; q < n; ++q) {
      mo.aa(p, q) = inner(c, lower(low[q], p));
      mo.ad_a(p, q) = inner(low[p], low[q]);
    }
  }
  return mo;
}

inline LadderMoments ladder_moments(const FockDensity& d) {
  CMat a = annihilation(d.dim);
  LadderMoments mo;
  mo.n = 1;
  mo.a = CVec::Constant(1, (d.rho * a).trace());
  mo.aa = CMat::Constant(1, 1, (d.rho * a * a).trace());
  mo.ad_a = CMat::Constant(1, 1, (a * d.rho * a.adjoint()).trace());
  return mo;
}

inline GaussianState covariance_from_fock(const FockState& s) { return gaussian_from_moments(ladder_moments(s)); }
inline GaussianState covariance_from_fock(const FockDensity& d) { return gaussian_from_moments(ladder_moments(d)); }

}  // namespace phasespace::fock
