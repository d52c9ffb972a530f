// wigner.hpp: Wigner functions on rectangular phase-space grids
#pragma once

#include "gaussian_state.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace phasespace {

inline constexpr int kMaxFockWigner = 200;

// Uniform grid with n_q x n_p nodes including both end points. Coordinates are in
// physical units; hbar sets the phase-space cell, the Gaussian constructors correspond to hbar = 1.
struct PhaseSpaceGrid {
  double q_min = -5.0, q_max = 5.0;
  double p_min = -5.0, p_max = 5.0;
  int n_q = 101, n_p = 101;
  double hbar = 1.0;

  void validate() const {
    require(std::isfinite(q_min) && std::isfinite(q_max) && q_max > q_min, ErrorKind::InvalidInput,
            "PhaseSpaceGrid: need q_max > q_min");
    require(std::isfinite(p_min) && std::isfinite(p_max) && p_max > p_min, ErrorKind::InvalidInput,
            "PhaseSpaceGrid: need p_max > p_min");
    require(n_q >= 2 && n_p >= 2, ErrorKind::InvalidInput, "PhaseSpaceGrid: need at least 2 points per axis");
    require(hbar > 0.0 && std::isfinite(hbar), ErrorKind::InvalidInput, "PhaseSpaceGrid: hbar must be positive");
  }
  double dq() const { return (q_max - q_min) / (n_q - 1); }
  double dp() const { return (p_max - p_min) / (n_p - 1); }
  double q(int i) const { return q_min + i * dq(); }
  double p(int j) const { return p_min + j * dp(); }

  bool same_as(const PhaseSpaceGrid& o) const {
    return n_q == o.n_q && n_p == o.n_p && q_min == o.q_min && q_max == o.q_max && p_min == o.p_min &&
           p_max == o.p_max && hbar == o.hbar;
  }
};

// values(i, j) = W(q_i, p_j)
struct WignerGrid {
  PhaseSpaceGrid grid;
  Mat values;
  std::vector<std::string> warnings;
};

namespace detail {

// Trapezoid weights along one axis.
inline double trap_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

inline WignerGrid make_grid(const PhaseSpaceGrid& g) {
  g.validate();
  WignerGrid w;
  w.grid = g;
  w.values = Mat::Zero(g.n_q, g.n_p);
  return w;
}

// Warn when the function is still sizeable on the boundary.
inline void boundary_warning(WignerGrid& w, double peak) {
  const Mat& v = w.values;
  double edge = std::max({v.row(0).cwiseAbs().maxCoeff(), v.row(v.rows() - 1).cwiseAbs().maxCoeff(),
                          v.col(0).cwiseAbs().maxCoeff(), v.col(v.cols() - 1).cwiseAbs().maxCoeff()});
  if (edge > 1e-8 * peak)
    w.warnings.push_back("grid boundary value " + std::to_string(edge) + " exceeds 1e-8 of the peak");
}

}  // namespace detail

// ----- closed forms -----

// Multi-mode Gaussian at a phase-space point x (physical units).
inline double gaussian_wigner_at(const GaussianState& st, const Vec& x, double hbar = 1.0) {
  require(x.size() == st.dim(), ErrorKind::InvalidDimension, "gaussian_wigner_at: point dimension mismatch");
  WignerParams wp = gaussian_wigner_params(st);
  Vec d = x / std::sqrt(hbar) - st.mean();
  return wp.normalization * std::exp(-d.dot(wp.inverse_cov * d)) / std::pow(hbar, st.n_modes());
}

inline WignerGrid eval_gaussian(const GaussianState& st_in, const PhaseSpaceGrid& g) {
  require(st_in.n_modes() == 1, ErrorKind::InvalidDimension,
          "eval_gaussian: grids are single-mode; use gaussian_wigner_at for more modes");
  GaussianState st = st_in.to_ordering(Ordering::Pairwise);
  WignerGrid w = detail::make_grid(g);
  WignerParams wp = gaussian_wigner_params(st);
  const double sh = std::sqrt(g.hbar), pref = wp.normalization / g.hbar;
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j) {
      double dq = g.q(i) / sh - st.mean()(0), dp = g.p(j) / sh - st.mean()(1);
      double quad = wp.inverse_cov(0, 0) * dq * dq + 2.0 * wp.inverse_cov(0, 1) * dq * dp +
                    wp.inverse_cov(1, 1) * dp * dp;
      w.values(i, j) = pref * std::exp(-quad);
    }
  detail::boundary_warning(w, pref);
  return w;
}

inline WignerGrid eval_coherent(cplx alpha, const PhaseSpaceGrid& g) { return eval_gaussian(coherent(alpha), g); }

// Laguerre L_n(x) by recurrence.
inline double laguerre(int n, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// W_n = ((-1)^n / (pi hbar)) e^{-2|alpha|^2} L_n(4|alpha|^2), |alpha|^2 = (q^2 + p^2)/(2 hbar)
inline WignerGrid eval_fock(int n, const PhaseSpaceGrid& g) {
  require(n >= 0 && n <= kMaxFockWigner, ErrorKind::OutOfRange,
          "eval_fock: n must lie in [0, " + std::to_string(kMaxFockWigner) + "]");
  WignerGrid w = detail::make_grid(g);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0, pref = sign / (std::numbers::pi * g.hbar);
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j) {
      double a2 = (g.q(i) * g.q(i) + g.p(j) * g.p(j)) / (2.0 * g.hbar);
      w.values(i, j) = pref * std::exp(-2.0 * a2) * laguerre(n, 4.0 * a2);
    }
  detail::boundary_warning(w, 1.0 / (std::numbers::pi * g.hbar));
  return w;
}

// ----- wavefunctions -----

// Samples on a uniform x grid, renormalized by the trapezoid rule.
struct SampledWavefunction {
  double x_min = 0.0, x_max = 0.0;
  CVec psi;
  double norm_before = 0.0;  // trapezoid norm of the raw samples

  double dx() const { return (x_max - x_min) / (psi.size() - 1); }

  static SampledWavefunction from_function(const std::function<cplx(double)>& f, double x_min, double x_max, int n_x) {
    require(n_x >= 3 && x_max > x_min, ErrorKind::InvalidInput, "SampledWavefunction: bad sampling range");
    SampledWavefunction s;
    s.x_min = x_min;
    s.x_max = x_max;
    s.psi.resize(n_x);
    const double h = (x_max - x_min) / (n_x - 1);
    for (int k = 0; k < n_x; ++k) s.psi(k) = f(x_min + k * h);
    require(s.psi.allFinite(), ErrorKind::InvalidInput, "SampledWavefunction: non-finite samples");
    double norm = 0.0;
    for (int k = 0; k < n_x; ++k) norm += detail::trap_weight(k, n_x) * std::norm(s.psi(k));
    norm *= h;
    require(norm > 0.0, ErrorKind::InvalidInput, "SampledWavefunction: zero wavefunction");
    s.norm_before = norm;
    s.psi /= std::sqrt(norm);
    return s;
  }

  // linear interpolation, zero outside the sampled interval
  cplx at(double x) const {
    if (x < x_min || x > x_max) return 0.0;
    double u = (x - x_min) / dx();
    Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(u), psi.size() - 2);
    double frac = u - static_cast<double>(k);
    return (1.0 - frac) * psi(k) + frac * psi(k + 1);
  }
};

// Oscillator eigenfunction (m = omega = 1):
// (2^n n!)^{-1/2} (pi hbar)^{-1/4} e^{-x^2/(2 hbar)} H_n(x / sqrt(hbar)).
inline double hermite_function(int n, double x, double hbar = 1.0) {
  require(n >= 0, ErrorKind::OutOfRange, "hermite_function: n must be >= 0");
  // normalized recurrence: h_{k+1} = sqrt(2/(k+1)) y h_k - sqrt(k/(k+1)) h_{k-1}
  const double y = x / std::sqrt(hbar);
  double prev = std::pow(std::numbers::pi * hbar, -0.25) * std::exp(-0.5 * y * y);
  if (n == 0) return prev;
  double cur = std::sqrt(2.0) * y * prev;
  for (int k = 1; k < n; ++k) {
    double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// W(q, p) = (1 / 2 pi hbar) int dx e^{-i p x / hbar} psi(q + x/2) conj(psi(q - x/2)),
// taken over u = q + x/2 on the sample nodes (trapezoid), the mirrored point interpolated.
inline WignerGrid wigner_from_wavefunction(const SampledWavefunction& wf, const PhaseSpaceGrid& g) {
  WignerGrid w = detail::make_grid(g);
  const Eigen::Index nx = wf.psi.size();
  const double h = wf.dx();
  if (h > 0.25 * std::min(g.dq(), g.dp()))
    w.warnings.push_back("wavefunction sampling is coarser than a quarter of the grid spacing");
  const double bound = 1.0 / (std::numbers::pi * g.hbar);
  const double pref = 2.0 * h / (2.0 * std::numbers::pi * g.hbar);
  std::vector<cplx> mirrored(nx);
  double worst_imag = 0.0;
  for (int i = 0; i < g.n_q; ++i) {
    const double q = g.q(i);
    for (Eigen::Index k = 0; k < nx; ++k) mirrored[k] = std::conj(wf.at(2.0 * q - (wf.x_min + k * h)));
    for (int j = 0; j < g.n_p; ++j) {
      const double p = g.p(j);
      // phase e^{-2 i p (u - q) / hbar} advanced by a fixed rotation per node
      const cplx step = std::polar(1.0, -2.0 * p * h / g.hbar);
      cplx phase = std::polar(1.0, -2.0 * p * (wf.x_min - q) / g.hbar);
      cplx acc = 0.0;
      for (Eigen::Index k = 0; k < nx; ++k) {
        if (k % 256 == 0) phase = std::polar(1.0, -2.0 * p * (wf.x_min + k * h - q) / g.hbar);
        acc += detail::trap_weight(static_cast<int>(k), static_cast<int>(nx)) * phase * wf.psi(k) * mirrored[k];
        phase *= step;
      }
      acc *= pref;
      worst_imag = std::max(worst_imag, std::abs(acc.imag()));
      w.values(i, j) = acc.real();
    }
  }
  if (worst_imag > kTolImag * bound * 1e3)
    throw Error(ErrorKind::QuadratureFailure,
                "wigner_from_wavefunction: imaginary residue " + std::to_string(worst_imag));
  if (worst_imag > kTolImag * bound)
    w.warnings.push_back("imaginary residue " + std::to_string(worst_imag) + " above tolerance");
  detail::boundary_warning(w, bound);
  return w;
}

// ----- integrals and diagnostics -----

inline double integrate(const WignerGrid& w) {
  const auto& g = w.grid;
  double s = 0.0;
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j)
      s += detail::trap_weight(i, g.n_q) * detail::trap_weight(j, g.n_p) * w.values(i, j);
  return s * g.dq() * g.dp();
}

// rho(q) = int W dp
inline Vec marginal_q(const WignerGrid& w) {
  const auto& g = w.grid;
  Vec m = Vec::Zero(g.n_q);
  for (int i = 0; i < g.n_q; ++i) {
    for (int j = 0; j < g.n_p; ++j) m(i) += detail::trap_weight(j, g.n_p) * w.values(i, j);
    m(i) *= g.dp();
  }
  return m;
}

inline Vec marginal_p(const WignerGrid& w) {
  const auto& g = w.grid;
  Vec m = Vec::Zero(g.n_p);
  for (int j = 0; j < g.n_p; ++j) {
    for (int i = 0; i < g.n_q; ++i) m(j) += detail::trap_weight(i, g.n_q) * w.values(i, j);
    m(j) *= g.dq();
  }
  return m;
}

// Tr(rho1 rho2) = 2 pi hbar int W1 W2
inline double overlap(const WignerGrid& a, const WignerGrid& b) {
  if (!a.grid.same_as(b.grid)) throw Error(ErrorKind::GridMismatch, "overlap: grids differ");
  WignerGrid prod{a.grid, a.values.cwiseProduct(b.values), {}};
  return 2.0 * std::numbers::pi * a.grid.hbar * integrate(prod);
}

struct GridDiagnostics {
  double normalization = 0.0;
  double purity = 0.0;  // 2 pi hbar int W^2
  double max_value = 0.0;
  double min_value = 0.0;
  double max_abs = 0.0;
  double negativity_volume = 0.0;  // int max(-W, 0)
  bool within_bound = false;       // |W| <= 1/(pi hbar) + tol
};

inline GridDiagnostics purity_and_bounds(const WignerGrid& w) {
  GridDiagnostics d;
  d.normalization = integrate(w);
  d.purity = overlap(w, w);
  d.max_value = w.values.maxCoeff();
  d.min_value = w.values.minCoeff();
  d.max_abs = w.values.cwiseAbs().maxCoeff();
  WignerGrid neg{w.grid, (-w.values).cwiseMax(0.0), {}};
  d.negativity_volume = integrate(neg);
  d.within_bound = d.max_abs <= 1.0 / (std::numbers::pi * w.grid.hbar) + kTolGrid;
  return d;
}

// Mean and covariance (sigma = 2<x x> - 2<x><x>, symmetric ordering) from grid moments.
inline GaussianState grid_moments(const WignerGrid& w) {
  const auto& g = w.grid;
  double m0 = 0, mq = 0, mp = 0, mqq = 0, mpp = 0, mqp = 0;
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j) {
      double wt = detail::trap_weight(i, g.n_q) * detail::trap_weight(j, g.n_p) * w.values(i, j);
      double q = g.q(i), p = g.p(j);
      m0 += wt;
      mq += wt * q;
      mp += wt * p;
      mqq += wt * q * q;
      mpp += wt * p * p;
      mqp += wt * q * p;
    }
  mq /= m0;
  mp /= m0;
  Vec mean(2);
  mean << mq, mp;
  Mat cov(2, 2);
  cov << 2 * (mqq / m0 - mq * mq), 2 * (mqp / m0 - mq * mp), 2 * (mqp / m0 - mq * mp), 2 * (mpp / m0 - mp * mp);
  return GaussianState(mean, cov);
}

}  // namespace phasespace
