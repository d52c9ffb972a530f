// gaussian_state.hpp: Gaussian states as (mean, covariance) and standard constructors
#pragma once

#include "symplectic.hpp"
#include "williamson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

namespace phasespace {

// Covariance convention: sigma_ij = <{Theta_i, Theta_j}> - 2 <Theta_i><Theta_j>,
// with q = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2, so the vacuum has sigma = I.
class GaussianState {
 public:
  GaussianState() = default;

  GaussianState(Vec mean, Mat cov, Ordering ordering = Ordering::Pairwise) : ordering_(ordering) {
    n_modes_ = modes_from_dim(cov.rows(), "GaussianState");
    require(cov.cols() == cov.rows(), ErrorKind::InvalidDimension, "GaussianState: covariance must be square");
    require(mean.size() == cov.rows(), ErrorKind::InvalidDimension,
            "GaussianState: mean has length " + std::to_string(mean.size()) + ", covariance is " +
                std::to_string(cov.rows()) + "x" + std::to_string(cov.cols()));
    require(mean.allFinite(), ErrorKind::InvalidInput, "GaussianState: mean has non-finite entries");
    cov_ = symmetrized(cov, "GaussianState");
    mean_ = std::move(mean);
  }

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  Ordering ordering() const { return ordering_; }
  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }

  GaussianState to_ordering(Ordering o) const {
    if (o == ordering_) return *this;
    return GaussianState(reorder(mean_, ordering_, o), reorder(cov_, ordering_, o), o);
  }

 private:
  int n_modes_ = 0;
  Ordering ordering_ = Ordering::Pairwise;
  Vec mean_;
  Mat cov_;
};

// ----- constructors -----

inline GaussianState vacuum(int n_modes = 1) {
  require(n_modes >= 1, ErrorKind::InvalidDimension, "vacuum: n_modes must be >= 1");
  return GaussianState(Vec::Zero(2 * n_modes), Mat::Identity(2 * n_modes, 2 * n_modes));
}

// nu = coth(beta omega / 2) = 2 nbar + 1
inline GaussianState thermal(double nu) {
  require(std::isfinite(nu), ErrorKind::InvalidInput, "thermal: nu must be finite");
  if (nu < 1.0 - kTolPhysical)
    throw Error(ErrorKind::Unphysical, "thermal: nu = " + std::to_string(nu) + " < 1");
  return GaussianState(Vec::Zero(2), std::max(nu, 1.0) * Mat::Identity(2, 2));
}

inline double thermal_nu_from_beta(double beta_omega) {
  require(beta_omega > 0.0, ErrorKind::InvalidInput, "thermal_nu_from_beta: beta*omega must be > 0");
  return 1.0 / std::tanh(0.5 * beta_omega);
}

inline GaussianState coherent(const std::vector<cplx>& alphas) {
  require(!alphas.empty(), ErrorKind::InvalidDimension, "coherent: need at least one amplitude");
  const int n = static_cast<int>(alphas.size());
  Vec mean(2 * n);
  for (int k = 0; k < n; ++k) {
    require(std::isfinite(alphas[k].real()) && std::isfinite(alphas[k].imag()), ErrorKind::InvalidInput,
            "coherent: amplitude must be finite");
    mean(2 * k) = std::sqrt(2.0) * alphas[k].real();
    mean(2 * k + 1) = std::sqrt(2.0) * alphas[k].imag();
  }
  return GaussianState(mean, Mat::Identity(2 * n, 2 * n));
}

inline GaussianState coherent(cplx alpha) { return coherent(std::vector<cplx>{alpha}); }

inline GaussianState squeezed_vacuum(double r, double theta = 0.0) {
  require(std::isfinite(r) && std::isfinite(theta), ErrorKind::InvalidInput, "squeezed_vacuum: non-finite parameter");
  require(r >= 0.0, ErrorKind::InvalidInput, "squeezed_vacuum: r must be >= 0");
  const double c = std::cosh(2 * r), s = std::sinh(2 * r);
  require(std::isfinite(c), ErrorKind::NumericOverflow, "squeezed_vacuum: r too large");
  Mat cov(2, 2);
  cov << c - std::cos(theta) * s, -std::sin(theta) * s,  //
      -std::sin(theta) * s, c + std::cos(theta) * s;
  return GaussianState(Vec::Zero(2), cov);
}

// Two-mode squeezed vacuum with reduced covariance cosh(r) I per mode.
inline GaussianState two_mode_squeezed_vacuum(double r, double theta = 0.0) {
  require(std::isfinite(r) && std::isfinite(theta), ErrorKind::InvalidInput,
          "two_mode_squeezed_vacuum: non-finite parameter");
  require(r >= 0.0, ErrorKind::InvalidInput, "two_mode_squeezed_vacuum: r must be >= 0");
  const double ch = std::cosh(r), sh = std::sinh(r), c = std::cos(theta), s = std::sin(theta);
  require(std::isfinite(ch), ErrorKind::NumericOverflow, "two_mode_squeezed_vacuum: r too large");
  Mat cov(4, 4);
  cov << ch, 0, -c * sh, -s * sh,  //
      0, ch, -s * sh, c * sh,      //
      -c * sh, -s * sh, ch, 0,     //
      -s * sh, c * sh, 0, ch;
  return GaussianState(Vec::Zero(4), cov);
}

// ----- composition -----

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  if (a.ordering() != b.ordering())
    throw Error(ErrorKind::OrderingMismatch, "tensor: states use different orderings");
  GaussianState pa = a.to_ordering(Ordering::Pairwise), pb = b.to_ordering(Ordering::Pairwise);
  const int da = pa.dim(), db = pb.dim();
  Vec mean(da + db);
  mean << pa.mean(), pb.mean();
  Mat cov = Mat::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = pa.cov();
  cov.bottomRightCorner(db, db) = pb.cov();
  return GaussianState(mean, cov).to_ordering(a.ordering());
}

inline GaussianState partial_trace(const GaussianState& st, const std::vector<int>& keep) {
  require(!keep.empty(), ErrorKind::IndexOutOfRange, "partial_trace: keep list is empty");
  std::set<int> seen;
  for (int k : keep) {
    require(k >= 0 && k < st.n_modes(), ErrorKind::IndexOutOfRange,
            "partial_trace: mode " + std::to_string(k) + " out of range for " + std::to_string(st.n_modes()) +
                " modes");
    require(seen.insert(k).second, ErrorKind::IndexOutOfRange, "partial_trace: duplicate mode index");
  }
  const int m = static_cast<int>(keep.size()), n = st.n_modes();
  const Ordering o = st.ordering();
  std::vector<int> idx(2 * m);
  for (int j = 0; j < m; ++j) {
    idx[q_index(j, m, o)] = q_index(keep[j], n, o);
    idx[p_index(j, m, o)] = p_index(keep[j], n, o);
  }
  Vec mean(2 * m);
  Mat cov(2 * m, 2 * m);
  for (int i = 0; i < 2 * m; ++i) {
    mean(i) = st.mean()(idx[i]);
    for (int j = 0; j < 2 * m; ++j) cov(i, j) = st.cov()(idx[i], idx[j]);
  }
  return GaussianState(mean, cov, o);
}

// ----- diagnostics -----

struct PhysicalityReport {
  bool ok = false;
  double min_eig_uncertainty = 0.0;  // min eigenvalue of sigma + i Omega^{-1}
  double min_symplectic_eig = 0.0;   // NaN if sigma is not positive definite
};

inline PhysicalityReport physicality_check(const GaussianState& st, double tol = kTolPhysical) {
  PhysicalityReport r;
  auto form = make_symplectic_form(st.n_modes(), st.ordering());
  CMat h = st.cov().cast<cplx>() + cplx(0.0, 1.0) * form.omega_inv.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  r.min_eig_uncertainty = es.eigenvalues().minCoeff();
  try {
    r.min_symplectic_eig = symplectic_spectrum(st.cov(), st.ordering()).minCoeff();
  } catch (const Error&) {
    r.min_symplectic_eig = std::numeric_limits<double>::quiet_NaN();
  }
  r.ok = r.min_eig_uncertainty >= -tol && std::isfinite(r.min_symplectic_eig) && r.min_symplectic_eig >= 1.0 - tol;
  return r;
}

inline void require_physical(const GaussianState& st, const char* who) {
  auto r = physicality_check(st);
  if (!r.ok)
    throw Error(ErrorKind::Unphysical, std::string(who) + ": covariance violates the uncertainty principle (min nu = " +
                                           std::to_string(r.min_symplectic_eig) + ")");
}

struct PurityReport {
  double purity = 0.0;  // 1 / sqrt(det sigma)
  bool is_pure = false;
};

inline PurityReport purity(const GaussianState& st, double tol = kTolPure) {
  PurityReport r;
  double det = st.cov().determinant();
  require(det > 0.0, ErrorKind::NotPositiveDefinite, "purity: covariance determinant is not positive");
  r.purity = 1.0 / std::sqrt(det);
  r.is_pure = std::abs(r.purity - 1.0) <= tol;
  return r;
}

// Dimensionless Wigner function W(x) = norm * exp(-(x - mean)^T inv_cov (x - mean)).
struct WignerParams {
  double normalization = 0.0;  // 1 / (pi^n sqrt(det sigma))
  Mat inverse_cov;
};

inline WignerParams gaussian_wigner_params(const GaussianState& st) {
  Eigen::LLT<Mat> llt(st.cov());
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::SingularMatrix, "gaussian_wigner_params: covariance is not positive definite");
  double logdet = 2.0 * Mat(llt.matrixL()).diagonal().array().log().sum();
  WignerParams p;
  p.normalization = std::exp(-st.n_modes() * std::log(std::numbers::pi) - 0.5 * logdet);
  p.inverse_cov = llt.solve(Mat::Identity(st.dim(), st.dim()));
  p.inverse_cov = 0.5 * (p.inverse_cov + p.inverse_cov.transpose());
  return p;
}

}  // namespace phasespace
