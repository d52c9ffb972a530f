// williamson.hpp: symplectic spectrum and Williamson diagonalization of SPD matrices
#pragma once

#include "symplectic.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace phasespace {

namespace detail {

// Cholesky factor of a symmetric positive definite matrix, or a typed error.
inline Mat spd_cholesky(const Mat& f, const char* who) {
  Eigen::LLT<Mat> llt(f);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, std::string(who) + ": matrix is not positive definite");
  Eigen::SelfAdjointEigenSolver<Mat> es(f, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::NotPositiveDefinite, std::string(who) + ": matrix is not positive definite");
  return llt.matrixL();
}

}  // namespace detail

// Symplectic eigenvalues of a symmetric positive definite f, ascending.
// f Omega^{-1} is similar to the antisymmetric L^T Omega^{-1} L (f = L L^T), so the
// moduli come from the Hermitian matrix i L^T Omega^{-1} L whose spectrum is {+-nu}.
inline Vec symplectic_spectrum(const Mat& f_in, Ordering ordering = Ordering::Pairwise) {
  int n = modes_from_dim(f_in.rows(), "symplectic_spectrum");
  Mat f = symmetrized(f_in, "symplectic_spectrum");
  Mat l = detail::spd_cholesky(f, "symplectic_spectrum");
  auto form = make_symplectic_form(n, ordering);
  Mat a = l.transpose() * form.omega_inv * l;
  CMat h = cplx(0.0, 1.0) * a.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::DiagonalizationFailure, "symplectic_spectrum: eigensolver did not converge");
  const Vec& ev = es.eigenvalues();  // ascending: -nu_max ... -nu_min, nu_min ... nu_max
  Vec nu(n);
  double scale = std::max(1.0, max_abs(f));
  for (int k = 0; k < n; ++k) {
    double pos = ev(n + k), neg = ev(n - 1 - k);
    if (std::abs(pos + neg) > kTolWilliamson * scale || pos <= 0.0)
      throw Error(ErrorKind::NumericDegeneracy, "symplectic_spectrum: eigenvalues do not pair as +-nu");
    nu(k) = 0.5 * (pos - neg);
  }
  return nu;
}

struct WilliamsonResult {
  Vec nu;                 // ascending
  Mat diagonal;           // (+)_i diag(nu_i, nu_i), in the input ordering
  SymplecticMatrix sigma; // sigma f sigma^T = diagonal
  double diag_residual = 0.0;
  double symplectic_residual = 0.0;
  std::optional<std::string> warning;
};

namespace detail {

// Orthonormal basis of span(cols) picked by pivoted Gram-Schmidt over the
// projections of the standard basis vectors; deterministic for a given subspace.
inline CMat canonical_basis(const CMat& cols) {
  const Eigen::Index n = cols.rows(), d = cols.cols();
  CMat proj = cols * cols.adjoint();
  CMat basis(n, d);
  CMat work = proj;
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double nj = work.col(j).norm();
      if (nj > best_norm * (1.0 + 1e-12)) {
        best_norm = nj;
        best = j;
      }
    }
    CVec v = work.col(best) / best_norm;
    basis.col(k) = v;
    work -= v * (v.adjoint() * work);
  }
  return basis;
}

// Rotate the phase so the largest component is positive imaginary (first one on ties).
inline void fix_phase(Eigen::Ref<CVec> v) {
  double mx = v.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) >= mx * (1.0 - 1e-10)) {
      cplx ph = cplx(0.0, 1.0) * std::conj(v(j)) / std::abs(v(j));
      v *= ph;
      return;
    }
  }
}

inline WilliamsonResult williamson_pairwise(const Mat& f) {
  const int n = static_cast<int>(f.rows() / 2);
  auto form = make_symplectic_form(n, Ordering::Pairwise);
  WilliamsonResult res;
  res.nu = symplectic_spectrum(f, Ordering::Pairwise);

  Eigen::SelfAdjointEigenSolver<Mat> fes(f);
  if (fes.info() != Eigen::Success)
    throw Error(ErrorKind::DiagonalizationFailure, "williamson_decompose: eigensolver did not converge");
  Vec lam = fes.eigenvalues();
  if (lam.minCoeff() <= 1e-12 * lam.maxCoeff())
    res.warning = "ill-conditioned input: eigenvalue ratio " + std::to_string(lam.minCoeff() / lam.maxCoeff());
  Mat v = fes.eigenvectors();
  Mat f_mhalf = v * lam.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();

  // Y = F^{-1/2} Omega F^{-1/2} is antisymmetric; iY is Hermitian with eigenvalues
  // -+1/nu. The eigenvector of Y for +i/nu_k becomes column 2k of U, its conjugate column 2k+1.
  Mat y = f_mhalf * form.omega * f_mhalf;
  CMat iy = cplx(0.0, 1.0) * y.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<CMat> yes(iy);
  if (yes.info() != Eigen::Success)
    throw Error(ErrorKind::DiagonalizationFailure, "williamson_decompose: eigensolver did not converge");
  // ascending eigenvalues: the first n are -1/nu_min ... -1/nu_max, matching ascending nu
  Vec mu = -yes.eigenvalues().head(n);
  CMat u = yes.eigenvectors().leftCols(n);
  for (int k = 0; k < n; ++k) {
    double nu_k = 1.0 / mu(k);
    if (std::abs(nu_k - res.nu(k)) > kTolWilliamson * std::max(1.0, res.nu(k)))
      throw Error(ErrorKind::InternalConsistency, "williamson_decompose: eigenvalue mismatch between solvers");
  }

  // degenerate clusters get a canonical basis before the phase fix
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && std::abs(mu(end) - mu(start)) <= 1e-10 * std::abs(mu(start))) ++end;
    if (end - start > 1) u.middleCols(start, end - start) = canonical_basis(u.middleCols(start, end - start));
    start = end;
  }
  for (int k = 0; k < n; ++k) fix_phase(u.col(k));

  // O = K U^dagger: row 2k = sqrt2 Im(u_k)^T, row 2k+1 = sqrt2 Re(u_k)^T
  const double r2 = std::sqrt(2.0);
  Mat o(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    o.row(2 * k) = r2 * u.col(k).imag().transpose();
    o.row(2 * k + 1) = r2 * u.col(k).real().transpose();
  }
  double orth = max_abs(Mat(o * o.transpose() - Mat::Identity(2 * n, 2 * n)));
  if (orth > kTolReal)
    throw Error(ErrorKind::InternalConsistency, "williamson_decompose: O is not orthogonal, residual " +
                                                    std::to_string(orth));

  Vec sqrt_nu(2 * n);
  res.diagonal = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    sqrt_nu(2 * k) = sqrt_nu(2 * k + 1) = std::sqrt(res.nu(k));
    res.diagonal(2 * k, 2 * k) = res.diagonal(2 * k + 1, 2 * k + 1) = res.nu(k);
  }
  Mat sigma = sqrt_nu.asDiagonal() * o * f_mhalf;
  res.diag_residual = max_abs(Mat(sigma * f * sigma.transpose() - res.diagonal));
  res.symplectic_residual = max_abs(Mat(sigma * form.omega_inv * sigma.transpose() - form.omega_inv));
  double scale = std::max(1.0, max_abs(f));
  if (res.diag_residual > kTolWilliamson * scale)
    throw Error(ErrorKind::InternalConsistency, "williamson_decompose: diagonalization residual " +
                                                    std::to_string(res.diag_residual));
  res.sigma = SymplecticMatrix(std::move(sigma), Ordering::Pairwise, kTolWilliamson);
  return res;
}

}  // namespace detail

// sigma f sigma^T = (+)_i nu_i I_2 with nu ascending. Blockwise input is handled by
// conjugating with the ordering permutation, so the diagonal comes back as
// diag(nu_1..nu_n, nu_1..nu_n). Within degenerate nu the result is unique only up
// to a symplectic orthogonal rotation.
inline WilliamsonResult williamson_decompose(const Mat& f_in, Ordering ordering = Ordering::Pairwise) {
  modes_from_dim(f_in.rows(), "williamson_decompose");
  Mat f = symmetrized(f_in, "williamson_decompose");
  detail::spd_cholesky(f, "williamson_decompose");
  if (ordering == Ordering::Pairwise) return detail::williamson_pairwise(f);
  WilliamsonResult r = detail::williamson_pairwise(reorder(f, Ordering::Blockwise, Ordering::Pairwise));
  r.diagonal = reorder(r.diagonal, Ordering::Pairwise, Ordering::Blockwise);
  r.sigma = r.sigma.to_ordering(Ordering::Blockwise);
  return r;
}

}  // namespace phasespace
