// symplectic.hpp: symplectic forms, quadrature orderings, symplectic checks
#pragma once

#include "types.hpp"

#include <limits>
#include <string>
#include <vector>

namespace phasespace {

// Pairwise is (q1, p1, q2, p2, ...); Blockwise is (q1, ..., qn, p1, ..., pn).
enum class Ordering { Pairwise, Blockwise };

inline const char* to_string(Ordering o) { return o == Ordering::Pairwise ? "qpqp" : "qqpp"; }

inline Ordering ordering_from_string(const std::string& s) {
  if (s == "qpqp" || s == "pairwise") return Ordering::Pairwise;
  if (s == "qqpp" || s == "blockwise") return Ordering::Blockwise;
  throw Error(ErrorKind::InvalidInput, "unknown ordering '" + s + "'");
}

inline int q_index(int mode, int /*n_modes*/, Ordering o) { return o == Ordering::Pairwise ? 2 * mode : mode; }
inline int p_index(int mode, int n_modes, Ordering o) {
  return o == Ordering::Pairwise ? 2 * mode + 1 : n_modes + mode;
}

// Omega is the matrix whose inverse carries the canonical commutators,
// [Theta_i, Theta_j] = i (Omega^{-1})_{ij}; Omega^{-1} = -Omega.
struct SymplecticForm {
  int n_modes = 0;
  Ordering ordering = Ordering::Pairwise;
  Mat omega;
  Mat omega_inv;

  int dim() const { return 2 * n_modes; }
};

inline SymplecticForm make_symplectic_form(int n_modes, Ordering ordering = Ordering::Pairwise) {
  require(n_modes >= 1, ErrorKind::InvalidDimension, "make_symplectic_form: n_modes must be >= 1");
  SymplecticForm f;
  f.n_modes = n_modes;
  f.ordering = ordering;
  f.omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    int q = q_index(k, n_modes, ordering), p = p_index(k, n_modes, ordering);
    f.omega(q, p) = -1.0;
    f.omega(p, q) = 1.0;
  }
  f.omega_inv = -f.omega;
  return f;
}

inline int modes_from_dim(Eigen::Index dim, const char* who) {
  require(dim > 0 && dim % 2 == 0, ErrorKind::InvalidDimension,
          std::string(who) + ": phase-space dimension must be even and positive, got " + std::to_string(dim));
  return static_cast<int>(dim / 2);
}

// ----- ordering conversion -----

// perm[k] is the index in `to` of the coordinate sitting at index k in `from`.
inline std::vector<int> ordering_permutation(int n_modes, Ordering from, Ordering to) {
  std::vector<int> perm(2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    perm[q_index(k, n_modes, from)] = q_index(k, n_modes, to);
    perm[p_index(k, n_modes, from)] = p_index(k, n_modes, to);
  }
  return perm;
}

inline Mat permutation_matrix(int n_modes, Ordering from, Ordering to) {
  auto perm = ordering_permutation(n_modes, from, to);
  Mat p = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < 2 * n_modes; ++k) p(perm[k], k) = 1.0;
  return p;
}

inline Vec reorder(const Vec& v, Ordering from, Ordering to) {
  int n = modes_from_dim(v.size(), "reorder");
  if (from == to) return v;
  auto perm = ordering_permutation(n, from, to);
  Vec out(v.size());
  for (int k = 0; k < v.size(); ++k) out(perm[k]) = v(k);
  return out;
}

inline Mat reorder(const Mat& m, Ordering from, Ordering to) {
  require(m.rows() == m.cols(), ErrorKind::InvalidDimension, "reorder: matrix must be square");
  int n = modes_from_dim(m.rows(), "reorder");
  if (from == to) return m;
  auto perm = ordering_permutation(n, from, to);
  Mat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

// ----- checks -----

struct SymplecticCheck {
  bool ok = false;
  double residual = 0.0;
};

// Residual max|S Omega^{-1} S^T - Omega^{-1}|. The tolerance scales with ||S||^2
// so strongly squeezing maps are judged on relative accuracy.
inline SymplecticCheck check_symplectic(const Mat& s, const SymplecticForm& form, double tol = kTolSymplectic) {
  require(s.rows() == form.dim() && s.cols() == form.dim(), ErrorKind::InvalidDimension,
          "check_symplectic: matrix is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
              ", form expects " + std::to_string(form.dim()));
  SymplecticCheck c;
  if (!s.allFinite()) {
    c.residual = std::numeric_limits<double>::infinity();
    return c;
  }
  c.residual = max_abs(Mat(s * form.omega_inv * s.transpose() - form.omega_inv));
  double scale = std::max(1.0, max_abs(s) * max_abs(s));
  c.ok = c.residual <= tol * scale;
  return c;
}

inline SymplecticCheck check_symplectic(const Mat& s, Ordering ordering = Ordering::Pairwise,
                                        double tol = kTolSymplectic) {
  return check_symplectic(s, make_symplectic_form(modes_from_dim(s.rows(), "check_symplectic"), ordering), tol);
}

// Square matrix that has passed check_symplectic.
class SymplecticMatrix {
 public:
  SymplecticMatrix() = default;
  SymplecticMatrix(Mat s, Ordering ordering, double tol = kTolSymplectic) : s_(std::move(s)), ordering_(ordering) {
    require(s_.rows() == s_.cols(), ErrorKind::InvalidDimension, "SymplecticMatrix: matrix must be square");
    auto c = check_symplectic(s_, ordering_, tol);
    if (!c.ok)
      throw Error(ErrorKind::InternalConsistency,
                  "SymplecticMatrix: not symplectic, residual " + std::to_string(c.residual));
    residual_ = c.residual;
  }

  const Mat& matrix() const { return s_; }
  Ordering ordering() const { return ordering_; }
  int n_modes() const { return static_cast<int>(s_.rows() / 2); }
  double residual() const { return residual_; }

  SymplecticMatrix inverse() const {
    // S^{-1} = Omega^{-1} S^T Omega
    auto f = make_symplectic_form(n_modes(), ordering_);
    return SymplecticMatrix(f.omega_inv * s_.transpose() * f.omega, ordering_);
  }

  SymplecticMatrix to_ordering(Ordering o) const {
    if (o == ordering_) return *this;
    Mat p = permutation_matrix(n_modes(), ordering_, o);
    return SymplecticMatrix(p * s_ * p.transpose(), o);
  }

 private:
  Mat s_;
  Ordering ordering_ = Ordering::Pairwise;
  double residual_ = 0.0;
};

// Symmetrize a matrix that is symmetric to within tol (relative to its size); reject otherwise.
inline Mat symmetrized(const Mat& m, const char* who, double tol = kTolSymmetric) {
  require(m.rows() == m.cols(), ErrorKind::InvalidDimension, std::string(who) + ": matrix must be square");
  require(m.allFinite(), ErrorKind::InvalidInput, std::string(who) + ": matrix has non-finite entries");
  double asym = max_abs(Mat(m - m.transpose()));
  if (asym > tol * std::max(1.0, max_abs(m)))
    throw Error(ErrorKind::NotSymmetric, std::string(who) + ": asymmetry " + std::to_string(asym));
  return 0.5 * (m + m.transpose());
}

}  // namespace phasespace
