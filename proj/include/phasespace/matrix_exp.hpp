// matrix_exp.hpp: dense matrix exponential (Pade 13, scaling and squaring) and phi_1
#pragma once

#include "types.hpp"

#include <cmath>

namespace phasespace {

namespace detail {

template <typename MatrixT>
MatrixT pade13_expm(const MatrixT& a_in) {
  using Scalar = typename MatrixT::Scalar;
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a_in.rows();
  double norm1 = a_in.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  MatrixT a = a_in / Scalar(std::ldexp(1.0, s));

  MatrixT id = MatrixT::Identity(n, n);
  MatrixT a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
  MatrixT u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  MatrixT u = a * u_inner;
  MatrixT v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  MatrixT r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace detail

inline Mat expm(const Mat& a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidDimension, "expm: matrix must be square");
  require(a.allFinite(), ErrorKind::NumericOverflow, "expm: non-finite input");
  Mat r = detail::pade13_expm(a);
  require(r.allFinite(), ErrorKind::NumericOverflow, "expm: result overflowed");
  return r;
}

inline CMat expm(const CMat& a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidDimension, "expm: matrix must be square");
  require(a.allFinite(), ErrorKind::NumericOverflow, "expm: non-finite input");
  CMat r = detail::pade13_expm(a);
  require(r.allFinite(), ErrorKind::NumericOverflow, "expm: result overflowed");
  return r;
}

struct ExpPhi {
  Mat exp;   // e^A
  Mat phi1;  // sum_m A^m / (m+1)!
};

// Both blocks come from one exponential of [[A, I], [0, 0]].
inline ExpPhi expm_phi1(const Mat& a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidDimension, "expm_phi1: matrix must be square");
  const Eigen::Index n = a.rows();
  if (a.isZero(0.0)) return {Mat::Identity(n, n), Mat::Identity(n, n)};
  Mat big = Mat::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a;
  big.topRightCorner(n, n) = Mat::Identity(n, n);
  Mat e = expm(big);
  return {e.topLeftCorner(n, n), e.topRightCorner(n, n)};
}

}  // namespace phasespace
