// types.hpp: shared aliases, tolerances and the error type
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace phasespace {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// ----- tolerances -----

inline constexpr double kTolSymplectic = 1e-10;
inline constexpr double kTolSymmetric = 1e-10;
inline constexpr double kTolPhysical = 1e-8;
inline constexpr double kTolPure = 1e-9;
inline constexpr double kTolWilliamson = 1e-8;
inline constexpr double kTolReal = 1e-8;
inline constexpr double kTolImag = 1e-8;
inline constexpr double kTolGrid = 1e-6;
inline constexpr double kTolTail = 1e-12;

// ----- errors -----

enum class ErrorKind {
  InvalidDimension,
  InvalidInput,
  NotSymmetric,
  Unphysical,
  OrderingMismatch,
  IndexOutOfRange,
  SingularMatrix,
  NotPositiveDefinite,
  NumericOverflow,
  NumericDegeneracy,
  DiagonalizationFailure,
  InternalConsistency,
  NotPure,
  Truncation,
  OutOfRange,
  QuadratureFailure,
  GridMismatch,
  NoGroundState,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotSymmetric: return "not-symmetric";
    case ErrorKind::Unphysical: return "unphysical";
    case ErrorKind::OrderingMismatch: return "ordering-mismatch";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::NotPositiveDefinite: return "not-positive-definite";
    case ErrorKind::NumericOverflow: return "numeric-overflow";
    case ErrorKind::NumericDegeneracy: return "numeric-degeneracy";
    case ErrorKind::DiagonalizationFailure: return "diagonalization-failure";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::NotPure: return "not-pure";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::NoGroundState: return "no-ground-state";
    case ErrorKind::Parse: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ----- small helpers -----

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace phasespace
