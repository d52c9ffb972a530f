// entropy.hpp: von Neumann and entanglement entropies of Gaussian states
#pragma once

#include "gaussian_state.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

namespace phasespace {

enum class LogBase { Natural, Two };

inline double log_in(double x, LogBase base) { return base == LogBase::Two ? std::log2(x) : std::log(x); }

// Entropy of one mode with symplectic eigenvalue nu:
// ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2).
inline double mode_entropy(double nu, LogBase base = LogBase::Natural) {
  require(std::isfinite(nu), ErrorKind::InvalidInput, "mode_entropy: nu must be finite");
  if (nu < 1.0 - kTolPhysical) throw Error(ErrorKind::Unphysical, "mode_entropy: nu = " + std::to_string(nu) + " < 1");
  if (nu <= 1.0 + 1e-12) return 0.0;
  const double a = 0.5 * (nu + 1.0), b = 0.5 * (nu - 1.0);
  return a * log_in(a, base) - b * log_in(b, base);
}

struct EntropyResult {
  double total = 0.0;
  std::vector<double> per_mode;
  Vec nu;
  LogBase base = LogBase::Natural;
};

inline EntropyResult von_neumann_entropy(const GaussianState& st, LogBase base = LogBase::Natural) {
  EntropyResult r;
  r.base = base;
  r.nu = symplectic_spectrum(st.cov(), st.ordering());
  for (Eigen::Index k = 0; k < r.nu.size(); ++k) {
    r.per_mode.push_back(mode_entropy(r.nu(k), base));
    r.total += r.per_mode.back();
  }
  return r;
}

// Entropy of the reduced state on `subsystem`; the global state must be pure.
inline EntropyResult entanglement_entropy(const GaussianState& st, const std::vector<int>& subsystem,
                                          LogBase base = LogBase::Natural) {
  std::set<int> uniq(subsystem.begin(), subsystem.end());
  require(!subsystem.empty() && uniq.size() == subsystem.size(), ErrorKind::IndexOutOfRange,
          "entanglement_entropy: subsystem must be a non-empty list of distinct modes");
  require(static_cast<int>(subsystem.size()) < st.n_modes(), ErrorKind::IndexOutOfRange,
          "entanglement_entropy: subsystem must be a proper subset of the modes");
  for (int k : subsystem)
    require(k >= 0 && k < st.n_modes(), ErrorKind::IndexOutOfRange,
            "entanglement_entropy: mode " + std::to_string(k) + " out of range");
  Vec nu = symplectic_spectrum(st.cov(), st.ordering());
  double prod = nu.prod();
  if (std::abs(prod - 1.0) > kTolPure)
    throw Error(ErrorKind::NotPure, "entanglement_entropy: global state is mixed (prod nu = " + std::to_string(prod) +
                                        ")");
  return von_neumann_entropy(partial_trace(st, subsystem), base);
}

// Thermal reading of a two-mode squeezed vacuum written in the Fock basis as
// (1/cosh r) sum_n (-e^{i theta} tanh r)^n |n,n>: each mode looks thermal with
// T = -omega / (2 ln tanh r) and partition function Z = cosh^2 r (k_B = hbar = 1).
struct TmsvTemperature {
  double temperature = 0.0;
  double partition_function = 1.0;
};

inline TmsvTemperature tmsv_temperature(double r, double omega = 1.0) {
  require(std::isfinite(r) && r >= 0.0, ErrorKind::InvalidInput, "tmsv_temperature: r must be >= 0");
  require(omega > 0.0, ErrorKind::InvalidInput, "tmsv_temperature: omega must be positive");
  TmsvTemperature t;
  t.partition_function = std::cosh(r) * std::cosh(r);
  if (r == 0.0) return t;
  double th = std::tanh(r);
  t.temperature = th < 1.0 ? -omega / (2.0 * std::log(th)) : std::numeric_limits<double>::infinity();
  return t;
}

}  // namespace phasespace
