// coupled_oscillators.cpp: entanglement between two coupled oscillators
//
// Prints the normal-mode frequencies, the reduced symplectic eigenvalue and the
// entanglement entropy of one oscillator for a few coupling strengths, and checks
// the entropy against the truncated Fock-space construction of the ground state.
#include <phasespace.hpp>

#include <cmath>
#include <cstdio>

namespace ps = phasespace;

int main() {
  std::printf("%8s %12s %12s %14s %14s\n", "lambda", "omega_+", "nu_reduced", "S_E (nats)", "S_E (Fock)");
  for (double lambda : {0.1, 0.5, 0.75, 2.0, 5.0}) {
    auto h = ps::coupled_oscillators(1.0, 1.0, lambda);
    ps::Vec freqs = ps::symplectic_spectrum(h.f_bar);
    auto ground = ps::normal_mode_ground_state(h);
    double nu = ps::symplectic_spectrum(ps::partial_trace(ground, {0}).cov())(0);
    double s = ps::entanglement_entropy(ground, {0}).total;

    // ground state = vacuum in the centre-of-mass mode, squeezed vacuum in the relative mode
    double r = 0.5 * std::log(freqs(1) / freqs(0));
    auto psi = ps::fock::embed_relative_mode(ps::fock::squeezed_vacuum_vector(r, 0.0, 100));
    double s_fock = ps::fock::fock_entropy(ps::fock::reduced_density(psi, 0));
    std::printf("%8.3f %12.6f %12.8f %14.10f %14.10f\n", lambda, freqs(1), nu, s, s_fock);
  }
  return 0;
}
