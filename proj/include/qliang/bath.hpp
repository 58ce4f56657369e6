#pragma once

#include <string>
#include <vector>

#include "qliang/core.hpp"
#include "qliang/flow.hpp"

namespace qliang {

/// Discretized zero-temperature bosonic reservoir shared by two qubits.
/// omega0 is the qubit transition frequency, lambda the Lorentzian spectral
/// width and big_r the collective coupling strength (total vacuum Rabi
/// frequency Omega_T = big_r * lambda).
struct ReservoirSpec {
  std::vector<double> omegas;
  std::vector<double> couplings;  // g_k >= 0
  double omega0 = 0.0;
  double lambda = 1.0;
  double big_r = 0.0;

  int mode_count() const { return static_cast<int>(omegas.size()); }
  double coupling_norm_squared() const;  // sum g_k^2
};

/// Uniform discretization of a Lorentzian spectral density
/// J(w) = (Omega_T^2 lambda / pi) / ((w - omega0)^2 + lambda^2)
/// over [omega0 - cutoff_width, omega0 + cutoff_width], midpoint rule.
/// Throws when the modes cannot resolve the requested coupling regime
/// (spacing above lambda/2 or window narrower than the Rabi doublet).
ReservoirSpec discretize_lorentzian(double lambda, double big_r, double omega0, int n_modes,
                                    double cutoff_width);

/// Amplitudes (c_a, c_b, c_1..c_N) of the one-excitation sector.
struct SingleExcitationState {
  Complex c_a;
  Complex c_b;
  Vector c_modes;

  double norm() const;
  Vector to_vector() const;
  static SingleExcitationState from_vector(const Vector& v);
};

/// Two-qubit initial state with no excited modes; amplitudes are normalized.
SingleExcitationState qubit_pair_state(Complex c_a, Complex c_b, int n_modes);

/// Normalize a coupling ratio so alpha_a^2 + alpha_b^2 = 1.
std::pair<double, double> normalized_couplings(double ratio_a, double ratio_b);

/// Sector Hamiltonian in the basis (A-excited, B-excited, mode 1..N):
/// diagonal (omega0, omega0, omega_k), H[A,k] = alpha_a g_k, H[B,k] = alpha_b g_k.
HermitianOperator sector_hamiltonian(const ReservoirSpec& reservoir, double alpha_a,
                                     double alpha_b);

SingleExcitationState evolve_sector(const SingleExcitationState& psi0,
                                    const HermitianOperator& h, double t);
SingleExcitationState evolve_sector(const SingleExcitationState& psi0, const Propagator& prop,
                                    double t);

enum class BathQubit { A, B };

/// Directed Liang flow between the two qubits through the common reservoir.
/// The frozen trajectory zeroes the source coupling (alpha_source = 0), which
/// holds the source amplitude; the target entropy is the binary entropy of
/// the target excitation probability (the sector state is globally pure and
/// the single-qubit marginal is diagonal).
FlowSeries bath_flow(const SingleExcitationState& psi0, const ReservoirSpec& reservoir,
                     double alpha_a, double alpha_b, BathQubit source, BathQubit target,
                     const TimeGrid& grid);

double binary_entropy_bits(double p);

}  // namespace qliang
