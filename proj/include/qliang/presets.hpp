#pragma once

#include <array>

#include "qliang/bath.hpp"
#include "qliang/core.hpp"
#include "qliang/hamiltonian.hpp"

namespace qliang {

/// Canonical systems used by the bundled scenarios, the validation suite and
/// the acceptance tests.

/// Three qubits A, B, C with XY couplings A-C and B-C.
HamiltonianSpec three_qubit_chain(double eta_ac, double eta_bc);

/// Initial state I_A (x) I_B (x) |0><0|_C on the chain registry.
DensityMatrix three_qubit_mixed_senders();

/// Initial state I_A (x) (p0|0><0| + p1|1><1|)_B (x) |0><0|_C.
DensityMatrix three_qubit_weighted_b(double p0, double p1);

/// Chain with a z field b on the middle qubit C and I_A (x) |0><0|_B (x) I_C.
HamiltonianSpec super_exchange_chain(double b_field);
DensityMatrix super_exchange_initial();

/// Five qubits A..D coupled to the center E with the given strengths.
HamiltonianSpec five_qubit_star(const std::array<double, 4>& leaf_etas);
DensityMatrix five_qubit_star_initial();

/// Reservoir and state defaults of the two-qubit common-bath study:
/// lambda = 1, R = 10, coupling ratio 10:1, psi0 = (|01> + sqrt(2)|10>)/sqrt(3).
struct BathStudy {
  ReservoirSpec reservoir;
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  SingleExcitationState psi0;
};

BathStudy default_bath_study(int n_modes = 401);

}  // namespace qliang
