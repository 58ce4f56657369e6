#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qliang/core.hpp"

namespace qliang {

enum class FactorKind { PauliX, PauliY, PauliZ, SigmaPlus, SigmaMinus, Custom };

struct TermFactor {
  FactorKind kind = FactorKind::Custom;
  Matrix matrix;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();   // (sigma_x + i sigma_y)/2
Matrix sigma_minus();  // (sigma_x - i sigma_y)/2

TermFactor named_factor(FactorKind kind);
TermFactor custom_factor(Matrix m);

/// coefficient * product of single-site factors. An empty factor map is an
/// identity shift (coefficient * I). Non-Hermitian factors (sigma_+/-) must
/// appear with their conjugate partner in the owning spec; that pairing is
/// validated when the spec is materialized.
struct OperatorTerm {
  double coefficient = 0.0;
  std::map<std::string, TermFactor> factors;

  bool is_identity_shift() const { return factors.empty(); }
  std::vector<std::string> support() const;
};

bool operator==(const TermFactor& a, const TermFactor& b);
bool operator==(const OperatorTerm& a, const OperatorTerm& b);

OperatorTerm make_term(double coefficient,
                       const std::vector<std::pair<std::string, TermFactor>>& factors);
OperatorTerm identity_term(double coefficient);

/// Term-level Hamiltonian on a labeled registry. Immutable value; builders
/// return new specs.
struct HamiltonianSpec {
  SiteRegistry registry;
  std::vector<OperatorTerm> terms;
};

HamiltonianSpec make_spec(SiteRegistry registry, std::vector<OperatorTerm> terms = {});

/// Exchange coupling eta (sigma_+i sigma_-j + sigma_-i sigma_+j): two terms.
std::vector<OperatorTerm> build_xy_coupling(const std::string& i, const std::string& j,
                                            double eta);

/// Constant field b sigma_z on one site.
OperatorTerm build_field_z(const std::string& site, double b);

/// Star network: XY couplings between each leaf and the center.
HamiltonianSpec build_star(const SiteRegistry& registry, const std::string& center,
                           const std::vector<std::pair<std::string, double>>& leaves);

HamiltonianSpec add_coupling(HamiltonianSpec spec, const std::string& i, const std::string& j,
                             double eta);
HamiltonianSpec add_field_z(HamiltonianSpec spec, const std::string& site, double b);
HamiltonianSpec add_term(HamiltonianSpec spec, OperatorTerm term);

/// Set of site labels to remove from the dynamics.
struct FrozenSet {
  std::set<std::string> labels;
};

/// Whether freezing also drops terms supported entirely inside the frozen
/// set (their free Hamiltonians). Local unitaries on frozen sites cannot
/// change any entropy, so Drop is the default.
enum class FrozenLocalTerms { Drop, Keep };

/// Remove every term whose support intersects the frozen set; the remaining
/// spec acts as the identity on frozen sites. Idempotent; commutes with
/// union of frozen sets. Freezing every site yields the zero Hamiltonian.
HamiltonianSpec freeze(const HamiltonianSpec& spec, const FrozenSet& frozen,
                       FrozenLocalTerms local_terms = FrozenLocalTerms::Drop);

/// Full-space Hermitian sum of all terms. Throws std::domain_error when the
/// sum is not Hermitian (missing h.c. partner).
HermitianOperator materialize(const HamiltonianSpec& spec);

enum class Gate { CNOT, SWAP };

/// Named two-qubit gate embedded on the full registry (first listed site is
/// the control for CNOT). The result is unitary within 1e-12.
Matrix gate_unitary(Gate gate, const std::vector<std::string>& sites,
                    const SiteRegistry& registry);

/// Custom gate on the listed sites, embedded on the full registry; the input
/// must be unitary within 1e-12.
Matrix gate_unitary(const Matrix& custom, const std::vector<std::string>& sites,
                    const SiteRegistry& registry);

}  // namespace qliang
