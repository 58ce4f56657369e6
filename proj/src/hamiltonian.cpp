#include "qliang/hamiltonian.hpp"

#include <algorithm>

namespace qliang {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

TermFactor named_factor(FactorKind kind) {
  switch (kind) {
    case FactorKind::PauliX: return {kind, pauli_x()};
    case FactorKind::PauliY: return {kind, pauli_y()};
    case FactorKind::PauliZ: return {kind, pauli_z()};
    case FactorKind::SigmaPlus: return {kind, sigma_plus()};
    case FactorKind::SigmaMinus: return {kind, sigma_minus()};
    case FactorKind::Custom: break;
  }
  throw std::invalid_argument("named_factor: Custom requires an explicit matrix");
}

TermFactor custom_factor(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw std::invalid_argument("custom_factor: square matrix of dimension >= 2 required");
  }
  return {FactorKind::Custom, std::move(m)};
}

std::vector<std::string> OperatorTerm::support() const {
  std::vector<std::string> labels;
  labels.reserve(factors.size());
  for (const auto& [label, f] : factors) labels.push_back(label);
  return labels;
}

bool operator==(const TermFactor& a, const TermFactor& b) {
  return a.kind == b.kind && a.matrix.rows() == b.matrix.rows() &&
         a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix;
}

bool operator==(const OperatorTerm& a, const OperatorTerm& b) {
  return a.coefficient == b.coefficient && a.factors == b.factors;
}

OperatorTerm make_term(double coefficient,
                       const std::vector<std::pair<std::string, TermFactor>>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("make_term: empty factor list; use identity_term for shifts");
  }
  OperatorTerm term;
  term.coefficient = coefficient;
  for (const auto& [label, f] : factors) {
    if (!term.factors.emplace(label, f).second) {
      throw std::invalid_argument("make_term: duplicate factor on site '" + label + "'");
    }
  }
  return term;
}

OperatorTerm identity_term(double coefficient) {
  OperatorTerm term;
  term.coefficient = coefficient;
  return term;
}

HamiltonianSpec make_spec(SiteRegistry registry, std::vector<OperatorTerm> terms) {
  HamiltonianSpec spec{std::move(registry), {}};
  for (auto& t : terms) spec = add_term(std::move(spec), std::move(t));
  return spec;
}

std::vector<OperatorTerm> build_xy_coupling(const std::string& i, const std::string& j,
                                            double eta) {
  if (i == j) throw std::invalid_argument("build_xy_coupling: sites must differ");
  return {
      make_term(eta, {{i, named_factor(FactorKind::SigmaPlus)},
                      {j, named_factor(FactorKind::SigmaMinus)}}),
      make_term(eta, {{i, named_factor(FactorKind::SigmaMinus)},
                      {j, named_factor(FactorKind::SigmaPlus)}}),
  };
}

OperatorTerm build_field_z(const std::string& site, double b) {
  return make_term(b, {{site, named_factor(FactorKind::PauliZ)}});
}

HamiltonianSpec build_star(const SiteRegistry& registry, const std::string& center,
                           const std::vector<std::pair<std::string, double>>& leaves) {
  registry.index_of(center);
  std::set<std::string> seen{center};
  HamiltonianSpec spec{registry, {}};
  for (const auto& [leaf, eta] : leaves) {
    if (!seen.insert(leaf).second) {
      throw std::invalid_argument("build_star: duplicate or center label '" + leaf + "'");
    }
    spec = add_coupling(std::move(spec), leaf, center, eta);
  }
  return spec;
}

namespace {

void require_site(const SiteRegistry& registry, const std::string& label, int dim,
                  const char* who) {
  const int k = registry.index_of(label);
  if (registry.site(k).dim != dim) {
    throw std::invalid_argument(std::string(who) + ": site '" + label + "' has dimension " +
                                std::to_string(registry.site(k).dim) + ", expected " +
                                std::to_string(dim));
  }
}

}  // namespace

HamiltonianSpec add_coupling(HamiltonianSpec spec, const std::string& i, const std::string& j,
                             double eta) {
  require_site(spec.registry, i, 2, "add_coupling");
  require_site(spec.registry, j, 2, "add_coupling");
  for (auto& t : build_xy_coupling(i, j, eta)) spec.terms.push_back(std::move(t));
  return spec;
}

HamiltonianSpec add_field_z(HamiltonianSpec spec, const std::string& site, double b) {
  require_site(spec.registry, site, 2, "add_field_z");
  spec.terms.push_back(build_field_z(site, b));
  return spec;
}

HamiltonianSpec add_term(HamiltonianSpec spec, OperatorTerm term) {
  for (const auto& [label, f] : term.factors) {
    const int k = spec.registry.index_of(label);
    const int d = spec.registry.site(k).dim;
    if (f.matrix.rows() != d || f.matrix.cols() != d) {
      throw std::invalid_argument("add_term: factor dimension mismatch on site '" + label + "'");
    }
  }
  spec.terms.push_back(std::move(term));
  return spec;
}

HamiltonianSpec freeze(const HamiltonianSpec& spec, const FrozenSet& frozen,
                       FrozenLocalTerms local_terms) {
  for (const auto& label : frozen.labels) spec.registry.index_of(label);

  HamiltonianSpec out{spec.registry, {}};
  for (const OperatorTerm& term : spec.terms) {
    bool touches_frozen = false;
    bool inside_frozen = true;
    for (const auto& [label, f] : term.factors) {
      if (frozen.labels.count(label)) {
        touches_frozen = true;
      } else {
        inside_frozen = false;
      }
    }
    const bool keep = term.is_identity_shift() || !touches_frozen ||
                      (local_terms == FrozenLocalTerms::Keep && inside_frozen);
    if (keep) out.terms.push_back(term);
  }
  return out;
}

HermitianOperator materialize(const HamiltonianSpec& spec) {
  const auto dim = static_cast<Eigen::Index>(spec.registry.dimension());
  Matrix sum = Matrix::Zero(dim, dim);
  for (const OperatorTerm& term : spec.terms) {
    if (term.is_identity_shift()) {
      sum += term.coefficient * Matrix::Identity(dim, dim);
      continue;
    }
    std::vector<SiteFactor> factors;
    factors.reserve(term.factors.size());
    for (const auto& [label, f] : term.factors) factors.push_back({label, f.matrix});
    sum += term.coefficient * embed(factors, spec.registry);
  }
  if (hermiticity_deviation(sum) > kHermitianTol) {
    throw std::domain_error(
        "materialize: term sum is not Hermitian (missing conjugate partner?)");
  }
  return HermitianOperator{spec.registry, std::move(sum)};
}

namespace {

Matrix cnot_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix swap_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

void require_unitary(const Matrix& u, double tol, const char* who) {
  const Matrix gram = u.adjoint() * u;
  if (max_abs(Matrix(gram - Matrix::Identity(gram.rows(), gram.cols()))) > tol) {
    throw std::domain_error(std::string(who) + ": matrix is not unitary within tolerance");
  }
}

}  // namespace

Matrix gate_unitary(Gate gate, const std::vector<std::string>& sites,
                    const SiteRegistry& registry) {
  if (sites.size() != 2) {
    throw std::invalid_argument("gate_unitary: named gates act on exactly two sites");
  }
  for (const auto& s : sites) require_site(registry, s, 2, "gate_unitary");
  const Matrix local = (gate == Gate::CNOT) ? cnot_matrix() : swap_matrix();
  Matrix full = embed_operator(local, sites, registry);
  require_unitary(full, 1e-12, "gate_unitary");
  return full;
}

Matrix gate_unitary(const Matrix& custom, const std::vector<std::string>& sites,
                    const SiteRegistry& registry) {
  require_unitary(custom, 1e-12, "gate_unitary");
  Matrix full = embed_operator(custom, sites, registry);
  require_unitary(full, 1e-12, "gate_unitary");
  return full;
}

}  // namespace qliang
