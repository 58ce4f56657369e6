#include "qliang/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace qliang {

SiteRegistry::SiteRegistry(std::vector<Site> sites, std::size_t dim_cap)
    : sites_(std::move(sites)), dim_cap_(dim_cap) {
  std::set<std::string> seen;
  dim_ = 1;
  for (const Site& s : sites_) {
    if (s.label.empty()) {
      throw std::invalid_argument("SiteRegistry: empty site label");
    }
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("SiteRegistry: duplicate site label '" + s.label + "'");
    }
    if (s.dim < 2) {
      throw std::invalid_argument("SiteRegistry: site '" + s.label + "' has dimension < 2");
    }
    dim_ *= static_cast<std::size_t>(s.dim);
    if (dim_ > dim_cap_) {
      throw DimensionCapError("SiteRegistry: total dimension exceeds cap " +
                              std::to_string(dim_cap_));
    }
  }
}

bool SiteRegistry::has(const std::string& label) const {
  return std::any_of(sites_.begin(), sites_.end(),
                     [&](const Site& s) { return s.label == label; });
}

int SiteRegistry::index_of(const std::string& label) const {
  for (int k = 0; k < site_count(); ++k) {
    if (sites_[static_cast<std::size_t>(k)].label == label) return k;
  }
  throw std::invalid_argument("unknown site label '" + label + "'");
}

SiteRegistry SiteRegistry::sub_registry(const std::vector<std::string>& labels) const {
  std::vector<char> mask(sites_.size(), 0);
  for (const auto& l : labels) mask[static_cast<std::size_t>(index_of(l))] = 1;
  std::vector<Site> kept;
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    if (mask[k]) kept.push_back(sites_[k]);
  }
  return SiteRegistry(std::move(kept), dim_cap_);
}

bool SiteRegistry::operator==(const SiteRegistry& other) const {
  if (sites_.size() != other.sites_.size()) return false;
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    if (sites_[k].label != other.sites_[k].label || sites_[k].dim != other.sites_[k].dim) {
      return false;
    }
  }
  return true;
}

SiteRegistry qubit_registry(const std::vector<std::string>& labels, std::size_t dim_cap) {
  std::vector<Site> sites;
  sites.reserve(labels.size());
  for (const auto& l : labels) sites.push_back({l, 2});
  return SiteRegistry(std::move(sites), dim_cap);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_deviation(const Matrix& m) {
  return max_abs(Matrix(m - m.adjoint()));
}

namespace detail {

std::vector<std::size_t> site_strides(const SiteRegistry& registry) {
  const int n = registry.site_count();
  std::vector<std::size_t> strides(static_cast<std::size_t>(n), 1);
  for (int k = n - 2; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] =
        strides[static_cast<std::size_t>(k + 1)] *
        static_cast<std::size_t>(registry.site(k + 1).dim);
  }
  return strides;
}

}  // namespace detail

namespace {

void require_square(const Matrix& m, std::size_t dim, const char* who) {
  if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument(std::string(who) + ": matrix dimension mismatch");
  }
}

Eigen::VectorXd clipped_spectrum(const Matrix& entries, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -kPsdTol) {
    throw std::domain_error(std::string(who) + ": state is not positive semidefinite (min eigenvalue " +
                            std::to_string(ev.minCoeff()) + ")");
  }
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  return ev;
}

}  // namespace

DensityMatrix make_density_matrix(SiteRegistry registry, Matrix entries) {
  require_square(entries, registry.dimension(), "make_density_matrix");
  if (hermiticity_deviation(entries) > kHermitianTol) {
    throw std::domain_error("make_density_matrix: matrix is not Hermitian within 1e-10");
  }
  const double tr = entries.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::domain_error("make_density_matrix: trace deviates from 1 by " +
                            std::to_string(tr - 1.0));
  }
  clipped_spectrum(entries, "make_density_matrix");  // throws if non-PSD
  return DensityMatrix{std::move(registry), std::move(entries)};
}

HermitianOperator make_hermitian_operator(SiteRegistry registry, Matrix entries) {
  require_square(entries, registry.dimension(), "make_hermitian_operator");
  if (hermiticity_deviation(entries) > kHermitianTol) {
    throw std::domain_error("make_hermitian_operator: matrix is not Hermitian within 1e-10");
  }
  return HermitianOperator{std::move(registry), std::move(entries)};
}

DensityMatrix pure_state(const SiteRegistry& registry, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(registry.dimension())) {
    throw std::invalid_argument("pure_state: ket dimension mismatch");
  }
  const double n2 = ket.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("pure_state: zero ket");
  Matrix rho = (ket * ket.adjoint()) / n2;
  return DensityMatrix{registry, std::move(rho)};
}

DensityMatrix basis_state(const SiteRegistry& registry, const std::vector<int>& levels) {
  if (static_cast<int>(levels.size()) != registry.site_count()) {
    throw std::invalid_argument("basis_state: one level per site required");
  }
  const auto strides = detail::site_strides(registry);
  std::size_t index = 0;
  for (int k = 0; k < registry.site_count(); ++k) {
    const int d = registry.site(k).dim;
    const int l = levels[static_cast<std::size_t>(k)];
    if (l < 0 || l >= d) throw std::invalid_argument("basis_state: level out of range");
    index += static_cast<std::size_t>(l) * strides[static_cast<std::size_t>(k)];
  }
  Vector ket = Vector::Zero(static_cast<Eigen::Index>(registry.dimension()));
  ket[static_cast<Eigen::Index>(index)] = 1.0;
  return pure_state(registry, ket);
}

DensityMatrix product_state(const SiteRegistry& registry, const std::vector<Matrix>& site_states) {
  if (static_cast<int>(site_states.size()) != registry.site_count()) {
    throw std::invalid_argument("product_state: one state per site required");
  }
  Matrix acc = Matrix::Identity(1, 1);
  for (int k = 0; k < registry.site_count(); ++k) {
    const Matrix& s = site_states[static_cast<std::size_t>(k)];
    require_square(s, static_cast<std::size_t>(registry.site(k).dim), "product_state");
    acc = kronecker(acc, s);
  }
  return make_density_matrix(registry, std::move(acc));
}

Matrix maximally_mixed_site(int dim) {
  return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

Matrix basis_site(int dim, int level) {
  if (level < 0 || level >= dim) throw std::invalid_argument("basis_site: level out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(level, level) = 1.0;
  return m;
}

Matrix plus_site() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix embed(const std::vector<SiteFactor>& factors, const SiteRegistry& registry) {
  std::vector<const Matrix*> per_site(static_cast<std::size_t>(registry.site_count()), nullptr);
  for (const SiteFactor& f : factors) {
    const int k = registry.index_of(f.label);
    if (per_site[static_cast<std::size_t>(k)] != nullptr) {
      throw std::invalid_argument("embed: duplicate factor for site '" + f.label + "'");
    }
    const int d = registry.site(k).dim;
    if (f.matrix.rows() != d || f.matrix.cols() != d) {
      throw std::invalid_argument("embed: factor dimension mismatch on site '" + f.label + "'");
    }
    per_site[static_cast<std::size_t>(k)] = &f.matrix;
  }
  Matrix acc = Matrix::Identity(1, 1);
  for (int k = 0; k < registry.site_count(); ++k) {
    const Matrix* f = per_site[static_cast<std::size_t>(k)];
    if (f != nullptr) {
      acc = kronecker(acc, *f);
    } else {
      acc = kronecker(acc, Matrix::Identity(registry.site(k).dim, registry.site(k).dim));
    }
  }
  return acc;
}

Matrix embed_operator(const Matrix& op, const std::vector<std::string>& sites,
                      const SiteRegistry& registry) {
  std::vector<int> site_idx;
  std::set<int> seen;
  std::size_t op_dim = 1;
  for (const auto& label : sites) {
    const int k = registry.index_of(label);
    if (!seen.insert(k).second) {
      throw std::invalid_argument("embed_operator: duplicate site '" + label + "'");
    }
    site_idx.push_back(k);
    op_dim *= static_cast<std::size_t>(registry.site(k).dim);
  }
  require_square(op, op_dim, "embed_operator");

  const auto strides = detail::site_strides(registry);
  // Offsets of each joint-basis index of `sites` within the full index.
  std::vector<std::size_t> listed_base(op_dim, 0);
  for (std::size_t a = 0; a < op_dim; ++a) {
    std::size_t rem = a;
    for (std::size_t pos = sites.size(); pos-- > 0;) {
      const int k = site_idx[pos];
      const std::size_t d = static_cast<std::size_t>(registry.site(k).dim);
      listed_base[a] += (rem % d) * strides[static_cast<std::size_t>(k)];
      rem /= d;
    }
  }
  // Offsets over the unlisted sites.
  std::vector<int> rest_idx;
  for (int k = 0; k < registry.site_count(); ++k) {
    if (seen.find(k) == seen.end()) rest_idx.push_back(k);
  }
  std::size_t rest_dim = 1;
  for (int k : rest_idx) rest_dim *= static_cast<std::size_t>(registry.site(k).dim);
  std::vector<std::size_t> rest_base(rest_dim, 0);
  for (std::size_t u = 0; u < rest_dim; ++u) {
    std::size_t rem = u;
    for (std::size_t pos = rest_idx.size(); pos-- > 0;) {
      const int k = rest_idx[pos];
      const std::size_t d = static_cast<std::size_t>(registry.site(k).dim);
      rest_base[u] += (rem % d) * strides[static_cast<std::size_t>(k)];
      rem /= d;
    }
  }

  const auto dim = static_cast<Eigen::Index>(registry.dimension());
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < op_dim; ++a) {
    for (std::size_t b = 0; b < op_dim; ++b) {
      const Complex v = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v == Complex(0.0, 0.0)) continue;
      for (std::size_t u = 0; u < rest_dim; ++u) {
        out(static_cast<Eigen::Index>(listed_base[a] + rest_base[u]),
            static_cast<Eigen::Index>(listed_base[b] + rest_base[u])) = v;
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const SiteRegistry& reg = rho.registry;
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");

  std::vector<char> mask(static_cast<std::size_t>(reg.site_count()), 0);
  for (const auto& l : keep) mask[static_cast<std::size_t>(reg.index_of(l))] = 1;

  std::vector<int> keep_idx, traced_idx;
  for (int k = 0; k < reg.site_count(); ++k) {
    (mask[static_cast<std::size_t>(k)] ? keep_idx : traced_idx).push_back(k);
  }

  const auto strides = detail::site_strides(reg);
  std::size_t keep_dim = 1;
  for (int k : keep_idx) keep_dim *= static_cast<std::size_t>(reg.site(k).dim);
  std::size_t traced_dim = 1;
  for (int k : traced_idx) traced_dim *= static_cast<std::size_t>(reg.site(k).dim);

  auto bases = [&](const std::vector<int>& idx, std::size_t count) {
    std::vector<std::size_t> base(count, 0);
    for (std::size_t v = 0; v < count; ++v) {
      std::size_t rem = v;
      for (std::size_t pos = idx.size(); pos-- > 0;) {
        const int k = idx[pos];
        const std::size_t d = static_cast<std::size_t>(reg.site(k).dim);
        base[v] += (rem % d) * strides[static_cast<std::size_t>(k)];
        rem /= d;
      }
    }
    return base;
  };
  const std::vector<std::size_t> keep_base = bases(keep_idx, keep_dim);
  const std::vector<std::size_t> traced_base = bases(traced_idx, traced_dim);

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
  for (std::size_t r = 0; r < keep_dim; ++r) {
    for (std::size_t c = 0; c < keep_dim; ++c) {
      Complex acc(0.0, 0.0);
      for (std::size_t m = 0; m < traced_dim; ++m) {
        acc += rho.entries(static_cast<Eigen::Index>(keep_base[r] + traced_base[m]),
                           static_cast<Eigen::Index>(keep_base[c] + traced_base[m]));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }

  std::vector<std::string> kept_labels;
  for (int k : keep_idx) kept_labels.push_back(reg.site(k).label);
  return DensityMatrix{reg.sub_registry(kept_labels), std::move(out)};
}

double entropy_of_spectrum(RealVector eigenvalues) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < 0.0) eigenvalues[i] = 0.0;
    sum += eigenvalues[i];
  }
  if (sum <= 0.0) throw std::domain_error("entropy_of_spectrum: zero spectrum");
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double p = eigenvalues[i] / sum;
    if (p > kEigenvalueClip) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(clipped_spectrum(rho.entries, "von_neumann_entropy"));
}

EigenSystem hermitian_eig(const HermitianOperator& h) {
  if (hermiticity_deviation(h.entries) > kHermitianTol) {
    throw std::domain_error("hermitian_eig: operator is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  }
  EigenSystem sys{es.eigenvalues(), es.eigenvectors()};
  const Matrix recon = sys.eigenvectors *
                       sys.eigenvalues.cast<Complex>().asDiagonal() *
                       sys.eigenvectors.adjoint();
  if (max_abs(Matrix(recon - h.entries)) >= 1e-9) {
    throw std::runtime_error("hermitian_eig: reconstruction error above 1e-9");
  }
  const Matrix gram = sys.eigenvectors.adjoint() * sys.eigenvectors;
  if (max_abs(Matrix(gram - Matrix::Identity(gram.rows(), gram.cols()))) >= 1e-9) {
    throw std::runtime_error("hermitian_eig: eigenvector basis not unitary within 1e-9");
  }
  return sys;
}

Propagator::Propagator(const HermitianOperator& h)
    : registry_(h.registry), eig_(hermitian_eig(h)) {}

Matrix Propagator::unitary(double t) const {
  Vector phases(eig_.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(Complex(0.0, -eig_.eigenvalues[i] * t));
  }
  return eig_.eigenvectors * phases.asDiagonal() * eig_.eigenvectors.adjoint();
}

DensityMatrix Propagator::evolve(const DensityMatrix& rho0, double t) const {
  if (rho0.registry != registry_) {
    throw std::invalid_argument("evolve: state and Hamiltonian registries differ");
  }
  if (t == 0.0) return rho0;
  const Matrix u = unitary(t);
  return DensityMatrix{rho0.registry, u * rho0.entries * u.adjoint()};
}

Vector Propagator::evolve_ket(const Vector& psi0, double t) const {
  if (psi0.size() != static_cast<Eigen::Index>(registry_.dimension())) {
    throw std::invalid_argument("evolve_ket: ket dimension mismatch");
  }
  if (t == 0.0) return psi0;
  Vector coeffs = eig_.eigenvectors.adjoint() * psi0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::exp(Complex(0.0, -eig_.eigenvalues[i] * t));
  }
  return eig_.eigenvectors * coeffs;
}

DensityMatrix evolve(const DensityMatrix& rho0, const HermitianOperator& h, double t) {
  return Propagator(h).evolve(rho0, t);
}

StateReport validate_state(const DensityMatrix& rho, double tol) {
  StateReport report;
  report.hermiticity_deviation = hermiticity_deviation(rho.entries);
  report.trace_deviation = std::abs(rho.entries.trace().real() - 1.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
  report.hermitian_ok = report.hermiticity_deviation <= tol;
  report.trace_ok = report.trace_deviation <= tol;
  report.psd_ok = report.min_eigenvalue >= -tol;
  return report;
}

}  // namespace qliang
