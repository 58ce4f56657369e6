#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qliang {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances shared across the library. Entropies are in bits throughout.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEigenvalueClip = 1e-12;

/// Default cap on the total Hilbert-space dimension of a registry.
inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 14;

/// Thrown when a registry would exceed its dimension cap.
class DimensionCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Site {
  std::string label;
  int dim = 2;
};

/// Ordered list of labeled sites making up a composite Hilbert space.
/// Site 0 is the most significant factor in the Kronecker ordering, so a
/// basis index decomposes into per-site digits from left to right.
class SiteRegistry {
 public:
  SiteRegistry() = default;
  explicit SiteRegistry(std::vector<Site> sites, std::size_t dim_cap = kDefaultDimCap);

  int site_count() const { return static_cast<int>(sites_.size()); }
  std::size_t dimension() const { return dim_; }
  std::size_t dim_cap() const { return dim_cap_; }
  const Site& site(int index) const { return sites_.at(static_cast<std::size_t>(index)); }
  const std::vector<Site>& sites() const { return sites_; }

  bool has(const std::string& label) const;
  /// Index of a label in registry order; throws std::invalid_argument if unknown.
  int index_of(const std::string& label) const;

  /// Sub-registry of the given labels, kept in the original registry order.
  SiteRegistry sub_registry(const std::vector<std::string>& labels) const;

  bool operator==(const SiteRegistry& other) const;
  bool operator!=(const SiteRegistry& other) const { return !(*this == other); }

 private:
  std::vector<Site> sites_;
  std::size_t dim_ = 1;
  std::size_t dim_cap_ = kDefaultDimCap;
};

/// Convenience: registry of qubits with the given labels.
SiteRegistry qubit_registry(const std::vector<std::string>& labels,
                            std::size_t dim_cap = kDefaultDimCap);

/// Trace-one positive Hermitian matrix on a labeled space. Library
/// operations return valid states by construction; use make_density_matrix
/// to validate external data.
struct DensityMatrix {
  SiteRegistry registry;
  Matrix entries;
};

struct HermitianOperator {
  SiteRegistry registry;
  Matrix entries;
};

/// Eigendecomposition H = V diag(w) V^dagger with w ascending.
struct EigenSystem {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

double max_abs(const Matrix& m);
double hermiticity_deviation(const Matrix& m);

/// Validating constructors; throw std::invalid_argument / std::domain_error
/// when the invariants (Hermiticity 1e-10, trace 1e-10, min eigenvalue
/// >= -1e-9) do not hold.
DensityMatrix make_density_matrix(SiteRegistry registry, Matrix entries);
HermitianOperator make_hermitian_operator(SiteRegistry registry, Matrix entries);

// --- state builders ---------------------------------------------------

/// |ket><ket| on the full registry space; ket must have the full dimension.
DensityMatrix pure_state(const SiteRegistry& registry, const Vector& ket);
/// Computational basis state given one level per site, registry order.
DensityMatrix basis_state(const SiteRegistry& registry, const std::vector<int>& levels);
/// Tensor product of one density matrix per site, registry order.
DensityMatrix product_state(const SiteRegistry& registry, const std::vector<Matrix>& site_states);

Matrix maximally_mixed_site(int dim);
Matrix basis_site(int dim, int level);
Matrix plus_site();  // |+><+| on a qubit

// --- operator embedding -----------------------------------------------

struct SiteFactor {
  std::string label;
  Matrix matrix;
};

/// Kronecker-structured full-space operator from single-site factors;
/// unlisted sites get the identity. The result is not required to be
/// Hermitian (sigma_+/sigma_- factors are legal); Hermiticity of sums is
/// enforced where Hamiltonians are materialized.
Matrix embed(const std::vector<SiteFactor>& factors, const SiteRegistry& registry);

/// Embed an operator given on the joint space of `sites` (tensor basis in
/// the listed order) into the full registry space, identity elsewhere.
Matrix embed_operator(const Matrix& op, const std::vector<std::string>& sites,
                      const SiteRegistry& registry);

Matrix kronecker(const Matrix& a, const Matrix& b);

// --- core operations ----------------------------------------------------

/// Partial trace onto `keep` (set semantics; result sites keep the original
/// registry order). Trace-preserving and order-consistent.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-9, 0) are clipped to
/// zero and the spectrum renormalized; eigenvalues below 1e-12 contribute
/// nothing. Throws std::domain_error if the state is non-PSD beyond 1e-9.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a bare spectrum-carrying matrix (used internally and by tests).
double entropy_of_spectrum(RealVector eigenvalues);

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
/// Verifies the reconstruction ||H - V diag(w) V^dagger||_max < 1e-9.
EigenSystem hermitian_eig(const HermitianOperator& h);

/// Exact unitary evolution exp(-iHt) rho exp(+iHt) via a cached
/// eigendecomposition; construct once per Hamiltonian and reuse across a
/// time grid. Thread-safe for concurrent evaluation of different times.
class Propagator {
 public:
  explicit Propagator(const HermitianOperator& h);

  const SiteRegistry& registry() const { return registry_; }
  const EigenSystem& eigensystem() const { return eig_; }

  Matrix unitary(double t) const;
  DensityMatrix evolve(const DensityMatrix& rho0, double t) const;
  Vector evolve_ket(const Vector& psi0, double t) const;

 private:
  SiteRegistry registry_;
  EigenSystem eig_;
};

/// One-shot evolution; equals Propagator(h).evolve(rho0, t). evolve(rho, h, 0)
/// returns rho exactly.
DensityMatrix evolve(const DensityMatrix& rho0, const HermitianOperator& h, double t);

// --- diagnostics --------------------------------------------------------

struct StateReport {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;
  bool pass() const { return hermitian_ok && trace_ok && psd_ok; }
};

StateReport validate_state(const DensityMatrix& rho, double tol = kPsdTol);

namespace detail {
/// Row-major strides per site (site 0 most significant).
std::vector<std::size_t> site_strides(const SiteRegistry& registry);
}  // namespace detail

}  // namespace qliang
