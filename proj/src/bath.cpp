#include "qliang/bath.hpp"

#include <cmath>
#include <numbers>

namespace qliang {

double ReservoirSpec::coupling_norm_squared() const {
  double sum = 0.0;
  for (double g : couplings) sum += g * g;
  return sum;
}

ReservoirSpec discretize_lorentzian(double lambda, double big_r, double omega0, int n_modes,
                                    double cutoff_width) {
  if (lambda <= 0.0) throw std::invalid_argument("discretize_lorentzian: lambda must be positive");
  if (big_r < 0.0) throw std::invalid_argument("discretize_lorentzian: big_r must be >= 0");
  if (n_modes < 8) throw std::invalid_argument("discretize_lorentzian: need at least 8 modes");
  if (cutoff_width < 10.0 * lambda) {
    throw std::invalid_argument("discretize_lorentzian: cutoff_width below 10*lambda");
  }

  const double omega_t = big_r * lambda;  // vacuum Rabi normalization
  const double dw = 2.0 * cutoff_width / static_cast<double>(n_modes);
  if (big_r > 0.0) {
    // The discrete bath must resolve the line width and cover the Rabi doublet.
    if (dw > 0.5 * lambda) {
      throw std::runtime_error(
          "discretize_lorentzian: mode spacing above lambda/2; increase n_modes");
    }
    if (cutoff_width < 2.0 * omega_t) {
      throw std::runtime_error(
          "discretize_lorentzian: window narrower than twice the collective coupling; "
          "increase cutoff_width or n_modes");
    }
  }

  ReservoirSpec spec;
  spec.omega0 = omega0;
  spec.lambda = lambda;
  spec.big_r = big_r;
  spec.omegas.resize(static_cast<std::size_t>(n_modes));
  spec.couplings.resize(static_cast<std::size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) {
    const double w = omega0 - cutoff_width + (static_cast<double>(k) + 0.5) * dw;
    const double detuning = w - omega0;
    const double j = (omega_t * omega_t * lambda / std::numbers::pi) /
                     (detuning * detuning + lambda * lambda);
    spec.omegas[static_cast<std::size_t>(k)] = w;
    spec.couplings[static_cast<std::size_t>(k)] = std::sqrt(j * dw);
  }
  return spec;
}

double SingleExcitationState::norm() const {
  return std::sqrt(std::norm(c_a) + std::norm(c_b) + c_modes.squaredNorm());
}

Vector SingleExcitationState::to_vector() const {
  Vector v(2 + c_modes.size());
  v[0] = c_a;
  v[1] = c_b;
  v.tail(c_modes.size()) = c_modes;
  return v;
}

SingleExcitationState SingleExcitationState::from_vector(const Vector& v) {
  if (v.size() < 2) throw std::invalid_argument("SingleExcitationState: vector too short");
  SingleExcitationState s;
  s.c_a = v[0];
  s.c_b = v[1];
  s.c_modes = v.tail(v.size() - 2);
  return s;
}

SingleExcitationState qubit_pair_state(Complex c_a, Complex c_b, int n_modes) {
  const double n = std::sqrt(std::norm(c_a) + std::norm(c_b));
  if (n <= 0.0) throw std::invalid_argument("qubit_pair_state: zero amplitudes");
  SingleExcitationState s;
  s.c_a = c_a / n;
  s.c_b = c_b / n;
  s.c_modes = Vector::Zero(n_modes);
  return s;
}

std::pair<double, double> normalized_couplings(double ratio_a, double ratio_b) {
  const double n = std::sqrt(ratio_a * ratio_a + ratio_b * ratio_b);
  if (n <= 0.0) throw std::invalid_argument("normalized_couplings: zero ratio");
  return {ratio_a / n, ratio_b / n};
}

namespace {

SiteRegistry sector_registry(int n_modes) {
  return SiteRegistry({Site{"sector", n_modes + 2}});
}

}  // namespace

HermitianOperator sector_hamiltonian(const ReservoirSpec& reservoir, double alpha_a,
                                     double alpha_b) {
  const int n = reservoir.mode_count();
  if (n == 0) throw std::invalid_argument("sector_hamiltonian: empty reservoir");
  const Eigen::Index dim = n + 2;
  Matrix h = Matrix::Zero(dim, dim);
  h(0, 0) = reservoir.omega0;
  h(1, 1) = reservoir.omega0;
  for (int k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k + 2);
    h(idx, idx) = reservoir.omegas[static_cast<std::size_t>(k)];
    const double g = reservoir.couplings[static_cast<std::size_t>(k)];
    h(0, idx) = alpha_a * g;
    h(idx, 0) = alpha_a * g;
    h(1, idx) = alpha_b * g;
    h(idx, 1) = alpha_b * g;
  }
  return HermitianOperator{sector_registry(n), std::move(h)};
}

SingleExcitationState evolve_sector(const SingleExcitationState& psi0, const Propagator& prop,
                                    double t) {
  return SingleExcitationState::from_vector(prop.evolve_ket(psi0.to_vector(), t));
}

SingleExcitationState evolve_sector(const SingleExcitationState& psi0,
                                    const HermitianOperator& h, double t) {
  return evolve_sector(psi0, Propagator(h), t);
}

double binary_entropy_bits(double p) {
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  double s = 0.0;
  if (p > kEigenvalueClip) s -= p * std::log2(p);
  const double q = 1.0 - p;
  if (q > kEigenvalueClip) s -= q * std::log2(q);
  return s;
}

FlowSeries bath_flow(const SingleExcitationState& psi0, const ReservoirSpec& reservoir,
                     double alpha_a, double alpha_b, BathQubit source, BathQubit target,
                     const TimeGrid& grid) {
  if (source == target) throw std::invalid_argument("bath_flow: source equals target");
  if (!(grid.t_max > 0.0) || grid.steps < 2) {
    throw std::invalid_argument("bath_flow: invalid grid");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("bath_flow: state norm deviates from 1");
  }
  if (psi0.c_modes.size() != reservoir.mode_count()) {
    throw std::invalid_argument("bath_flow: mode count mismatch");
  }

  const double frozen_a = (source == BathQubit::A) ? 0.0 : alpha_a;
  const double frozen_b = (source == BathQubit::B) ? 0.0 : alpha_b;
  const Propagator full(sector_hamiltonian(reservoir, alpha_a, alpha_b));
  const Propagator frozen(sector_hamiltonian(reservoir, frozen_a, frozen_b));

  const Vector v0 = psi0.to_vector();
  const Eigen::Index target_idx = (target == BathQubit::A) ? 0 : 1;

  FlowSeries series;
  series.times = detail::grid_times(grid);
  const int n = grid.steps;
  series.s_target.resize(n);
  series.s_target_frozen.resize(n);
  series.cumulative.resize(n);
  series.rate.resize(n);

  for (int k = 0; k < n; ++k) {
    const double t = series.times[k];
    const Vector v_full = full.evolve_ket(v0, t);
    const Vector v_frozen = frozen.evolve_ket(v0, t);
    series.s_target[k] = binary_entropy_bits(std::norm(v_full[target_idx]));
    series.s_target_frozen[k] = binary_entropy_bits(std::norm(v_frozen[target_idx]));
    series.cumulative[k] = series.s_target[k] - series.s_target_frozen[k];
  }

  const double dt = grid.t_max / static_cast<double>(n - 1);
  series.rate[0] = (series.cumulative[1] - series.cumulative[0]) / dt;
  for (int k = 1; k + 1 < n; ++k) {
    series.rate[k] = (series.cumulative[k + 1] - series.cumulative[k - 1]) / (2.0 * dt);
  }
  series.rate[n - 1] = (series.cumulative[n - 1] - series.cumulative[n - 2]) / dt;
  return series;
}

}  // namespace qliang
