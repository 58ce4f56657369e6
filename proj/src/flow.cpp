#include "qliang/flow.hpp"

#include <cmath>
#include <limits>

namespace qliang {

namespace {

void validate_grid(const TimeGrid& grid) {
  if (!(grid.t_max > 0.0)) throw std::invalid_argument("flow: t_max must be positive");
  if (grid.steps < 2) throw std::invalid_argument("flow: grid needs at least 2 points");
}

void validate_request(const FlowRequest& req) {
  validate_grid(req.grid);
  if (req.target.empty()) throw std::invalid_argument("flow: empty target");
  for (const auto& label : req.target) {
    req.hamiltonian.registry.index_of(label);
    if (req.sources.labels.count(label)) {
      throw std::invalid_argument("flow: target and sources overlap on '" + label + "'");
    }
  }
  for (const auto& label : req.sources.labels) req.hamiltonian.registry.index_of(label);
  if (req.initial.registry != req.hamiltonian.registry) {
    throw std::invalid_argument("flow: initial state and Hamiltonian registries differ");
  }
}

double target_entropy(const Propagator& prop, const DensityMatrix& rho0,
                      const std::vector<std::string>& target, double t) {
  return von_neumann_entropy(partial_trace(prop.evolve(rho0, t), target));
}

double instantaneous_rate_impl(const Propagator& full, const Propagator& frozen,
                               const DensityMatrix& rho0,
                               const std::vector<std::string>& target, double t, double h) {
  if (h < 1e-6) throw std::invalid_argument("flow: rate_step below 1e-6");
  const double ds_full =
      (target_entropy(full, rho0, target, t + h) - target_entropy(full, rho0, target, t - h)) /
      (2.0 * h);
  const DensityMatrix rho_t = full.evolve(rho0, t);
  const double ds_frozen =
      (target_entropy(frozen, rho_t, target, h) - target_entropy(frozen, rho_t, target, -h)) /
      (2.0 * h);
  return ds_full - ds_frozen;
}

}  // namespace

namespace detail {

Eigen::VectorXd grid_times(const TimeGrid& grid) {
  Eigen::VectorXd times(grid.steps);
  const double dt = grid.t_max / static_cast<double>(grid.steps - 1);
  for (int k = 0; k < grid.steps; ++k) {
    times[k] = (k == grid.steps - 1) ? grid.t_max : k * dt;
  }
  return times;
}

FlowSeries flow_series(const Propagator& full, const Propagator& frozen,
                       const DensityMatrix& rho0, const std::vector<std::string>& target,
                       const TimeGrid& grid, RateMode rate_mode, double rate_step) {
  FlowSeries series;
  series.times = grid_times(grid);
  const int n = grid.steps;
  series.s_target.resize(n);
  series.s_target_frozen.resize(n);
  series.cumulative.resize(n);
  series.rate.resize(n);

  for (int k = 0; k < n; ++k) {
    const double t = series.times[k];
    series.s_target[k] = target_entropy(full, rho0, target, t);
    series.s_target_frozen[k] = target_entropy(frozen, rho0, target, t);
    series.cumulative[k] = series.s_target[k] - series.s_target_frozen[k];
  }

  if (rate_mode == RateMode::FromStart) {
    const double dt = grid.t_max / static_cast<double>(n - 1);
    series.rate[0] = (series.cumulative[1] - series.cumulative[0]) / dt;
    for (int k = 1; k + 1 < n; ++k) {
      series.rate[k] = (series.cumulative[k + 1] - series.cumulative[k - 1]) / (2.0 * dt);
    }
    series.rate[n - 1] = (series.cumulative[n - 1] - series.cumulative[n - 2]) / dt;
  } else {
    for (int k = 0; k < n; ++k) {
      series.rate[k] =
          instantaneous_rate_impl(full, frozen, rho0, target, series.times[k], rate_step);
    }
  }
  return series;
}

}  // namespace detail

FlowSeries cumulative_flow(const FlowRequest& req) {
  validate_request(req);
  const Propagator full(materialize(req.hamiltonian));
  const Propagator frozen(materialize(freeze(req.hamiltonian, req.sources)));
  return detail::flow_series(full, frozen, req.initial, req.target, req.grid, req.rate_mode,
                             req.rate_step);
}

double instantaneous_rate(const FlowRequest& req, double t) {
  validate_request(req);
  if (t < 0.0 || t > req.grid.t_max) {
    throw std::invalid_argument("instantaneous_rate: t outside [0, t_max]");
  }
  const Propagator full(materialize(req.hamiltonian));
  const Propagator frozen(materialize(freeze(req.hamiltonian, req.sources)));
  return instantaneous_rate_impl(full, frozen, req.initial, req.target, t, req.rate_step);
}

double discrete_map_flow(const DensityMatrix& rho0, const Matrix& u_full,
                         const std::vector<std::string>& target,
                         const std::optional<Matrix>& u_frozen) {
  const auto dim = static_cast<Eigen::Index>(rho0.registry.dimension());
  if (u_full.rows() != dim || u_full.cols() != dim) {
    throw std::invalid_argument("discrete_map_flow: unitary dimension mismatch");
  }
  const Matrix gram = u_full.adjoint() * u_full;
  if (max_abs(Matrix(gram - Matrix::Identity(dim, dim))) > 1e-9) {
    throw std::domain_error("discrete_map_flow: u_full is not unitary within 1e-9");
  }
  const double s0 = von_neumann_entropy(partial_trace(rho0, target));
  const DensityMatrix rho1{rho0.registry, u_full * rho0.entries * u_full.adjoint()};
  const double s1 = von_neumann_entropy(partial_trace(rho1, target));

  double frozen_delta = 0.0;
  if (u_frozen.has_value()) {
    const Matrix& uf = *u_frozen;
    if (uf.rows() != dim || uf.cols() != dim) {
      throw std::invalid_argument("discrete_map_flow: frozen unitary dimension mismatch");
    }
    const Matrix gram_f = uf.adjoint() * uf;
    if (max_abs(Matrix(gram_f - Matrix::Identity(dim, dim))) > 1e-9) {
      throw std::domain_error("discrete_map_flow: u_frozen is not unitary within 1e-9");
    }
    const DensityMatrix rho_f{rho0.registry, uf * rho0.entries * uf.adjoint()};
    frozen_delta = von_neumann_entropy(partial_trace(rho_f, target)) - s0;
  }
  return (s1 - s0) - frozen_delta;
}

PairwiseFlowMatrix pairwise_flow_matrix(const HamiltonianSpec& hamiltonian,
                                        const DensityMatrix& initial, const TimeGrid& grid) {
  validate_grid(grid);
  if (initial.registry != hamiltonian.registry) {
    throw std::invalid_argument("pairwise_flow_matrix: registries differ");
  }
  const int n = hamiltonian.registry.site_count();
  PairwiseFlowMatrix out;
  out.flows = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < n; ++k) out.labels.push_back(hamiltonian.registry.site(k).label);

  const Propagator full(materialize(hamiltonian));
  const DensityMatrix rho_final = full.evolve(initial, grid.t_max);
  std::vector<double> s_full(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    s_full[static_cast<std::size_t>(j)] =
        von_neumann_entropy(partial_trace(rho_final, {out.labels[static_cast<std::size_t>(j)]}));
  }

  for (int i = 0; i < n; ++i) {
    const Propagator frozen(
        materialize(freeze(hamiltonian, FrozenSet{{out.labels[static_cast<std::size_t>(i)]}})));
    const DensityMatrix rho_frozen = frozen.evolve(initial, grid.t_max);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s_frozen = von_neumann_entropy(
          partial_trace(rho_frozen, {out.labels[static_cast<std::size_t>(j)]}));
      out.flows(i, j) = s_full[static_cast<std::size_t>(j)] - s_frozen;
    }
  }
  return out;
}

SuperadditivityReport superadditivity_report(const HamiltonianSpec& hamiltonian,
                                             const DensityMatrix& initial,
                                             const std::vector<FrozenSet>& sources,
                                             const std::vector<std::string>& target,
                                             const TimeGrid& grid) {
  validate_grid(grid);
  if (sources.empty()) throw std::invalid_argument("superadditivity_report: no sources");
  FrozenSet joint_set;
  for (const FrozenSet& s : sources) {
    for (const auto& label : s.labels) {
      if (!joint_set.labels.insert(label).second) {
        throw std::invalid_argument("superadditivity_report: sources are not disjoint on '" +
                                    label + "'");
      }
    }
  }
  FlowRequest joint_req{hamiltonian, initial, target, joint_set, grid, RateMode::FromStart, 1e-3};
  validate_request(joint_req);

  const Propagator full(materialize(hamiltonian));
  const Propagator frozen_joint(materialize(freeze(hamiltonian, joint_set)));

  SuperadditivityReport report;
  FlowSeries joint = detail::flow_series(full, frozen_joint, initial, target, grid,
                                         RateMode::FromStart, 1e-3);
  report.times = joint.times;
  report.joint = joint.cumulative;
  report.sum_singles = Eigen::VectorXd::Zero(grid.steps);
  for (const FrozenSet& s : sources) {
    const Propagator frozen(materialize(freeze(hamiltonian, s)));
    FlowSeries single = detail::flow_series(full, frozen, initial, target, grid,
                                            RateMode::FromStart, 1e-3);
    report.sum_singles += single.cumulative;
    report.singles.push_back(std::move(single.cumulative));
  }
  report.gap = report.joint - report.sum_singles;
  return report;
}

}  // namespace qliang
