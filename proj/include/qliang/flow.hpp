#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qliang/core.hpp"
#include "qliang/hamiltonian.hpp"

namespace qliang {

/// Uniform time grid: `steps` points from 0 to t_max inclusive.
struct TimeGrid {
  double t_max = 1.0;
  int steps = 2;
};

/// from_start differentiates the cumulative series built from trajectories
/// that share rho(0) (the convention behind the bundled scenarios);
/// instantaneous re-freezes the sender at each queried time.
enum class RateMode { FromStart, Instantaneous };

struct FlowRequest {
  HamiltonianSpec hamiltonian;
  DensityMatrix initial;
  std::vector<std::string> target;  // receiving subsystem (joint marginal)
  FrozenSet sources;                // sender(s) to freeze
  TimeGrid grid;
  RateMode rate_mode = RateMode::FromStart;
  double rate_step = 1e-3;
};

/// Entropy trajectories and flows in bits on the request's grid.
/// cumulative[k] = s_target[k] - s_target_frozen[k]; cumulative[0] = 0.
struct FlowSeries {
  Eigen::VectorXd times;
  Eigen::VectorXd s_target;
  Eigen::VectorXd s_target_frozen;
  Eigen::VectorXd cumulative;
  Eigen::VectorXd rate;
};

/// Evolve the initial state under the full and the frozen Hamiltonian on a
/// shared grid and fill the entropy difference series.
FlowSeries cumulative_flow(const FlowRequest& req);

/// Rate with the freeze applied at time t: evolve to rho(t) under the full
/// dynamics, branch with the frozen dynamics over +-rate_step, and return
/// the central-difference dS/dt gap. rate_step below 1e-6 is rejected.
double instantaneous_rate(const FlowRequest& req, double t);

/// Flow through a discrete map: Delta S_target(full) - Delta S_target(frozen).
/// When u_frozen is omitted, the frozen evolution is taken as a product map
/// across the (target, rest) bipartition, which leaves the target marginal
/// spectrum unchanged: the frozen entropy change is zero.
double discrete_map_flow(const DensityMatrix& rho0, const Matrix& u_full,
                         const std::vector<std::string>& target,
                         const std::optional<Matrix>& u_frozen = std::nullopt);

/// Cumulative flows at t_max between all ordered site pairs; diagonal NaN.
struct PairwiseFlowMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd flows;
};

PairwiseFlowMatrix pairwise_flow_matrix(const HamiltonianSpec& hamiltonian,
                                        const DensityMatrix& initial, const TimeGrid& grid);

/// Per-time joint flow from a union of senders, the sum of their individual
/// flows, and the superadditivity gap (joint minus sum).
struct SuperadditivityReport {
  Eigen::VectorXd times;
  Eigen::VectorXd joint;
  std::vector<Eigen::VectorXd> singles;
  Eigen::VectorXd sum_singles;
  Eigen::VectorXd gap;
};

SuperadditivityReport superadditivity_report(const HamiltonianSpec& hamiltonian,
                                             const DensityMatrix& initial,
                                             const std::vector<FrozenSet>& sources,
                                             const std::vector<std::string>& target,
                                             const TimeGrid& grid);

namespace detail {
Eigen::VectorXd grid_times(const TimeGrid& grid);
/// Core series evaluation over prebuilt propagators (shared by the drivers).
FlowSeries flow_series(const Propagator& full, const Propagator& frozen,
                       const DensityMatrix& rho0, const std::vector<std::string>& target,
                       const TimeGrid& grid, RateMode rate_mode, double rate_step);
}  // namespace detail

}  // namespace qliang
