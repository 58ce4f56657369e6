// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the checks themselves.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qliang/classical.hpp"
#include "qliang/flow.hpp"
#include "qliang/presets.hpp"
#include "qliang/random.hpp"

using namespace qliang;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

FlowSeries chain_flow(const HamiltonianSpec& spec, const DensityMatrix& rho0,
                      const std::vector<std::string>& sources,
                      const std::vector<std::string>& target, const TimeGrid& grid) {
  FrozenSet frozen;
  frozen.labels.insert(sources.begin(), sources.end());
  return cumulative_flow({spec, rho0, target, frozen, grid, RateMode::FromStart, 1e-3});
}

/// First strict local maximum above `floor_v`, refined by parabolic fit.
double first_peak_time(const Eigen::VectorXd& t, const Eigen::VectorXd& y, double floor_v) {
  for (int k = 1; k + 1 < t.size(); ++k) {
    if (y[k] > y[k - 1] && y[k] >= y[k + 1] && y[k] > floor_v) {
      const double denom = y[k - 1] - 2.0 * y[k] + y[k + 1];
      if (denom == 0.0) return t[k];
      const double shift = 0.5 * (y[k - 1] - y[k + 1]) / denom;
      return t[k] + shift * (t[k + 1] - t[k]);
    }
  }
  return -1.0;
}

/// Dominant oscillation period from the spacing of slow peaks: a peak is the
/// maximum of a +-window neighborhood above half the series maximum.
double peak_spacing_period(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                           double window_time) {
  const double dt = t[1] - t[0];
  const int w = static_cast<int>(window_time / dt);
  const double floor_v = 0.5 * y.maxCoeff();
  std::vector<double> peaks;
  for (int k = w; k + w < t.size(); ++k) {
    if (y[k] < floor_v) continue;
    bool is_max = true;
    for (int j = k - w; j <= k + w && is_max; ++j) {
      if (y[j] > y[k]) is_max = false;
    }
    if (is_max) {
      if (peaks.empty() || t[k] - peaks.back() > window_time) peaks.push_back(t[k]);
    }
  }
  if (peaks.size() < 2) return -1.0;
  std::vector<double> gaps;
  for (std::size_t k = 1; k < peaks.size(); ++k) gaps.push_back(peaks[k] - peaks[k - 1]);
  std::sort(gaps.begin(), gaps.end());
  return gaps[gaps.size() / 2];
}

bool criterion_cnot(std::string& detail) {
  const SiteRegistry reg = qubit_registry({"A", "B"});
  const DensityMatrix rho0 = product_state(reg, {maximally_mixed_site(2), basis_site(2, 0)});
  const Matrix cnot = gate_unitary(Gate::CNOT, {"A", "B"}, reg);
  const double t_ab = discrete_map_flow(rho0, cnot, {"B"});
  const double t_ba = discrete_map_flow(rho0, cnot, {"A"});
  detail = "T_A->B=" + num(t_ab) + " T_B->A=" + num(t_ba);
  return std::abs(t_ab - 1.0) <= 1e-12 && std::abs(t_ba) <= 1e-12;
}

bool criterion_three_qubit_chain(std::string& detail) {
  const HamiltonianSpec spec = three_qubit_chain(1.0, 3.0);
  const DensityMatrix rho0 = three_qubit_mixed_senders();

  const FlowSeries dense = chain_flow(spec, rho0, {"A", "B"}, {"C"}, {0.6, 601});
  const double t_star = first_peak_time(dense.times, dense.s_target, 0.999);
  if (std::abs(t_star - 0.49) > 0.01) {
    detail = "capacity time t*=" + num(t_star);
    return false;
  }

  const TimeGrid grid{0.49, 99};
  const FlowSeries joint = chain_flow(spec, rho0, {"A", "B"}, {"C"}, grid);
  const FlowSeries from_a = chain_flow(spec, rho0, {"A"}, {"C"}, grid);
  const FlowSeries from_b = chain_flow(spec, rho0, {"B"}, {"C"}, grid);
  for (int k = 1; k < grid.steps; ++k) {
    if (!(joint.cumulative[k] > from_a.cumulative[k] + from_b.cumulative[k]) ||
        !(from_b.cumulative[k] > from_a.cumulative[k])) {
      detail = "ordering violated at t=" + num(joint.times[k]);
      return false;
    }
  }
  detail = "t*=" + num(t_star) + "; orderings hold on (0,0.49]";
  return true;
}

bool criterion_initial_configuration(std::string& detail) {
  const HamiltonianSpec spec = three_qubit_chain(1.0, 1.0);
  const TimeGrid grid{0.9, 181};
  const FlowSeries a1 = chain_flow(spec, three_qubit_weighted_b(0.9, 0.1), {"A"}, {"C"}, grid);
  const FlowSeries b1 = chain_flow(spec, three_qubit_weighted_b(0.9, 0.1), {"B"}, {"C"}, grid);
  const FlowSeries a2 = chain_flow(spec, three_qubit_weighted_b(0.1, 0.9), {"A"}, {"C"}, grid);
  const FlowSeries b2 = chain_flow(spec, three_qubit_weighted_b(0.1, 0.9), {"B"}, {"C"}, grid);
  for (int k = 1; k < grid.steps; ++k) {
    if (!(a1.cumulative[k] > b1.cumulative[k])) {
      detail = "config 1 ordering violated at t=" + num(grid.t_max * k / (grid.steps - 1));
      return false;
    }
    if (!(b2.cumulative[k] > a2.cumulative[k])) {
      detail = "config 2 ordering violated at t=" + num(grid.t_max * k / (grid.steps - 1));
      return false;
    }
  }
  detail = "A->C dominates under config 1, B->C under config 2, on (0,0.9]";
  return true;
}

bool criterion_star_equal(std::string& detail) {
  const HamiltonianSpec spec = five_qubit_star({1.0, 1.0, 1.0, 1.0});
  const DensityMatrix rho0 = five_qubit_star_initial();

  const FlowSeries dense = chain_flow(spec, rho0, {"A", "B", "C", "D"}, {"E"}, {0.9, 901});
  const double t_star = first_peak_time(dense.times, dense.s_target, 0.999);
  if (std::abs(t_star - 0.69) > 0.01) {
    detail = "capacity time t*=" + num(t_star);
    return false;
  }

  const TimeGrid grid{0.69, 139};
  const FlowSeries leaf_a = chain_flow(spec, rho0, {"A"}, {"E"}, grid);
  double worst = 0.0;
  for (const char* leaf : {"B", "C", "D"}) {
    const FlowSeries other = chain_flow(spec, rho0, {leaf}, {"E"}, grid);
    worst = std::max(worst, (other.cumulative - leaf_a.cumulative).cwiseAbs().maxCoeff());
  }
  detail = "t*=" + num(t_star) + "; max leaf spread=" + num(worst);
  return worst < 1e-9;
}

bool criterion_star_extra_edge(std::string& detail) {
  const HamiltonianSpec base = five_qubit_star({1.0, 1.0, 1.0, 1.0});
  const HamiltonianSpec with_cd = add_coupling(base, "C", "D", 5.0);
  const DensityMatrix rho0 = five_qubit_star_initial();

  const FlowSeries c_flow = chain_flow(with_cd, rho0, {"C"}, {"E"}, {0.69, 691});
  double crossing = -1.0;
  for (int k = 1; k < c_flow.times.size(); ++k) {
    if (c_flow.cumulative[k - 1] > 0.0 && c_flow.cumulative[k] <= 0.0) {
      const double f = c_flow.cumulative[k - 1] / (c_flow.cumulative[k - 1] - c_flow.cumulative[k]);
      crossing = c_flow.times[k - 1] + f * (c_flow.times[k] - c_flow.times[k - 1]);
      break;
    }
  }
  if (crossing < 0.0 || std::abs(crossing - 0.49) > 0.02) {
    detail = "zero crossing t=" + num(crossing);
    return false;
  }

  const double a_with = chain_flow(with_cd, rho0, {"A"}, {"E"}, {0.69, 2}).cumulative[1];
  const double a_without = chain_flow(base, rho0, {"A"}, {"E"}, {0.69, 2}).cumulative[1];
  detail = "crossing t=" + num(crossing) + "; T_A->E(0.69) " + num(a_with) + " vs " +
           num(a_without);
  return a_with > a_without;
}

bool criterion_graded_star(std::string& detail) {
  const HamiltonianSpec spec = five_qubit_star({4.0, 3.0, 2.0, 1.0});
  const DensityMatrix rho0 = five_qubit_star_initial();
  const PairwiseFlowMatrix m = pairwise_flow_matrix(spec, rho0, {0.26, 2});
  const double ta = m.flows(0, 4), tb = m.flows(1, 4), tc = m.flows(2, 4), td = m.flows(3, 4);
  detail = "T->E=(" + num(ta) + ", " + num(tb) + ", " + num(tc) + ", " + num(td) + ")";
  const bool values = std::abs(ta - 0.0731) <= 5e-4 && std::abs(tb - 0.0132) <= 5e-4 &&
                      std::abs(tc - 0.0022) <= 5e-4 && std::abs(td - 0.0001) <= 5e-4;
  const bool ordering = ta > tb && tb > tc && tc > td;

  const SuperadditivityReport report = superadditivity_report(
      spec, rho0, {FrozenSet{{"A"}}, FrozenSet{{"B"}}, FrozenSet{{"C"}}, FrozenSet{{"D"}}},
      {"E"}, {0.26, 2});
  const bool superadditive = report.joint[1] > report.sum_singles[1];
  if (!superadditive) detail += " joint<=sum";
  return values && ordering && superadditive;
}

bool criterion_super_exchange(std::string& detail) {
  const DensityMatrix rho0 = super_exchange_initial();

  // Field off: the C->B flow climbs to the one-bit capacity, falls back, and
  // the A->B flow closes the gap. The frozen-sender semantics bounds A->B by
  // C->B (their difference is the entropy of B under the B-C pair dynamics,
  // which is nonnegative and vanishes at the pair revivals), so "overtaken"
  // is realized as the gap closing to zero rather than a strict crossing.
  const HamiltonianSpec field_off = super_exchange_chain(0.0);
  const TimeGrid grid0{10.0, 2001};
  const FlowSeries cb = chain_flow(field_off, rho0, {"C"}, {"B"}, grid0);
  const FlowSeries ab = chain_flow(field_off, rho0, {"A"}, {"B"}, grid0);
  int peak_k = -1;
  for (int k = 1; k + 1 < grid0.steps; ++k) {
    if (cb.cumulative[k] > cb.cumulative[k - 1] && cb.cumulative[k] >= cb.cumulative[k + 1] &&
        cb.cumulative[k] > 0.9) {
      peak_k = k;
      break;
    }
  }
  if (peak_k < 0) {
    detail = "C->B never reaches 0.9 bits";
    return false;
  }
  double min_after = 2.0, min_gap = 2.0;
  for (int k = peak_k; k < grid0.steps; ++k) {
    min_after = std::min(min_after, cb.cumulative[k]);
    min_gap = std::min(min_gap, cb.cumulative[k] - ab.cumulative[k]);
  }
  const bool declined = min_after < cb.cumulative[peak_k] - 0.5;
  const bool caught_up = min_gap < 1e-3;
  if (!declined || !caught_up) {
    detail = "peak=" + num(cb.cumulative[peak_k]) + " min after=" + num(min_after) +
             " min gap=" + num(min_gap);
    return false;
  }

  // Field on: the A->B oscillation slows as eta^2/B.
  auto period_at = [&](double b_field, double t_max) {
    const FlowSeries f = chain_flow(super_exchange_chain(b_field), rho0, {"A"}, {"B"},
                                    {t_max, static_cast<int>(t_max / 0.05) + 1});
    return peak_spacing_period(f.times, f.cumulative, 8.0);
  };
  const double period5 = period_at(5.0, 120.0);
  const double period15 = period_at(15.0, 340.0);
  const double ratio = period15 / period5;
  detail = "C->B peak=" + num(cb.cumulative[peak_k]) + " at t=" + num(cb.times[peak_k]) +
           ", A->B meets it (gap " + num(min_gap) + "); period ratio=" + num(ratio);
  return period5 > 0.0 && period15 > 0.0 && std::abs(ratio - 3.0) <= 0.3;
}

bool criterion_nil_causality(std::string& detail) {
  Rng rng(71);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    HamiltonianSpec spec = make_spec(qubit_registry({"A", "B", "C"}));
    auto herm = [&]() { return custom_factor(random_hermitian(rng, 2)); };
    if (trial % 2 == 0) {
      // M_A (x) N_BC
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"C", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}, {"C", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}, {"C", herm()}}));
    } else {
      // O_AC (x) Q_B
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"C", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}, {"C", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}, {"C", herm()}}));
      spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}}));
    }
    const DensityMatrix rho0{spec.registry, random_density(rng, 8)};
    const FlowSeries f = chain_flow(spec, rho0, {"B"}, {"A"}, {2.0, 21});
    worst = std::max(worst, f.cumulative.cwiseAbs().maxCoeff());
  }
  detail = "max |T_B->A| over 50 product-form runs = " + num(worst);
  return worst < 1e-8;
}

bool criterion_bath(std::string& detail) {
  const BathStudy study = default_bath_study();
  const TimeGrid grid{2.0, 401};

  const FlowSeries silent_ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0,
                                         BathQubit::B, BathQubit::A, grid);
  const FlowSeries silent_ab = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0,
                                         BathQubit::A, BathQubit::B, grid);
  const double silent = std::max(silent_ba.cumulative.cwiseAbs().maxCoeff(),
                                 silent_ab.cumulative.cwiseAbs().maxCoeff());
  if (silent >= 1e-12) {
    detail = "decoupled flows reach " + num(silent);
    return false;
  }

  const FlowSeries ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, study.alpha_b,
                                  BathQubit::B, BathQubit::A, grid);
  const FlowSeries ab = bath_flow(study.psi0, study.reservoir, study.alpha_a, study.alpha_b,
                                  BathQubit::A, BathQubit::B, grid);
  const double peak_ba = ba.rate.maxCoeff();
  const double peak_ab = ab.rate.maxCoeff();
  const double end_ba = ba.cumulative[grid.steps - 1];
  const double end_ab = ab.cumulative[grid.steps - 1];
  detail = "rate peaks B->A=" + num(peak_ba) + " A->B=" + num(peak_ab) +
           "; end cumulative B->A=" + num(end_ba) + " A->B=" + num(end_ab);
  return peak_ba > peak_ab && end_ab > end_ba;
}

bool criterion_classical(std::string& detail) {
  const DensityGrid rho = gaussian_density(Box2D{-7, 7, -7, 7}, 400, 400, 0, 0, 1.0, 0.4, 1.2);

  VectorField2D rotation;
  rotation.f1 = [](double, double y) { return -y; };
  rotation.f2 = [](double x, double) { return x; };
  rotation.domain = rho.domain;
  const double analytic = -0.4 / (1.0 * std::numbers::ln2);  // dS1/dt of the rotated Gaussian
  const double t21 = classical_flow_rate(rho, rotation);

  VectorField2D shear;
  shear.f1 = [](double x, double) { return -x; };
  shear.f2 = [](double x, double y) { return x - y; };
  shear.domain = rho.domain;
  const double nil = classical_flow_rate(rho, shear);

  detail = "T_2->1=" + num(t21) + " vs dS1/dt=" + num(analytic) + "; nil=" + num(nil);
  return std::abs(t21 - analytic) <= 1e-3 && std::abs(nil) < 1e-3;
}

bool criterion_core_numerics(std::string& detail) {
  const SiteRegistry q = qubit_registry({"Q"});
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = 0.9;
  w(1, 1) = 0.1;
  const double s = von_neumann_entropy(DensityMatrix{q, w});
  if (std::abs(s - 0.4690) > 5e-4) {
    detail = "mixture entropy " + num(s);
    return false;
  }

  Rng rng(83);
  const SiteRegistry abc = qubit_registry({"A", "B", "C"});
  double entropy_drift = 0.0;
  double oracle_dev = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho{abc, random_density(rng, 8)};
    const HermitianOperator h{abc, random_hermitian(rng, 8)};
    const double s0 = von_neumann_entropy(rho);
    entropy_drift = std::max(
        entropy_drift, std::abs(von_neumann_entropy(evolve(rho, h, 1.3)) - s0));

    const Matrix direct = partial_trace(rho, {"B"}).entries;
    const Matrix oracle =
        oracles::partial_trace(rho.entries, {2, 2, 2}, {true, false, true});
    oracle_dev = std::max(oracle_dev, max_abs(Matrix(direct - oracle)));
  }
  detail = "S(0.9,0.1)=" + num(s) + "; entropy drift=" + num(entropy_drift) +
           "; trace oracle dev=" + num(oracle_dev);
  return entropy_drift < 1e-8 && oracle_dev <= 1e-12;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"cnot_discrete_flow", criterion_cnot},
      {"three_qubit_chain_capacity_and_ordering", criterion_three_qubit_chain},
      {"initial_configuration_dependence", criterion_initial_configuration},
      {"five_qubit_star_equal_couplings", criterion_star_equal},
      {"five_qubit_star_extra_edge", criterion_star_extra_edge},
      {"graded_star_golden_numbers", criterion_graded_star},
      {"super_exchange_features", criterion_super_exchange},
      {"nil_causality_property_suite", criterion_nil_causality},
      {"bath_qualitative_features", criterion_bath},
      {"classical_correspondence_and_nil_causality", criterion_classical},
      {"core_numerics", criterion_core_numerics},
  };

  int failures = 0;
  int index = 1;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%2d/%zu] %s  %s  (%s)\n", index, criteria.size(), pass ? "PASS" : "FAIL",
                criterion.name.c_str(), detail.c_str());
    if (!pass) ++failures;
    ++index;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
