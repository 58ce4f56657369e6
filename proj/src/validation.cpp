#include "qliang/validation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qliang/classical.hpp"
#include "qliang/flow.hpp"
#include "qliang/presets.hpp"
#include "qliang/random.hpp"

namespace qliang {

namespace {

std::string num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return CheckResult{name, pass, detail};
}

// --- random product-form dynamics for the nil-causality suite -----------

HamiltonianSpec random_product_form_spec(Rng& rng, bool a_isolated) {
  const SiteRegistry reg = qubit_registry({"A", "B", "C"});
  HamiltonianSpec spec = make_spec(reg);
  auto herm = [&]() { return custom_factor(random_hermitian(rng, 2)); };
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  if (a_isolated) {
    // M_A (x) N_BC: local term on A plus arbitrary terms inside {B, C}.
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}}));
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}}));
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"C", herm()}}));
    for (int k = 0; k < 2; ++k) {
      spec = add_term(std::move(spec),
                      make_term(coeff(rng), {{"B", herm()}, {"C", herm()}}));
    }
  } else {
    // O_AC (x) Q_B: terms inside {A, C} plus a local term on B.
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"A", herm()}}));
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"C", herm()}}));
    for (int k = 0; k < 2; ++k) {
      spec = add_term(std::move(spec),
                      make_term(coeff(rng), {{"A", herm()}, {"C", herm()}}));
    }
    spec = add_term(std::move(spec), make_term(coeff(rng), {{"B", herm()}}));
  }
  return spec;
}

double max_abs_flow(const FlowSeries& series) {
  return series.cumulative.cwiseAbs().maxCoeff();
}

// --- core ----------------------------------------------------------------

CheckResult core_entropy_known_values() {
  const SiteRegistry q = qubit_registry({"Q"});
  const double s_pure = von_neumann_entropy(basis_state(q, {0}));
  const double s_mixed =
      von_neumann_entropy(DensityMatrix{q, maximally_mixed_site(2)});
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = 0.9;
  w(1, 1) = 0.1;
  const double s_weighted = von_neumann_entropy(DensityMatrix{q, w});
  const double expected = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  const bool pass = std::abs(s_pure) < 1e-12 && std::abs(s_mixed - 1.0) < 1e-12 &&
                    std::abs(s_weighted - expected) < 1e-12 &&
                    std::abs(s_weighted - 0.4690) < 5e-4;
  return check("core_entropy_known_values", pass,
               "S(0.9,0.1)=" + num(s_weighted));
}

CheckResult core_global_entropy_conservation() {
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const SiteRegistry reg = qubit_registry({"A", "B", "C"});
    const DensityMatrix rho{reg, random_density(rng, 8)};
    const HermitianOperator h{reg, random_hermitian(rng, 8)};
    const double s0 = von_neumann_entropy(rho);
    const Propagator prop(h);
    for (double t : {0.3, 1.7, 4.0}) {
      worst = std::max(worst, std::abs(von_neumann_entropy(prop.evolve(rho, t)) - s0));
    }
  }
  return check("core_global_entropy_conservation", worst < 1e-8, "max|dS|=" + num(worst));
}

CheckResult core_partial_trace_consistency() {
  Rng rng(12);
  const SiteRegistry reg = qubit_registry({"A", "B", "C"});
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho{reg, random_density(rng, 8)};
    const DensityMatrix ab = partial_trace(rho, {"A", "B"});
    const DensityMatrix a_two_step = partial_trace(ab, {"A"});
    const DensityMatrix a_direct = partial_trace(rho, {"A"});
    worst = std::max(worst, max_abs(Matrix(a_two_step.entries - a_direct.entries)));
    worst = std::max(worst, std::abs(ab.entries.trace().real() - 1.0));
  }
  return check("core_partial_trace_consistency", worst < 1e-12, "max dev=" + num(worst));
}

CheckResult core_evolution_group_property() {
  Rng rng(13);
  const SiteRegistry reg = qubit_registry({"A", "B"});
  const DensityMatrix rho{reg, random_density(rng, 4)};
  const HermitianOperator h{reg, random_hermitian(rng, 4)};
  const Propagator prop(h);
  double worst = 0.0;
  for (auto [s, t] : {std::pair{0.4, 1.1}, {2.0, -0.7}, {0.05, 0.05}}) {
    const DensityMatrix once = prop.evolve(rho, s + t);
    const DensityMatrix twice = prop.evolve(prop.evolve(rho, s), t);
    worst = std::max(worst, max_abs(Matrix(once.entries - twice.entries)));
  }
  return check("core_evolution_group_property", worst < 1e-9, "max dev=" + num(worst));
}

CheckResult core_local_hamiltonian_entropy_invariance() {
  Rng rng(14);
  const SiteRegistry reg = qubit_registry({"A", "B"});
  const DensityMatrix rho{reg, random_density(rng, 4)};
  HamiltonianSpec spec = make_spec(reg);
  spec = add_term(std::move(spec), make_term(0.8, {{"A", custom_factor(random_hermitian(rng, 2))}}));
  const Propagator prop(materialize(spec));
  const double s0 = von_neumann_entropy(partial_trace(rho, {"A"}));
  double worst = 0.0;
  for (double t : {0.5, 2.0, 7.0}) {
    const double s = von_neumann_entropy(partial_trace(prop.evolve(rho, t), {"A"}));
    worst = std::max(worst, std::abs(s - s0));
  }
  return check("core_local_hamiltonian_entropy_invariance", worst < 1e-8,
               "max|dS_A|=" + num(worst));
}

// --- hamiltonians ----------------------------------------------------------

HamiltonianSpec chain_with_fields() {
  HamiltonianSpec spec = three_qubit_chain(1.0, 3.0);
  spec = add_field_z(std::move(spec), "A", 0.7);
  spec = add_field_z(std::move(spec), "C", 0.3);
  return spec;
}

bool same_terms(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t k = 0; k < a.terms.size(); ++k) {
    if (!(a.terms[k] == b.terms[k])) return false;
  }
  return true;
}

CheckResult ham_freeze_idempotent() {
  const HamiltonianSpec spec = chain_with_fields();
  const FrozenSet f{{"A"}};
  const HamiltonianSpec once = freeze(spec, f);
  const HamiltonianSpec twice = freeze(once, f);
  return check("ham_freeze_idempotent", same_terms(once, twice),
               "terms=" + std::to_string(once.terms.size()));
}

CheckResult ham_freeze_union_commutes() {
  const HamiltonianSpec spec = chain_with_fields();
  const HamiltonianSpec joint = freeze(spec, FrozenSet{{"A", "B"}});
  const HamiltonianSpec stepwise = freeze(freeze(spec, FrozenSet{{"A"}}), FrozenSet{{"B"}});
  return check("ham_freeze_union_commutes", same_terms(joint, stepwise),
               "terms=" + std::to_string(joint.terms.size()));
}

CheckResult ham_freeze_product_form() {
  Rng rng(15);
  const HamiltonianSpec spec = chain_with_fields();
  const HermitianOperator frozen = materialize(freeze(spec, FrozenSet{{"A"}}));
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix local =
        embed({{"A", random_hermitian(rng, 2)}}, spec.registry);
    worst = std::max(
        worst, max_abs(Matrix(frozen.entries * local - local * frozen.entries)));
  }
  return check("ham_freeze_product_form", worst < 1e-10, "max|[H,O_A]|=" + num(worst));
}

CheckResult ham_freeze_untouched_noop() {
  HamiltonianSpec spec = make_spec(qubit_registry({"A", "B", "X"}));
  spec = add_coupling(std::move(spec), "A", "B", 1.3);
  const HamiltonianSpec frozen = freeze(spec, FrozenSet{{"X"}});
  return check("ham_freeze_untouched_noop", same_terms(spec, frozen),
               "terms=" + std::to_string(frozen.terms.size()));
}

CheckResult ham_frozen_term_list_golden() {
  // Freezing A in the two-coupling chain with z fields must leave exactly
  // the B--C exchange pair plus the C field, term-for-term.
  const HamiltonianSpec frozen = freeze(chain_with_fields(), FrozenSet{{"A"}});
  HamiltonianSpec expected = make_spec(frozen.registry);
  expected = add_coupling(std::move(expected), "B", "C", 3.0);
  expected = add_field_z(std::move(expected), "C", 0.3);
  return check("ham_frozen_term_list_golden", same_terms(frozen, expected),
               "terms=" + std::to_string(frozen.terms.size()));
}

// --- flow engine -----------------------------------------------------------

CheckResult flow_cnot_golden() {
  const SiteRegistry reg = qubit_registry({"A", "B"});
  const DensityMatrix rho0 =
      product_state(reg, {maximally_mixed_site(2), basis_site(2, 0)});
  const Matrix cnot = gate_unitary(Gate::CNOT, {"A", "B"}, reg);
  const double t_ab = discrete_map_flow(rho0, cnot, {"B"});
  const double t_ba = discrete_map_flow(rho0, cnot, {"A"});
  const bool pass = std::abs(t_ab - 1.0) < 1e-12 && std::abs(t_ba) < 1e-12;
  return check("flow_cnot_golden", pass, "T_AB=" + num(t_ab) + " T_BA=" + num(t_ba));
}

CheckResult flow_eq9_capacity_time() {
  FlowRequest req{three_qubit_chain(1.0, 3.0), three_qubit_mixed_senders(),
                  {"C"},                       FrozenSet{{"A", "B"}},
                  TimeGrid{0.6, 601},          RateMode::FromStart,
                  1e-3};
  const FlowSeries series = cumulative_flow(req);
  double t_star = -1.0;
  for (int k = 1; k + 1 < req.grid.steps; ++k) {
    if (series.s_target[k] > series.s_target[k - 1] &&
        series.s_target[k] >= series.s_target[k + 1] && series.s_target[k] > 0.999) {
      t_star = series.times[k];
      break;
    }
  }
  const bool pass = t_star > 0.0 && std::abs(t_star - 0.49) <= 0.01;
  return check("flow_eq9_capacity_time", pass, "t*=" + num(t_star));
}

CheckResult flow_nil_causality() {
  Rng rng(21);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const HamiltonianSpec spec = random_product_form_spec(rng, trial % 2 == 0);
    const DensityMatrix rho0{spec.registry, random_density(rng, 8)};
    FlowRequest req{spec,  rho0, {"A"}, FrozenSet{{"B"}}, TimeGrid{2.0, 21},
                    RateMode::FromStart, 1e-3};
    worst = std::max(worst, max_abs_flow(cumulative_flow(req)));
  }
  return check("flow_nil_causality", worst < 1e-8, "max|T|=" + num(worst));
}

CheckResult flow_complement_rule() {
  FlowRequest req{three_qubit_chain(1.0, 3.0), three_qubit_mixed_senders(),
                  {"C"},                       FrozenSet{{"A", "B"}},
                  TimeGrid{0.49, 50},          RateMode::FromStart,
                  1e-3};
  const FlowSeries series = cumulative_flow(req);
  double worst = 0.0;
  for (int k = 0; k < req.grid.steps; ++k) {
    worst = std::max(worst, std::abs(series.cumulative[k] -
                                     (series.s_target[k] - series.s_target[0])));
  }
  return check("flow_complement_rule", worst < 1e-10, "max dev=" + num(worst));
}

CheckResult flow_pure_bipartite_symmetry() {
  Rng rng(22);
  const SiteRegistry reg = qubit_registry({"A", "B"});
  HamiltonianSpec spec = make_spec(reg);
  spec = add_term(std::move(spec), make_term(0.9, {{"A", custom_factor(random_hermitian(rng, 2))},
                                                   {"B", custom_factor(random_hermitian(rng, 2))}}));
  spec = add_term(std::move(spec), make_term(0.4, {{"A", custom_factor(random_hermitian(rng, 2))}}));
  spec = add_term(std::move(spec), make_term(0.6, {{"B", custom_factor(random_hermitian(rng, 2))}}));
  const DensityMatrix rho0 = pure_state(reg, random_ket(rng, 4));
  const TimeGrid grid{2.0, 41};
  FlowRequest to_a{spec, rho0, {"A"}, FrozenSet{{"B"}}, grid, RateMode::FromStart, 1e-3};
  FlowRequest to_b{spec, rho0, {"B"}, FrozenSet{{"A"}}, grid, RateMode::FromStart, 1e-3};
  const FlowSeries fa = cumulative_flow(to_a);
  const FlowSeries fb = cumulative_flow(to_b);
  double worst = 0.0;
  for (int k = 0; k < grid.steps; ++k) {
    worst = std::max(worst, std::abs(fa.s_target[k] - fb.s_target[k]));
    worst = std::max(worst, std::abs(fa.cumulative[k] - fb.cumulative[k]));
  }
  return check("flow_pure_bipartite_symmetry", worst < 1e-9, "max dev=" + num(worst));
}

CheckResult flow_grid_refinement() {
  FlowRequest coarse{three_qubit_chain(1.0, 3.0), three_qubit_mixed_senders(),
                     {"C"},                       FrozenSet{{"B"}},
                     TimeGrid{0.48, 49},          RateMode::FromStart,
                     1e-3};
  FlowRequest fine = coarse;
  fine.grid.steps = 97;
  const FlowSeries a = cumulative_flow(coarse);
  const FlowSeries b = cumulative_flow(fine);
  double worst = 0.0;
  for (int k = 0; k < coarse.grid.steps; ++k) {
    worst = std::max(worst, std::abs(a.cumulative[k] - b.cumulative[2 * k]));
  }
  return check("flow_grid_refinement", worst < 1e-9, "max dev=" + num(worst));
}

CheckResult flow_negative_flow_observed() {
  HamiltonianSpec spec = five_qubit_star({1.0, 1.0, 1.0, 1.0});
  spec = add_coupling(std::move(spec), "C", "D", 5.0);
  FlowRequest req{spec,
                  five_qubit_star_initial(),
                  {"E"},
                  FrozenSet{{"C"}},
                  TimeGrid{0.69, 139},
                  RateMode::FromStart,
                  1e-3};
  const double min_flow = cumulative_flow(req).cumulative.minCoeff();
  return check("flow_negative_flow_observed", min_flow < 0.0, "min T=" + num(min_flow));
}

CheckResult flow_graded_star_goldens() {
  const HamiltonianSpec spec = five_qubit_star({4.0, 3.0, 2.0, 1.0});
  const PairwiseFlowMatrix m =
      pairwise_flow_matrix(spec, five_qubit_star_initial(), TimeGrid{0.26, 2});
  const int e = 4;  // labels are A..E in registry order
  const double ta = m.flows(0, e), tb = m.flows(1, e), tc = m.flows(2, e), td = m.flows(3, e);
  const bool values_ok = std::abs(ta - 0.0731) <= 5e-4 && std::abs(tb - 0.0132) <= 5e-4 &&
                         std::abs(tc - 0.0022) <= 5e-4 && std::abs(td - 0.0001) <= 5e-4;
  const bool ordered = ta > tb && tb > tc && tc > td;
  SuperadditivityReport report = superadditivity_report(
      spec, five_qubit_star_initial(),
      {FrozenSet{{"A"}}, FrozenSet{{"B"}}, FrozenSet{{"C"}}, FrozenSet{{"D"}}}, {"E"},
      TimeGrid{0.26, 2});
  const bool superadditive = report.gap[1] > 0.0;
  return check("flow_graded_star_goldens", values_ok && ordered && superadditive,
               "T=(" + num(ta) + "," + num(tb) + "," + num(tc) + "," + num(td) + ")");
}

CheckResult flow_star_pairwise_identical() {
  const PairwiseFlowMatrix m = pairwise_flow_matrix(
      five_qubit_star({1.0, 1.0, 1.0, 1.0}), five_qubit_star_initial(), TimeGrid{0.69, 2});
  double worst = 0.0;
  for (int i = 1; i < 4; ++i) {
    worst = std::max(worst, std::abs(m.flows(i, 4) - m.flows(0, 4)));
  }
  return check("flow_star_pairwise_identical", worst < 1e-9, "max dev=" + num(worst));
}

CheckResult flow_disconnected_pairs_zero() {
  HamiltonianSpec spec = make_spec(qubit_registry({"A", "B", "C", "D"}));
  spec = add_coupling(std::move(spec), "A", "B", 1.0);
  spec = add_coupling(std::move(spec), "C", "D", 2.0);
  Matrix wa = Matrix::Zero(2, 2);
  wa(0, 0) = 0.8;
  wa(1, 1) = 0.2;
  const DensityMatrix rho0 = product_state(
      spec.registry, {wa, basis_site(2, 0), maximally_mixed_site(2), basis_site(2, 1)});
  const PairwiseFlowMatrix m = pairwise_flow_matrix(spec, rho0, TimeGrid{1.3, 2});
  double worst = 0.0;
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      worst = std::max(worst, std::abs(m.flows(i, j)));
      worst = std::max(worst, std::abs(m.flows(j, i)));
    }
  }
  return check("flow_disconnected_pairs_zero", worst < 1e-8, "max|T|=" + num(worst));
}

CheckResult flow_superadditivity_gap() {
  const TimeGrid grid{0.49, 50};
  SuperadditivityReport two = superadditivity_report(
      three_qubit_chain(1.0, 3.0), three_qubit_mixed_senders(),
      {FrozenSet{{"A"}}, FrozenSet{{"B"}}}, {"C"}, grid);
  bool positive = true;
  for (int k = 1; k < grid.steps; ++k) positive = positive && two.gap[k] > 0.0;
  SuperadditivityReport single = superadditivity_report(
      three_qubit_chain(1.0, 3.0), three_qubit_mixed_senders(), {FrozenSet{{"B"}}}, {"C"}, grid);
  const double single_gap = single.gap.cwiseAbs().maxCoeff();
  return check("flow_superadditivity_gap", positive && single_gap == 0.0,
               "min gap=" + num(two.gap.tail(grid.steps - 1).minCoeff()));
}

// --- bosonic bath ------------------------------------------------------------

CheckResult bath_coupling_sum_rule() {
  const ReservoirSpec res = discretize_lorentzian(1.0, 10.0, 0.0, 401, 40.0);
  const double sum = res.coupling_norm_squared();
  const double target = 100.0;
  const bool pass = std::abs(sum - target) / target < 0.02;
  return check("bath_coupling_sum_rule", pass, "sum g^2=" + num(sum));
}

CheckResult bath_excitation_conservation() {
  const BathStudy study = default_bath_study();
  const Propagator prop(sector_hamiltonian(study.reservoir, study.alpha_a, study.alpha_b));
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    worst = std::max(worst, std::abs(evolve_sector(study.psi0, prop, t).norm() - 1.0));
  }
  return check("bath_excitation_conservation", worst < 1e-10, "max|dnorm|=" + num(worst));
}

CheckResult bath_decoupling_limit() {
  BathStudy study = default_bath_study();
  // Source B decoupled entirely: frozen and full trajectories coincide.
  const Propagator full(sector_hamiltonian(study.reservoir, study.alpha_a, 0.0));
  const Propagator frozen(sector_hamiltonian(study.reservoir, study.alpha_a, 0.0));
  const FlowSeries ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0, BathQubit::B,
                                  BathQubit::A, TimeGrid{2.0, 81});
  const FlowSeries ab = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0, BathQubit::A,
                                  BathQubit::B, TimeGrid{2.0, 81});
  double amp_dev = 0.0;
  for (double t : {0.7, 1.9}) {
    const auto a = evolve_sector(study.psi0, full, t);
    const auto b = evolve_sector(study.psi0, frozen, t);
    amp_dev = std::max(amp_dev, std::abs(a.c_a - b.c_a));
  }
  const double worst = std::max(max_abs_flow(ba), max_abs_flow(ab));
  return check("bath_decoupling_limit", worst < 1e-12 && amp_dev < 1e-12,
               "max|T|=" + num(worst));
}

CheckResult bath_swap_symmetry() {
  const BathStudy study = default_bath_study(201);
  const TimeGrid grid{2.0, 41};
  const FlowSeries ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, study.alpha_b,
                                  BathQubit::B, BathQubit::A, grid);
  SingleExcitationState swapped = study.psi0;
  std::swap(swapped.c_a, swapped.c_b);
  const FlowSeries ab_swapped = bath_flow(swapped, study.reservoir, study.alpha_b, study.alpha_a,
                                          BathQubit::A, BathQubit::B, grid);
  const double worst = (ba.cumulative - ab_swapped.cumulative).cwiseAbs().maxCoeff();
  return check("bath_swap_symmetry", worst < 1e-10, "max dev=" + num(worst));
}

CheckResult bath_discretization_convergence() {
  const BathStudy coarse = default_bath_study(401);
  const BathStudy fine = default_bath_study(802);
  const TimeGrid grid{2.0, 81};
  const FlowSeries fa = bath_flow(coarse.psi0, coarse.reservoir, coarse.alpha_a, coarse.alpha_b,
                                  BathQubit::B, BathQubit::A, grid);
  const FlowSeries fb = bath_flow(fine.psi0, fine.reservoir, fine.alpha_a, fine.alpha_b,
                                  BathQubit::B, BathQubit::A, grid);
  const double flow_dev = (fa.cumulative - fb.cumulative).cwiseAbs().maxCoeff();

  const Propagator pa(sector_hamiltonian(coarse.reservoir, coarse.alpha_a, coarse.alpha_b));
  const Propagator pb(sector_hamiltonian(fine.reservoir, fine.alpha_a, fine.alpha_b));
  double amp_dev = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double t = 2.0 * k / 20.0;
    const double qa = std::norm(evolve_sector(coarse.psi0, pa, t).c_a);
    const double qb = std::norm(evolve_sector(fine.psi0, pb, t).c_a);
    amp_dev = std::max(amp_dev, std::abs(qa - qb));
  }
  return check("bath_discretization_convergence", flow_dev < 1e-2 && amp_dev < 1e-3,
               "flow dev=" + num(flow_dev) + " amp dev=" + num(amp_dev));
}

// --- classical reference -----------------------------------------------------

VectorField2D rotation_field() {
  VectorField2D field;
  field.f1 = [](double, double y) { return -y; };
  field.f2 = [](double x, double) { return x; };
  field.domain = Box2D{-7.0, 7.0, -7.0, 7.0};
  field.d_f1_d_x1 = [](double, double) { return 0.0; };
  field.d_f2_d_x2 = [](double, double) { return 0.0; };
  return field;
}

VectorField2D shear_field() {
  VectorField2D field;
  field.f1 = [](double x, double) { return -x; };
  field.f2 = [](double x, double y) { return x - y; };
  field.domain = Box2D{-7.0, 7.0, -7.0, 7.0};
  field.d_f1_d_x1 = [](double, double) { return -1.0; };
  field.d_f2_d_x2 = [](double, double) { return -1.0; };
  return field;
}

DensityGrid correlated_gaussian(int n) {
  return gaussian_density(Box2D{-7.0, 7.0, -7.0, 7.0}, n, n, 0.0, 0.0, 1.0, 0.4, 1.2);
}

CheckResult classical_nil_causality() {
  const double t = classical_flow_rate(correlated_gaussian(400), shear_field());
  return check("classical_nil_causality", std::abs(t) < 1e-3, "T_21=" + num(t));
}

CheckResult classical_closed_correspondence() {
  // Rigid rotation of a correlated Gaussian: dS_1/dt = -S12/(S11 ln 2).
  const double analytic = -0.4 / (1.0 * std::numbers::ln2);
  const double t = classical_flow_rate(correlated_gaussian(400), rotation_field());
  return check("classical_closed_correspondence", std::abs(t - analytic) < 1e-3,
               "T_21=" + num(t) + " dS1/dt=" + num(analytic));
}

CheckResult classical_asymmetry() {
  const DensityGrid rho = correlated_gaussian(400);
  const VectorField2D field = shear_field();
  const double t21 = classical_flow_rate(rho, field, FlowDirection::X2ToX1);
  const double t12 = classical_flow_rate(rho, field, FlowDirection::X1ToX2);
  return check("classical_asymmetry", std::abs(t21) < 1e-3 && std::abs(t12) > 0.05,
               "T_21=" + num(t21) + " T_12=" + num(t12));
}

CheckResult classical_marginal_entropy_constants() {
  const DensityGrid gauss =
      gaussian_density(Box2D{-8.0, 8.0, -8.0, 8.0}, 400, 400, 0.0, 0.0, 1.0, 0.0, 1.0);
  const double s1 = marginal_entropy(gauss, 1);
  const double expected = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);
  const bool pass = std::abs(s1 - expected) < 1e-3 &&
                    std::abs(marginal_entropy(gauss, 2) - s1) < 1e-12;
  return check("classical_marginal_entropy_constants", pass, "S_1=" + num(s1));
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> results;
  results.push_back(core_entropy_known_values());
  results.push_back(core_global_entropy_conservation());
  results.push_back(core_partial_trace_consistency());
  results.push_back(core_evolution_group_property());
  results.push_back(core_local_hamiltonian_entropy_invariance());
  results.push_back(ham_freeze_idempotent());
  results.push_back(ham_freeze_union_commutes());
  results.push_back(ham_freeze_product_form());
  results.push_back(ham_freeze_untouched_noop());
  results.push_back(ham_frozen_term_list_golden());
  results.push_back(flow_cnot_golden());
  results.push_back(flow_eq9_capacity_time());
  results.push_back(flow_nil_causality());
  results.push_back(flow_complement_rule());
  results.push_back(flow_pure_bipartite_symmetry());
  results.push_back(flow_grid_refinement());
  results.push_back(flow_negative_flow_observed());
  results.push_back(flow_graded_star_goldens());
  results.push_back(flow_star_pairwise_identical());
  results.push_back(flow_disconnected_pairs_zero());
  results.push_back(flow_superadditivity_gap());
  results.push_back(bath_coupling_sum_rule());
  results.push_back(bath_excitation_conservation());
  results.push_back(bath_decoupling_limit());
  results.push_back(bath_swap_symmetry());
  results.push_back(bath_discretization_convergence());
  results.push_back(classical_nil_causality());
  results.push_back(classical_closed_correspondence());
  results.push_back(classical_asymmetry());
  results.push_back(classical_marginal_entropy_constants());
  return results;
}

}  // namespace qliang
