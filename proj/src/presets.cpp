#include "qliang/presets.hpp"

#include <cmath>

namespace qliang {

namespace {

SiteRegistry chain_registry() { return qubit_registry({"A", "B", "C"}); }
SiteRegistry star_registry() { return qubit_registry({"A", "B", "C", "D", "E"}); }

}  // namespace

HamiltonianSpec three_qubit_chain(double eta_ac, double eta_bc) {
  HamiltonianSpec spec = make_spec(chain_registry());
  spec = add_coupling(std::move(spec), "A", "C", eta_ac);
  spec = add_coupling(std::move(spec), "B", "C", eta_bc);
  return spec;
}

DensityMatrix three_qubit_mixed_senders() {
  return product_state(chain_registry(),
                       {maximally_mixed_site(2), maximally_mixed_site(2), basis_site(2, 0)});
}

DensityMatrix three_qubit_weighted_b(double p0, double p1) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = p0;
  b(1, 1) = p1;
  return product_state(chain_registry(), {maximally_mixed_site(2), b, basis_site(2, 0)});
}

HamiltonianSpec super_exchange_chain(double b_field) {
  HamiltonianSpec spec = three_qubit_chain(1.0, 1.0);
  if (b_field != 0.0) spec = add_field_z(std::move(spec), "C", b_field);
  return spec;
}

DensityMatrix super_exchange_initial() {
  return product_state(chain_registry(),
                       {maximally_mixed_site(2), basis_site(2, 0), maximally_mixed_site(2)});
}

HamiltonianSpec five_qubit_star(const std::array<double, 4>& leaf_etas) {
  return build_star(star_registry(), "E",
                    {{"A", leaf_etas[0]}, {"B", leaf_etas[1]}, {"C", leaf_etas[2]},
                     {"D", leaf_etas[3]}});
}

DensityMatrix five_qubit_star_initial() {
  return product_state(star_registry(),
                       {maximally_mixed_site(2), maximally_mixed_site(2), maximally_mixed_site(2),
                        maximally_mixed_site(2), basis_site(2, 0)});
}

BathStudy default_bath_study(int n_modes) {
  BathStudy study;
  study.reservoir = discretize_lorentzian(1.0, 10.0, 0.0, n_modes, 40.0);
  const auto [alpha_a, alpha_b] = normalized_couplings(10.0, 1.0);
  study.alpha_a = alpha_a;
  study.alpha_b = alpha_b;
  study.psi0 = qubit_pair_state(Complex(std::sqrt(2.0 / 3.0), 0.0),
                                Complex(std::sqrt(1.0 / 3.0), 0.0), n_modes);
  return study;
}

}  // namespace qliang
