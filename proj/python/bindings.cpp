#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qliang/bath.hpp"
#include "qliang/classical.hpp"
#include "qliang/flow.hpp"
#include "qliang/hamiltonian.hpp"
#include "qliang/plot.hpp"
#include "qliang/presets.hpp"
#include "qliang/scenario.hpp"
#include "qliang/validation.hpp"

namespace py = pybind11;
using namespace qliang;

namespace {

SiteRegistry registry_from_pairs(const std::vector<std::pair<std::string, int>>& sites,
                                 std::size_t dim_cap) {
  std::vector<Site> s;
  s.reserve(sites.size());
  for (const auto& [label, dim] : sites) s.push_back({label, dim});
  return SiteRegistry(std::move(s), dim_cap);
}

FrozenSet frozen_from_list(const std::vector<std::string>& labels) {
  FrozenSet f;
  f.labels.insert(labels.begin(), labels.end());
  return f;
}

py::dict series_to_dict(const FlowSeries& series) {
  py::dict out;
  out["times"] = series.times;
  out["s_target"] = series.s_target;
  out["s_target_frozen"] = series.s_target_frozen;
  out["cumulative"] = series.cumulative;
  out["rate"] = series.rate;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qliang, m) {
  m.doc() = "Quantum Liang information flow simulator core";

  py::register_exception<DimensionCapError>(m, "DimensionCapError");
  py::register_exception<ScenarioError>(m, "ScenarioError");

  py::class_<SiteRegistry>(m, "SiteRegistry")
      .def(py::init([](const std::vector<std::pair<std::string, int>>& sites,
                       std::size_t dim_cap) { return registry_from_pairs(sites, dim_cap); }),
           py::arg("sites"), py::arg("dim_cap") = kDefaultDimCap)
      .def_property_readonly("dimension", &SiteRegistry::dimension)
      .def_property_readonly("labels",
                             [](const SiteRegistry& r) {
                               std::vector<std::string> out;
                               for (const auto& s : r.sites()) out.push_back(s.label);
                               return out;
                             })
      .def("__eq__", [](const SiteRegistry& a, const SiteRegistry& b) { return a == b; });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("registry", &DensityMatrix::registry)
      .def_property_readonly("matrix",
                             [](const DensityMatrix& rho) { return rho.entries; });

  py::class_<HermitianOperator>(m, "HermitianOperator")
      .def_readonly("registry", &HermitianOperator::registry)
      .def_property_readonly("matrix",
                             [](const HermitianOperator& h) { return h.entries; });

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def_readonly("registry", &HamiltonianSpec::registry)
      .def_property_readonly("term_count",
                             [](const HamiltonianSpec& s) { return s.terms.size(); });

  py::class_<StateReport>(m, "StateReport")
      .def_readonly("hermiticity_deviation", &StateReport::hermiticity_deviation)
      .def_readonly("trace_deviation", &StateReport::trace_deviation)
      .def_readonly("min_eigenvalue", &StateReport::min_eigenvalue)
      .def("passed", &StateReport::pass);

  m.def("density_matrix", &make_density_matrix, py::arg("registry"), py::arg("matrix"),
        "Validated density matrix on a registry");
  m.def("hermitian_operator", &make_hermitian_operator, py::arg("registry"), py::arg("matrix"));
  m.def("basis_state", &basis_state, py::arg("registry"), py::arg("levels"));
  m.def("product_state", &product_state, py::arg("registry"), py::arg("site_states"));
  m.def("pure_state", &pure_state, py::arg("registry"), py::arg("ket"));
  m.def("maximally_mixed_site", &maximally_mixed_site, py::arg("dim"));
  m.def("basis_site", &basis_site, py::arg("dim"), py::arg("level"));

  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("keep"));
  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"),
        "Von Neumann entropy in bits");
  m.def("validate_state", &validate_state, py::arg("rho"), py::arg("tol") = kPsdTol);
  m.def(
      "evolve",
      [](const DensityMatrix& rho, const HermitianOperator& h, double t) {
        return evolve(rho, h, t);
      },
      py::arg("rho"), py::arg("hamiltonian"), py::arg("t"));
  m.def(
      "embed",
      [](const std::vector<std::pair<std::string, Matrix>>& factors, const SiteRegistry& reg) {
        std::vector<SiteFactor> fs;
        for (const auto& [label, matrix] : factors) fs.push_back({label, matrix});
        return embed(fs, reg);
      },
      py::arg("factors"), py::arg("registry"));

  m.def("make_spec", [](const SiteRegistry& reg) { return make_spec(reg); }, py::arg("registry"));
  m.def("add_coupling", &add_coupling, py::arg("spec"), py::arg("i"), py::arg("j"),
        py::arg("eta"));
  m.def("add_field_z", &add_field_z, py::arg("spec"), py::arg("site"), py::arg("b"));
  m.def(
      "build_star",
      [](const SiteRegistry& reg, const std::string& center,
         const std::vector<std::pair<std::string, double>>& leaves) {
        return build_star(reg, center, leaves);
      },
      py::arg("registry"), py::arg("center"), py::arg("leaves"));
  m.def(
      "freeze",
      [](const HamiltonianSpec& spec, const std::vector<std::string>& frozen, bool keep_local) {
        return freeze(spec, frozen_from_list(frozen),
                      keep_local ? FrozenLocalTerms::Keep : FrozenLocalTerms::Drop);
      },
      py::arg("spec"), py::arg("frozen"), py::arg("keep_local_terms") = false);
  m.def("materialize", &materialize, py::arg("spec"));
  m.def(
      "gate_unitary",
      [](const std::string& name, const std::vector<std::string>& sites,
         const SiteRegistry& reg) {
        if (name == "CNOT") return gate_unitary(Gate::CNOT, sites, reg);
        if (name == "SWAP") return gate_unitary(Gate::SWAP, sites, reg);
        throw std::invalid_argument("gate_unitary: unknown gate '" + name + "'");
      },
      py::arg("name"), py::arg("sites"), py::arg("registry"));
  m.def(
      "custom_gate_unitary",
      [](const Matrix& u, const std::vector<std::string>& sites, const SiteRegistry& reg) {
        return gate_unitary(u, sites, reg);
      },
      py::arg("matrix"), py::arg("sites"), py::arg("registry"));

  m.def(
      "cumulative_flow",
      [](const HamiltonianSpec& spec, const DensityMatrix& rho0,
         const std::vector<std::string>& sources, const std::vector<std::string>& target,
         double t_max, int steps, const std::string& rate_mode, double rate_step) {
        FlowRequest req{spec,
                        rho0,
                        target,
                        frozen_from_list(sources),
                        TimeGrid{t_max, steps},
                        rate_mode == "instantaneous" ? RateMode::Instantaneous
                                                     : RateMode::FromStart,
                        rate_step};
        return series_to_dict(cumulative_flow(req));
      },
      py::arg("hamiltonian"), py::arg("initial"), py::arg("sources"), py::arg("target"),
      py::arg("t_max"), py::arg("steps"), py::arg("rate_mode") = "from_start",
      py::arg("rate_step") = 1e-3);
  m.def(
      "instantaneous_rate",
      [](const HamiltonianSpec& spec, const DensityMatrix& rho0,
         const std::vector<std::string>& sources, const std::vector<std::string>& target,
         double t, double rate_step) {
        FlowRequest req{spec,       rho0, target, frozen_from_list(sources),
                        TimeGrid{std::max(t, 1.0), 2}, RateMode::Instantaneous, rate_step};
        return instantaneous_rate(req, t);
      },
      py::arg("hamiltonian"), py::arg("initial"), py::arg("sources"), py::arg("target"),
      py::arg("t"), py::arg("rate_step") = 1e-3);
  m.def("discrete_map_flow", &discrete_map_flow, py::arg("rho0"), py::arg("u_full"),
        py::arg("target"), py::arg("u_frozen") = std::nullopt);
  m.def(
      "pairwise_flow_matrix",
      [](const HamiltonianSpec& spec, const DensityMatrix& rho0, double t_max, int steps) {
        const PairwiseFlowMatrix out = pairwise_flow_matrix(spec, rho0, TimeGrid{t_max, steps});
        return py::make_tuple(out.labels, out.flows);
      },
      py::arg("hamiltonian"), py::arg("initial"), py::arg("t_max"), py::arg("steps") = 2);

  py::class_<ReservoirSpec>(m, "ReservoirSpec")
      .def_readonly("omegas", &ReservoirSpec::omegas)
      .def_readonly("couplings", &ReservoirSpec::couplings)
      .def_readonly("lambda_", &ReservoirSpec::lambda)
      .def_readonly("big_r", &ReservoirSpec::big_r)
      .def("coupling_norm_squared", &ReservoirSpec::coupling_norm_squared);
  m.def("discretize_lorentzian", &discretize_lorentzian, py::arg("lambda_"), py::arg("big_r"),
        py::arg("omega0"), py::arg("n_modes"), py::arg("cutoff_width"));
  m.def(
      "bath_flow",
      [](double lambda, double big_r, double ratio_a, double ratio_b, Complex c_a, Complex c_b,
         int n_modes, double cutoff_width, const std::string& source, double t_max, int steps) {
        const ReservoirSpec res =
            discretize_lorentzian(lambda, big_r, 0.0, n_modes, cutoff_width);
        const auto [alpha_a, alpha_b] = normalized_couplings(ratio_a, ratio_b);
        const SingleExcitationState psi0 = qubit_pair_state(c_a, c_b, n_modes);
        const BathQubit src = source == "A" ? BathQubit::A : BathQubit::B;
        const BathQubit dst = source == "A" ? BathQubit::B : BathQubit::A;
        return series_to_dict(
            bath_flow(psi0, res, alpha_a, alpha_b, src, dst, TimeGrid{t_max, steps}));
      },
      py::arg("lambda_"), py::arg("big_r"), py::arg("ratio_a"), py::arg("ratio_b"),
      py::arg("c_a"), py::arg("c_b"), py::arg("n_modes"), py::arg("cutoff_width"),
      py::arg("source"), py::arg("t_max"), py::arg("steps"));

  py::class_<DensityGrid>(m, "DensityGrid")
      .def_property_readonly("values", [](const DensityGrid& g) { return g.values; })
      .def_property_readonly("mass", &DensityGrid::mass);
  m.def(
      "gaussian_density",
      [](double half_width, int n, double s11, double s12, double s22) {
        return gaussian_density(Box2D{-half_width, half_width, -half_width, half_width}, n, n,
                                0.0, 0.0, s11, s12, s22);
      },
      py::arg("half_width"), py::arg("n"), py::arg("s11"), py::arg("s12"), py::arg("s22"));
  m.def(
      "classical_flow_rate",
      [](const DensityGrid& rho, const std::function<double(double, double)>& f1,
         const std::function<double(double, double)>& f2, const std::string& direction) {
        VectorField2D field;
        field.f1 = f1;
        field.f2 = f2;
        field.domain = rho.domain;
        return classical_flow_rate(rho, field,
                                   direction == "1->2" ? FlowDirection::X1ToX2
                                                       : FlowDirection::X2ToX1);
      },
      py::arg("rho"), py::arg("f1"), py::arg("f2"), py::arg("direction") = "2->1");
  m.def(
      "evolve_density",
      [](const DensityGrid& rho, const std::function<double(double, double)>& f1,
         const std::function<double(double, double)>& f2, double dt, int steps) {
        VectorField2D field;
        field.f1 = f1;
        field.f2 = f2;
        field.domain = rho.domain;
        return evolve_density(rho, field, dt, steps);
      },
      py::arg("rho"), py::arg("f1"), py::arg("f2"), py::arg("dt"), py::arg("steps"));
  m.def("marginal_entropy", &marginal_entropy, py::arg("rho"), py::arg("axis"));
  m.def("grid_entropy", &grid_entropy, py::arg("rho"));

  m.def("run_scenario_file",
        [](const std::string& path, std::size_t dim_cap) {
          const ScenarioResult result = run_scenario(load_scenario(path), dim_cap);
          return py::make_tuple(result.csv_paths, result.svg_paths);
        },
        py::arg("path"), py::arg("dim_cap") = kDefaultDimCap);
  m.def("plot_csv_to_svg", &plot_csv_to_svg, py::arg("csv_path"), py::arg("svg_path"));
  m.def("run_validation_suite", []() {
    py::list out;
    for (const auto& r : run_validation_suite()) {
      out.append(py::make_tuple(r.name, r.pass, r.detail));
    }
    return out;
  });

  // canonical study systems
  m.def("three_qubit_chain", &three_qubit_chain, py::arg("eta_ac"), py::arg("eta_bc"));
  m.def("three_qubit_mixed_senders", &three_qubit_mixed_senders);
  m.def("five_qubit_star", &five_qubit_star, py::arg("leaf_etas"));
  m.def("five_qubit_star_initial", &five_qubit_star_initial);

  m.attr("DEFAULT_DIM_CAP") = py::int_(kDefaultDimCap);
  m.attr("__version__") = "0.1.0";
}
