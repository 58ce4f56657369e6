#include "qliang/scenario.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qliang/plot.hpp"

namespace qliang {

using nlohmann::json;

std::string FlowPairConfig::tag() const {
  std::string out;
  for (const auto& s : sources) out += s;
  out += "_to_";
  for (const auto& t : target) out += t;
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& message) { throw ScenarioError("scenario: " + message); }

json require_field(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

SiteStateConfig parse_site_state(const json& j) {
  SiteStateConfig state;
  if (j.is_string()) {
    if (j.get<std::string>() != "maximally_mixed") {
      fail("site state string must be 'maximally_mixed'");
    }
    state.kind = SiteStateConfig::Kind::MaximallyMixed;
    return state;
  }
  if (!j.is_object()) fail("site state must be a string or object");
  if (j.contains("pure")) {
    state.kind = SiteStateConfig::Kind::Pure;
    state.pure_level = j.at("pure").get<std::string>();
    return state;
  }
  if (j.contains("mixed")) {
    state.kind = SiteStateConfig::Kind::Mixed;
    double total = 0.0;
    for (const auto& entry : j.at("mixed")) {
      if (!entry.is_array() || entry.size() != 2) fail("mixed entries are [probability, level]");
      const double p = entry.at(0).get<double>();
      const int level = std::stoi(entry.at(1).get<std::string>());
      if (p < 0.0) fail("negative probability in mixed state");
      total += p;
      state.mixture.emplace_back(p, level);
    }
    if (std::abs(total - 1.0) > 1e-9) fail("mixed state probabilities must sum to 1");
    return state;
  }
  if (j.contains("maximally_mixed")) {
    state.kind = SiteStateConfig::Kind::MaximallyMixed;
    return state;
  }
  fail("unrecognized site state spec");
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  }
  fail("complex values are a number or [re, im]");
}

std::string strip_suffix(std::string path, const std::string& suffix) {
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    path.resize(path.size() - suffix.size());
  }
  return path;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }

  ScenarioConfig config;
  for (const auto& site : require_field(j, "sites")) {
    Site s;
    s.label = require_field(site, "label").get<std::string>();
    s.dim = site.value("dim", 2);
    config.sites.push_back(std::move(s));
  }
  if (config.sites.empty()) fail("no sites declared");

  auto known = [&](const std::string& label) {
    for (const auto& s : config.sites) {
      if (s.label == label) return true;
    }
    return false;
  };
  auto require_known = [&](const std::string& label) {
    if (!known(label)) fail("reference to undeclared site '" + label + "'");
  };

  if (j.contains("couplings")) {
    for (const auto& c : j.at("couplings")) {
      CouplingConfig cc{require_field(c, "i").get<std::string>(),
                        require_field(c, "j").get<std::string>(),
                        require_field(c, "eta").get<double>()};
      require_known(cc.i);
      require_known(cc.j);
      config.couplings.push_back(std::move(cc));
    }
  }
  if (j.contains("fields_z")) {
    for (const auto& f : j.at("fields_z")) {
      FieldConfig fc{require_field(f, "site").get<std::string>(),
                     require_field(f, "b").get<double>()};
      require_known(fc.site);
      config.fields_z.push_back(std::move(fc));
    }
  }
  if (j.contains("initial")) {
    for (const auto& [label, state] : j.at("initial").items()) {
      require_known(label);
      config.initial.emplace(label, parse_site_state(state));
    }
  }

  for (const auto& flow : require_field(j, "flows")) {
    FlowPairConfig pair;
    for (const auto& s : require_field(flow, "sources")) {
      pair.sources.push_back(s.get<std::string>());
      require_known(pair.sources.back());
    }
    for (const auto& t : require_field(flow, "target")) {
      pair.target.push_back(t.get<std::string>());
      require_known(pair.target.back());
    }
    if (pair.sources.empty() || pair.target.empty()) fail("flow needs sources and a target");
    for (const auto& s : pair.sources) {
      for (const auto& t : pair.target) {
        if (s == t) fail("flow sources and target overlap on '" + s + "'");
      }
    }
    config.flows.push_back(std::move(pair));
  }
  if (config.flows.empty()) fail("empty flows list");

  const json grid = require_field(j, "grid");
  config.grid.t_max = require_field(grid, "t_max").get<double>();
  config.grid.steps = require_field(grid, "steps").get<int>();
  if (!(config.grid.t_max > 0.0) || config.grid.steps < 2) fail("invalid grid");

  const std::string mode = j.value("rate_mode", "from_start");
  if (mode == "from_start") {
    config.rate_mode = RateMode::FromStart;
  } else if (mode == "instantaneous") {
    config.rate_mode = RateMode::Instantaneous;
  } else {
    fail("rate_mode must be 'from_start' or 'instantaneous'");
  }
  config.rate_step = j.value("rate_step", 1e-3);

  const json outputs = require_field(j, "outputs");
  config.csv_prefix = strip_suffix(require_field(outputs, "csv").get<std::string>(), ".csv");
  if (outputs.contains("svg")) {
    config.svg_prefix = strip_suffix(outputs.at("svg").get<std::string>(), ".svg");
  }

  if (j.contains("bath")) {
    const json b = j.at("bath");
    BathConfig bath;
    bath.lambda = require_field(b, "lambda").get<double>();
    bath.big_r = require_field(b, "big_r").get<double>();
    const json ratio = require_field(b, "alpha_ratio");
    if (!ratio.is_array() || ratio.size() != 2) fail("alpha_ratio is [ratio_a, ratio_b]");
    bath.alpha_ratio_a = ratio.at(0).get<double>();
    bath.alpha_ratio_b = ratio.at(1).get<double>();
    bath.n_modes = b.value("n_modes", 401);
    bath.cutoff_width = b.value("cutoff_width", 40.0 * bath.lambda);
    const json psi0 = require_field(b, "psi0");
    bath.c_a = parse_complex(require_field(psi0, "c_a"));
    bath.c_b = parse_complex(require_field(psi0, "c_b"));
    config.bath = bath;

    if (config.sites.size() != 2 || config.sites[0].label != "A" ||
        config.sites[1].label != "B") {
      fail("bath scenarios declare exactly sites A and B");
    }
    if (!config.couplings.empty() || !config.fields_z.empty() || !config.initial.empty()) {
      fail("bath scenarios take their state from the bath block");
    }
    if (config.rate_mode != RateMode::FromStart) {
      fail("bath flows support only the from_start rate mode");
    }
    for (const auto& flow : config.flows) {
      if (flow.sources.size() != 1 || flow.target.size() != 1) {
        fail("bath flows are between single qubits");
      }
    }
  }
  return config;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

ScenarioSystem build_system(const ScenarioConfig& config, std::size_t dim_cap) {
  SiteRegistry registry(config.sites, dim_cap);
  HamiltonianSpec spec = make_spec(registry);
  for (const auto& c : config.couplings) spec = add_coupling(std::move(spec), c.i, c.j, c.eta);
  for (const auto& f : config.fields_z) spec = add_field_z(std::move(spec), f.site, f.b);

  std::vector<Matrix> site_states;
  for (const Site& site : registry.sites()) {
    const auto it = config.initial.find(site.label);
    if (it == config.initial.end()) fail("no initial state for site '" + site.label + "'");
    const SiteStateConfig& state = it->second;
    switch (state.kind) {
      case SiteStateConfig::Kind::MaximallyMixed:
        site_states.push_back(maximally_mixed_site(site.dim));
        break;
      case SiteStateConfig::Kind::Pure: {
        if (state.pure_level == "+") {
          if (site.dim != 2) fail("'+' state requires a qubit site");
          site_states.push_back(plus_site());
        } else {
          site_states.push_back(basis_site(site.dim, std::stoi(state.pure_level)));
        }
        break;
      }
      case SiteStateConfig::Kind::Mixed: {
        Matrix m = Matrix::Zero(site.dim, site.dim);
        for (const auto& [p, level] : state.mixture) {
          if (level < 0 || level >= site.dim) fail("mixed level out of range");
          m(level, level) += p;
        }
        site_states.push_back(std::move(m));
        break;
      }
    }
  }
  return ScenarioSystem{registry, std::move(spec), product_state(registry, site_states)};
}

std::string format_number(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_flow_csv(const std::string& path, const FlowSeries& series) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV '" + path + "'");
  out << "t,S_target,S_target_frozen,T_cum_bits,T_rate_bits_per_time\n";
  for (Eigen::Index k = 0; k < series.times.size(); ++k) {
    out << format_number(series.times[k]) << ',' << format_number(series.s_target[k]) << ','
        << format_number(series.s_target_frozen[k]) << ',' << format_number(series.cumulative[k])
        << ',' << format_number(series.rate[k]) << '\n';
  }
}

namespace {

FlowSeries run_bath_flow(const ScenarioConfig& config, const FlowPairConfig& flow) {
  const BathConfig& bath = *config.bath;
  const ReservoirSpec reservoir = discretize_lorentzian(bath.lambda, bath.big_r, 0.0,
                                                        bath.n_modes, bath.cutoff_width);
  const auto [alpha_a, alpha_b] = normalized_couplings(bath.alpha_ratio_a, bath.alpha_ratio_b);
  const SingleExcitationState psi0 = qubit_pair_state(bath.c_a, bath.c_b, bath.n_modes);
  const BathQubit source = flow.sources[0] == "A" ? BathQubit::A : BathQubit::B;
  const BathQubit target = flow.target[0] == "A" ? BathQubit::A : BathQubit::B;
  return bath_flow(psi0, reservoir, alpha_a, alpha_b, source, target, config.grid);
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, std::size_t dim_cap) {
  ScenarioResult result;

  std::optional<ScenarioSystem> system;
  if (!config.bath.has_value()) system = build_system(config, dim_cap);

  std::vector<FlowSeries> all_series;
  for (const FlowPairConfig& flow : config.flows) {
    FlowSeries series;
    if (config.bath.has_value()) {
      series = run_bath_flow(config, flow);
    } else {
      FrozenSet sources;
      sources.labels.insert(flow.sources.begin(), flow.sources.end());
      FlowRequest req{system->hamiltonian, system->initial, flow.target,
                      std::move(sources),  config.grid,      config.rate_mode,
                      config.rate_step};
      series = cumulative_flow(req);
    }
    const std::string csv_path = config.csv_prefix + "." + flow.tag() + ".csv";
    write_flow_csv(csv_path, series);
    result.csv_paths.push_back(csv_path);
    if (config.svg_prefix.has_value()) {
      const std::string svg_path = *config.svg_prefix + "." + flow.tag() + ".svg";
      plot_csv_to_svg(csv_path, svg_path);
      result.svg_paths.push_back(svg_path);
    }
    all_series.push_back(std::move(series));
  }

  // Comparison file: the cumulative flow of every requested pair side by side.
  if (config.flows.size() >= 2) {
    const std::string path = config.csv_prefix + ".cumulative.csv";
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write CSV '" + path + "'");
      out << "t";
      for (const auto& flow : config.flows) out << ",T_" << flow.tag();
      out << '\n';
      for (Eigen::Index k = 0; k < all_series.front().times.size(); ++k) {
        out << format_number(all_series.front().times[k]);
        for (const auto& series : all_series) out << ',' << format_number(series.cumulative[k]);
        out << '\n';
      }
    }
    result.csv_paths.push_back(path);
    if (config.svg_prefix.has_value()) {
      const std::string svg_path = *config.svg_prefix + ".cumulative.svg";
      plot_csv_to_svg(path, svg_path);
      result.svg_paths.push_back(svg_path);
    }
  }
  return result;
}

}  // namespace qliang
