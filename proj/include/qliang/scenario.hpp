#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qliang/bath.hpp"
#include "qliang/core.hpp"
#include "qliang/flow.hpp"

namespace qliang {

/// Raised for any config parse or validation problem (CLI exit code 2).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CouplingConfig {
  std::string i, j;
  double eta = 0.0;
};

struct FieldConfig {
  std::string site;
  double b = 0.0;
};

struct SiteStateConfig {
  enum class Kind { Pure, Mixed, MaximallyMixed };
  Kind kind = Kind::MaximallyMixed;
  std::string pure_level;                         // "0", "1", "+", ...
  std::vector<std::pair<double, int>> mixture;    // (probability, basis level)
};

struct FlowPairConfig {
  std::vector<std::string> sources;
  std::vector<std::string> target;
  std::string tag() const;
};

struct BathConfig {
  double lambda = 1.0;
  double big_r = 0.0;
  double alpha_ratio_a = 1.0;
  double alpha_ratio_b = 1.0;
  int n_modes = 401;
  double cutoff_width = 0.0;  // defaults to 40 * lambda when 0
  Complex c_a{1.0, 0.0};
  Complex c_b{0.0, 0.0};
};

struct ScenarioConfig {
  std::vector<Site> sites;
  std::vector<CouplingConfig> couplings;
  std::vector<FieldConfig> fields_z;
  std::map<std::string, SiteStateConfig> initial;
  std::vector<FlowPairConfig> flows;
  TimeGrid grid;
  RateMode rate_mode = RateMode::FromStart;
  double rate_step = 1e-3;
  std::string csv_prefix;
  std::optional<std::string> svg_prefix;
  std::optional<BathConfig> bath;
};

ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

/// Materialized inputs of a spin-network scenario (no bath block).
struct ScenarioSystem {
  SiteRegistry registry;
  HamiltonianSpec hamiltonian;
  DensityMatrix initial;
};

ScenarioSystem build_system(const ScenarioConfig& config, std::size_t dim_cap = kDefaultDimCap);

struct ScenarioResult {
  std::vector<std::string> csv_paths;
  std::vector<std::string> svg_paths;
};

/// Run every flow of the scenario and write one CSV (and optional SVG) per
/// flow. Output is deterministic: 12 significant digits, '.' decimal point.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            std::size_t dim_cap = kDefaultDimCap);

void write_flow_csv(const std::string& path, const FlowSeries& series);

/// Locale-independent general-format float with 12 significant digits.
std::string format_number(double value);

}  // namespace qliang
