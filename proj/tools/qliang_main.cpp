#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qliang/plot.hpp"
#include "qliang/scenario.hpp"
#include "qliang/validation.hpp"

namespace {

std::size_t dimension_cap_from_env() {
  if (const char* value = std::getenv("QLIANG_DIM_CAP")) {
    try {
      const long long cap = std::stoll(value);
      if (cap < 4) throw std::invalid_argument("too small");
      return static_cast<std::size_t>(cap);
    } catch (const std::exception&) {
      std::cerr << "qliang: ignoring invalid QLIANG_DIM_CAP '" << value << "'\n";
    }
  }
  return qliang::kDefaultDimCap;
}

int run_command(const std::string& config_path) {
  try {
    const qliang::ScenarioConfig config = qliang::load_scenario(config_path);
    const qliang::ScenarioResult result = qliang::run_scenario(config, dimension_cap_from_env());
    for (const auto& path : result.csv_paths) std::cout << "wrote " << path << "\n";
    for (const auto& path : result.svg_paths) std::cout << "wrote " << path << "\n";
    return 0;
  } catch (const qliang::DimensionCapError& e) {
    std::cerr << "qliang: " << e.what() << "\n";
    return 3;
  } catch (const qliang::ScenarioError& e) {
    std::cerr << "qliang: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qliang: " << e.what() << "\n";
    return 2;
  }
}

int validate_command() {
  const auto results = qliang::run_validation_suite();
  std::cout << "1.." << results.size() << "\n";
  int failures = 0;
  int index = 1;
  for (const auto& r : results) {
    if (r.pass) {
      std::cout << "ok " << index << " - " << r.name << " # " << r.detail << "\n";
    } else {
      std::cout << "not ok " << index << " - " << r.name << " # " << r.detail << "\n";
      ++failures;
    }
    ++index;
  }
  std::cout << "# " << (results.size() - failures) << "/" << results.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

int plot_command(const std::string& csv, const std::string& svg) {
  try {
    qliang::plot_csv_to_svg(csv, svg);
    std::cout << "wrote " << svg << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qliang: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Liang information flow simulator"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run a scenario config and write flow CSVs");
  run->add_option("config", config_path, "Scenario JSON file")->required();

  CLI::App* validate = app.add_subcommand("validate", "Run the invariant and golden-number suite");

  std::string csv_path, svg_path;
  CLI::App* plot = app.add_subcommand("plot", "Render a flow CSV as an SVG line plot");
  plot->add_option("csv", csv_path, "Input CSV")->required();
  plot->add_option("svg", svg_path, "Output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(config_path);
  if (validate->parsed()) return validate_command();
  if (plot->parsed()) return plot_command(csv_path, svg_path);
  return 1;
}
