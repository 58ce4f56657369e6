#pragma once

#include <string>
#include <vector>

namespace qliang {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Run every library invariant and golden-number check. Deterministic
/// (fixed seeds); each result carries a short numeric detail string.
std::vector<CheckResult> run_validation_suite();

}  // namespace qliang
