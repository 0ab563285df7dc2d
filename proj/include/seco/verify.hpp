#pragma once

#include "seco/config.hpp"

#include <string>
#include <vector>

namespace seco {

struct VerifyOptions {
  bool quick = false;
  bool inject_fault = false;  // perturb one dynamics block seen by the custom solver
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed error
  double tolerance = 0.0;
  std::string detail;
};

// oracle suite on a downsized instance of the mission
std::vector<CheckResult> run_verify(const MissionConfig& m, const VerifyOptions& o = {});

}  // namespace seco
