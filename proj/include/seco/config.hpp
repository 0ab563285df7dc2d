#pragma once

#include "seco/seco.hpp"

#include <cstdint>
#include <string>

namespace seco {

inline constexpr int kSchemaVersion = 1;

struct MissionConfig {
  Problem problem;
  SecoConfig solver;
  std::uint64_t seed = 20240607;
};

// bundled lunar scenario with the solver defaults
MissionConfig default_mission();

// JSON document; angles in degrees, quaternions renormalized. Missing keys keep their
// defaults, unknown keys are rejected.
MissionConfig parse_config(const std::string& json_text);
MissionConfig load_config(const std::string& path);
std::string dump_config(const MissionConfig& m);

}  // namespace seco
