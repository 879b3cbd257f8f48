#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fairmob/engine.hpp"
#include "fairmob/experiments.hpp"

namespace fairmob {

// Everything a run or sweep needs. Config files are YAML with the sections
// city, demand, reward, agent, sim and sweep; absent keys keep defaults.
struct ExperimentConfig {
  SimConfig sim;
  SweepConfig sweep;

  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws ConfigError listing unknown keys, or naming the field path of the
// first invalid value.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config(const std::filesystem::path& path);

// Full YAML rendering; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

SteppingMode parse_mode(std::string_view s);
std::string_view to_string(SteppingMode m);

}  // namespace fairmob
