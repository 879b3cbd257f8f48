#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "fairmob/config.hpp"

namespace fairmob {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Command-line values that take precedence over the config file.
struct CliOverrides {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<double> beta;
  std::optional<int> workers;
  std::optional<SteppingMode> mode;
  std::optional<int> train_days;
  std::optional<int> eval_days;
};

// Defaults, then the config file, then flags. Throws ConfigError.
ExperimentConfig resolve_config(const CliOverrides& flags);

struct CommandPaths {
  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> qtable;  // evaluate: pretrained table
  std::optional<std::filesystem::path> runs;    // pareto/report: runs.csv
};

// Subcommands: train, evaluate, sweep, pareto, report. Returns the process
// exit status; diagnostics go to `err`.
int run_subcommand(std::string_view name, const ExperimentConfig& cfg, const CommandPaths& paths,
                   std::ostream& out, std::ostream& err);

// Human-readable trade-off summary over the per-beta points.
std::string format_report(std::span<const ParetoPoint> points, const Tradeoff& t);

}  // namespace fairmob
