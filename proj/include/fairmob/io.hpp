#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fairmob/agent.hpp"
#include "fairmob/city.hpp"
#include "fairmob/experiments.hpp"
#include "fairmob/metrics.hpp"

namespace fairmob {

// CSV renderers. Every file starts with a header row; every row ends with
// '\n'; reals use the shortest round-trip representation.
std::string runs_csv(std::span<const RunMetrics> runs);
std::string pareto_csv(std::span<const ParetoPoint> points);
std::string boxplots_csv(std::span<const MetricDistribution> rows);
std::string eval_csv(std::span<const EvalRecord> records, const CityPartition& city);
std::string qtable_csv(const QTable& q);

std::vector<RunMetrics> parse_runs_csv(const std::string& text);
// Values are loaded into a table of the given shape and parameters.
QTable parse_qtable_csv(const std::string& text, int sigma, const QParams& params);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace fairmob
