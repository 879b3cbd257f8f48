#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "fairmob/engine.hpp"

namespace fairmob {

struct SweepConfig {
  std::vector<double> betas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  // Explicit run seeds. When empty, `seed_count` seeds are derived from the
  // master seed with derive_seed(master, index).
  std::vector<std::uint64_t> seeds;
  int seed_count = 10;
  int workers = 1;

  std::vector<std::uint64_t> resolve_seeds(std::uint64_t master) const;
  void validate() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

// Metrics of one (beta, seed) train + evaluate run.
struct RunMetrics {
  double beta = 0.0;
  std::uint64_t seed = 0;
  double gini = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double cost = 0.0;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

struct ParetoPoint {
  double beta = 0.0;
  double mean_cost = 0.0;
  double mean_gini = 0.0;
  std::vector<RunMetrics> runs;
};

// Training uses derive_seed(seed, 0) and evaluation derive_seed(seed, 1).
RunMetrics run_single(const SimConfig& base, double beta, std::uint64_t seed,
                      const ProgressFn& progress = {});

// Progress callback: (completed runs, total runs, finished run).
using SweepProgressFn = std::function<void(std::size_t, std::size_t, const RunMetrics&)>;

// Raised when some runs of a sweep fail. Holds the runs that completed, in
// (beta, seed) order.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, std::vector<RunMetrics> completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}
  const std::vector<RunMetrics>& completed() const { return completed_; }

 private:
  std::vector<RunMetrics> completed_;
};

// Trains and evaluates every (beta, seed) pair on up to `workers` threads.
// `order`, when given, is the job execution order (a permutation of the
// beta-major job indices); results never depend on it.
std::vector<ParetoPoint> beta_sweep(const SimConfig& base, const SweepConfig& sweep,
                                    const SweepProgressFn& progress = {},
                                    std::span<const std::size_t> order = {});

// Groups runs by beta (ascending) and averages cost and Gini over seeds.
std::vector<ParetoPoint> points_from_runs(std::span<const RunMetrics> runs);

// Runs of every point in (beta, seed) order.
std::vector<RunMetrics> flatten_runs(std::span<const ParetoPoint> points);

// Non-dominated subset under minimization of (mean_cost, mean_gini), sorted
// by cost. Exact ties are all kept.
std::vector<ParetoPoint> pareto_front(std::span<const ParetoPoint> points);

struct Tradeoff {
  // Best ratio among points that cost more than the baseline.
  std::optional<double> beta;
  std::optional<double> rho;
  double gini_change = 0.0;  // relative, (g - g0) / g0
  double cost_change = 0.0;  // relative, (C - C0) / C0
  double baseline_cost = 0.0;
  double baseline_gini = 0.0;
  // Points that are no more expensive and strictly fairer than the baseline.
  std::vector<double> dominating_betas;
};

// rho(beta) = [(g0 - g) / g0] / [(C - C0) / C0] relative to beta = 0.
Tradeoff best_tradeoff_ratio(std::span<const ParetoPoint> points);

struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Linearly interpolated quantiles.
BoxStats box_stats(std::vector<double> values);

struct MetricDistribution {
  double beta = 0.0;
  std::string metric;  // gini, C1, C2, C3
  BoxStats stats;
};

std::vector<MetricDistribution> aggregate_stats(std::span<const ParetoPoint> points);

}  // namespace fairmob
