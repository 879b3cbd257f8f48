#pragma once

#include <array>
#include <span>
#include <vector>

#include "fairmob/city.hpp"

namespace fairmob {

// One evaluation day. Per-zone vectors are indexed by zone id.
struct EvalRecord {
  int day = 0;
  double rebalancing_cost = 0.0;     // reb_t: alpha-and-phi weighted visits
  int rebalancing_operations = 0;    // unweighted truck visits, for reporting
  std::vector<int> failures;
  std::vector<int> demanded;
  std::vector<double> expected_demand;
  std::vector<int> vehicles;         // sampled after the last decision epoch

  static EvalRecord zeros(int day, std::size_t zones);
};

// Per-category failure probabilities x_k.
using CategoryFailureProbs = std::array<double, 3>;

// Gini index (1 / 2 n^2 mean) * sum_j sum_k |x_j - x_k|. Zero mean yields 0.
// Throws ArgumentError on an empty input or a negative entry.
double gini(std::span<const double> x);

// Pooled ratio of failures to demanded departures per category. Throws
// MetricError naming a category with zero demand.
CategoryFailureProbs category_failure_probs(std::span<const EvalRecord> records,
                                            const CityPartition& city);

struct Costs {
  double c1 = 0.0;  // mean daily rebalancing cost
  double c2 = 0.0;  // mean daily sum of f / mu
  double c3 = 0.0;  // mean daily fleet size
};

// Throws ArgumentError on an empty record list. A zone with mu = 0 and no
// failures contributes 0 to C2; mu = 0 with failures is a MetricError.
Costs costs(std::span<const EvalRecord> records);

struct CostWeights {
  double w1 = 1.0;
  double w2 = 10.0;
  double w3 = 1e-2;

  friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

double global_cost(const Costs& c, const CostWeights& w);

// Gini over category failure probabilities and the cost terms of one run.
struct RunSummary {
  CategoryFailureProbs failure_probs{};
  double gini = 0.0;
  Costs costs;
  double global_cost = 0.0;
};

// A run in which no departure was ever requested is perfectly fair (g = 0).
RunSummary summarize(std::span<const EvalRecord> records, const CityPartition& city,
                     const CostWeights& weights);

}  // namespace fairmob
