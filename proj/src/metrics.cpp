#include "fairmob/metrics.hpp"

#include <cmath>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

EvalRecord EvalRecord::zeros(int day, std::size_t zones) {
  EvalRecord r;
  r.day = day;
  r.failures.assign(zones, 0);
  r.demanded.assign(zones, 0);
  r.expected_demand.assign(zones, 0.0);
  r.vehicles.assign(zones, 0);
  return r;
}

double gini(std::span<const double> x) {
  if (x.empty()) throw ArgumentError("gini of an empty vector");
  double sum = 0.0;
  for (double v : x) {
    if (!(v >= 0.0)) throw ArgumentError(fmt::format("gini input must be >= 0, got {}", v));
    sum += v;
  }
  if (sum == 0.0) return 0.0;
  const double n = static_cast<double>(x.size());
  const double mean = sum / n;
  double diffs = 0.0;
  for (double a : x) {
    for (double b : x) diffs += std::abs(a - b);
  }
  return diffs / (2.0 * n * n * mean);
}

CategoryFailureProbs category_failure_probs(std::span<const EvalRecord> records,
                                            const CityPartition& city) {
  if (records.empty()) throw ArgumentError("category_failure_probs needs at least one record");
  std::array<long long, 3> failures{};
  std::array<long long, 3> demanded{};
  for (const EvalRecord& r : records) {
    for (std::size_t z = 0; z < city.size(); ++z) {
      const std::size_t m = category_slot(city.category_of(z));
      failures[m] += r.failures.at(z);
      demanded[m] += r.demanded.at(z);
    }
  }
  CategoryFailureProbs x{};
  for (std::size_t m = 0; m < 3; ++m) {
    if (demanded[m] == 0) {
      throw MetricError(fmt::format("category {} has zero demanded departures",
                                    to_string(category_from_slot(m))));
    }
    x[m] = static_cast<double>(failures[m]) / static_cast<double>(demanded[m]);
  }
  return x;
}

Costs costs(std::span<const EvalRecord> records) {
  if (records.empty()) throw ArgumentError("costs need at least one evaluation record");
  Costs c;
  for (const EvalRecord& r : records) {
    c.c1 += r.rebalancing_cost;
    for (std::size_t z = 0; z < r.failures.size(); ++z) {
      const double mu = r.expected_demand.at(z);
      if (mu > 0.0) {
        c.c2 += r.failures[z] / mu;
      } else if (r.failures[z] > 0) {
        throw MetricError(fmt::format("zone {} on day {} has failures but zero expected demand", z,
                                      r.day));
      }
      c.c3 += r.vehicles.at(z);
    }
  }
  const double e = static_cast<double>(records.size());
  c.c1 /= e;
  c.c2 /= e;
  c.c3 /= e;
  return c;
}

double global_cost(const Costs& c, const CostWeights& w) {
  return w.w1 * c.c1 + w.w2 * c.c2 + w.w3 * c.c3;
}

RunSummary summarize(std::span<const EvalRecord> records, const CityPartition& city,
                     const CostWeights& weights) {
  RunSummary s;
  s.costs = costs(records);
  s.global_cost = global_cost(s.costs, weights);
  long long demanded = 0;
  for (const EvalRecord& r : records) {
    for (int d : r.demanded) demanded += d;
  }
  if (demanded > 0) {
    s.failure_probs = category_failure_probs(records, city);
    s.gini = gini(s.failure_probs);
  }
  return s;
}

}  // namespace fairmob
