#pragma once

#include <array>
#include <span>

#include "fairmob/city.hpp"

namespace fairmob {

// Weights of the operator reward and of the fairness penalty. Tables are
// indexed by category slot (remote, peripheral, central).
struct RewardWeights {
  double alpha = 20.0;  // rebalancing cost scale
  double xi = 0.3;      // clutter penalty scale
  double beta = 0.0;    // fairness temperature
  std::array<double, 3> phi{1.0, 0.4, 0.1};
  std::array<double, 3> chi{1.0, 0.4, -1.0};
  // Applies max(0, |s - mu| - zeta) instead of the signed tolerance term.
  bool clamp_clutter = false;

  // Throws ConfigError naming the offending field.
  void validate() const;

  // Cost charged for one truck visit to a zone of category c: alpha * phi(c).
  double rebalance_cost(Category c) const;

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

// What happened in one zone over one decision window.
struct ZoneOutcome {
  int zone = 0;
  Category category = Category::Remote;
  bool action_nonzero = false;
  int failures = 0;
  int vehicles_after = 0;
  double expected_demand = 0.0;  // mu: expected departures over the window
  double tolerance = 0.0;        // zeta: half the expected arrivals over the window
};

// lambda_departure(category, regime) * window_hours. Throws ArgumentError for
// an unknown category or a non-positive window.
double expected_demand(const CityPartition& city, Category category, Regime regime,
                       int window_hours);

double clutter_term(const ZoneOutcome& o, const RewardWeights& w);

// alpha * sum_m phi(m) * #{rebalanced zones in m}.
double rebalancing_cost(std::span<const ZoneOutcome> outcomes, const RewardWeights& w);

double base_reward(std::span<const ZoneOutcome> outcomes, const RewardWeights& w);

// base_reward - beta * sum_m chi(m) * failures_m.
double fair_reward(std::span<const ZoneOutcome> outcomes, const RewardWeights& w);

// One zone's summand of fair_reward.
double per_zone_reward(const ZoneOutcome& o, const RewardWeights& w);

}  // namespace fairmob
