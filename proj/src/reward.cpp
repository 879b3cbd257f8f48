#include "fairmob/reward.hpp"

#include <cmath>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

namespace {

void require_strictly_decreasing(const std::array<double, 3>& t, const char* field,
                                 const char* symbol, double lo, double hi, bool lo_open) {
  for (double v : t) {
    const bool below = lo_open ? !(v > lo) : !(v >= lo);
    if (!std::isfinite(v) || below || v > hi) {
      throw ConfigError(fmt::format("reward.{}: value {} outside {}{}, {}]", field, v,
                                    lo_open ? "(" : "[", lo, hi));
    }
  }
  if (!(t[0] > t[1] && t[1] > t[2])) {
    throw ConfigError(fmt::format("reward.{}: {} must be strictly decreasing", field, symbol));
  }
}

}  // namespace

void RewardWeights::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw ConfigError("reward.alpha: must be > 0");
  if (!std::isfinite(xi) || xi <= 0.0) throw ConfigError("reward.xi: must be > 0");
  if (!std::isfinite(beta) || beta < 0.0) throw ConfigError("reward.beta: must be >= 0");
  require_strictly_decreasing(phi, "phi_table", "phi", 0.0, 1.0, true);
  require_strictly_decreasing(chi, "chi_table", "chi", -1.0, 1.0, false);
}

double RewardWeights::rebalance_cost(Category c) const { return alpha * phi[category_slot(c)]; }

double expected_demand(const CityPartition& city, Category category, Regime regime,
                       int window_hours) {
  if (window_hours <= 0) {
    throw ArgumentError(fmt::format("window_hours must be > 0, got {}", window_hours));
  }
  category_slot(category);
  return city.rates(category, regime).departure * window_hours;
}

double clutter_term(const ZoneOutcome& o, const RewardWeights& w) {
  const double excess = std::abs(o.vehicles_after - o.expected_demand) - o.tolerance;
  return w.clamp_clutter && excess < 0.0 ? 0.0 : excess;
}

double rebalancing_cost(std::span<const ZoneOutcome> outcomes, const RewardWeights& w) {
  std::array<int, 3> visits{};
  for (const ZoneOutcome& o : outcomes) {
    if (o.action_nonzero) ++visits[category_slot(o.category)];
  }
  double cost = 0.0;
  for (std::size_t m = 0; m < 3; ++m) cost += w.phi[m] * visits[m];
  return w.alpha * cost;
}

double base_reward(std::span<const ZoneOutcome> outcomes, const RewardWeights& w) {
  double failures = 0.0;
  double clutter = 0.0;
  for (const ZoneOutcome& o : outcomes) {
    failures += o.failures;
    clutter += clutter_term(o, w);
  }
  return -rebalancing_cost(outcomes, w) - failures - w.xi * clutter;
}

double fair_reward(std::span<const ZoneOutcome> outcomes, const RewardWeights& w) {
  std::array<double, 3> failures{};
  for (const ZoneOutcome& o : outcomes) failures[category_slot(o.category)] += o.failures;
  double penalty = 0.0;
  for (std::size_t m = 0; m < 3; ++m) penalty += w.chi[m] * failures[m];
  return base_reward(outcomes, w) - w.beta * penalty;
}

double per_zone_reward(const ZoneOutcome& o, const RewardWeights& w) {
  const std::size_t m = category_slot(o.category);
  const double reb = o.action_nonzero ? w.alpha * w.phi[m] : 0.0;
  return -reb - (1.0 + w.beta * w.chi[m]) * o.failures - w.xi * clutter_term(o, w);
}

}  // namespace fairmob
