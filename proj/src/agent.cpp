#include "fairmob/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

int action_index(Action a) {
  if (a.delta % kActionStep != 0 || std::abs(a.delta) > kMaxMove) {
    throw ArgumentError(fmt::format("invalid rebalancing delta {}", a.delta));
  }
  return (a.delta + kMaxMove) / kActionStep;
}

std::vector<int> rebalancing_preference() {
  std::vector<int> order;
  order.push_back(action_index({0}));
  for (int d = kActionStep; d <= kMaxMove; d += kActionStep) {
    order.push_back(action_index({-d}));
    order.push_back(action_index({d}));
  }
  return order;
}

AgentState encode_state(const ZoneState& zone, Category category, Regime regime) {
  return {regime, category, zone.vehicles};
}

int state_index(const AgentState& s, int sigma) {
  if (s.vehicles < 0 || s.vehicles > sigma) {
    throw ArgumentError(fmt::format("vehicles {} outside [0, {}]", s.vehicles, sigma));
  }
  const int block = static_cast<int>(s.regime) * 3 + static_cast<int>(category_slot(s.category));
  return block * (sigma + 1) + s.vehicles;
}

int state_count(int sigma) { return 2 * 3 * (sigma + 1); }

void QParams::validate() const {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ConfigError("agent.learning_rate: must be in (0, 1]");
  }
  if (!in_unit(discount)) throw ConfigError("agent.discount: must be in [0, 1]");
  if (!in_unit(epsilon_start)) throw ConfigError("agent.epsilon_start: must be in [0, 1]");
  if (!in_unit(epsilon_min)) throw ConfigError("agent.epsilon_min: must be in [0, 1]");
  if (epsilon_min > epsilon_start) {
    throw ConfigError("agent.epsilon_min: must not exceed epsilon_start");
  }
  if (!std::isfinite(epsilon_decay) || epsilon_decay < 0.0) {
    throw ConfigError("agent.epsilon_decay: must be >= 0");
  }
}

double epsilon(std::uint64_t k, const QParams& p) {
  return std::max(p.epsilon_min, p.epsilon_start - p.epsilon_decay * static_cast<double>(k));
}

QTable::QTable(int states, int actions, QParams params, std::vector<int> preference)
    : states_(states), actions_(actions), params_(params), preference_(std::move(preference)) {
  if (states <= 0 || actions <= 0) throw ArgumentError("QTable needs at least one state and action");
  if (preference_.empty()) {
    preference_.resize(static_cast<std::size_t>(actions));
    std::iota(preference_.begin(), preference_.end(), 0);
  }
  std::vector<int> sorted = preference_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(static_cast<std::size_t>(actions));
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw ArgumentError("preference must be a permutation of the actions");
  values_.assign(static_cast<std::size_t>(states) * static_cast<std::size_t>(actions), 0.0);
}

std::size_t QTable::offset(int s, int a) const {
  if (s < 0 || s >= states_ || a < 0 || a >= actions_) {
    throw ArgumentError(fmt::format("Q index ({}, {}) out of range", s, a));
  }
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(actions_) +
         static_cast<std::size_t>(a);
}

int QTable::greedy(int s) const {
  const auto r = row(s);
  int best = preference_.front();
  for (int a : preference_) {
    if (r[static_cast<std::size_t>(a)] > r[static_cast<std::size_t>(best)]) best = a;
  }
  return best;
}

double QTable::max_value(int s) const {
  const auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

int QTable::select(int s, double eps, RngStream& rng) const {
  if (eps > 0.0 && rng.uniform() < eps) return rng.uniform_index(actions_);
  return greedy(s);
}

void QTable::update(int s, int a, double reward, int next_s) {
  const double target = reward + params_.discount * max_value(next_s);
  double& q = values_[offset(s, a)];
  q += params_.learning_rate * (target - q);
  ++updates_;
}

QTable make_rebalancing_table(int sigma, const QParams& params) {
  return QTable(state_count(sigma), kActionCount, params, rebalancing_preference());
}

Action select_action(const QTable& q, const AgentState& s, int sigma, double eps,
                     RngStream& rng) {
  return action_at(q.select(state_index(s, sigma), eps, rng));
}

ActionResult apply_action(const ZoneState& zone, Action a) {
  ActionResult out{zone, a.delta != 0};
  out.zone.vehicles = std::min(zone.sigma, std::max(0, zone.vehicles + a.delta));
  return out;
}

}  // namespace fairmob
