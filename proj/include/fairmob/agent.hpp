#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fairmob/city.hpp"
#include "fairmob/demand.hpp"
#include "fairmob/rng.hpp"

namespace fairmob {

// Rebalancing move: vehicles added (> 0) or removed (< 0).
struct Action {
  int delta = 0;
  friend bool operator==(const Action&, const Action&) = default;
};

inline constexpr int kActionCount = 13;
inline constexpr int kActionStep = 5;
inline constexpr int kMaxMove = 30;

// Action index i maps to delta -30 + 5 i.
constexpr Action action_at(int index) { return {-kMaxMove + kActionStep * index}; }
int action_index(Action a);

// Greedy tie-break order: smallest |delta| first, negative before positive.
std::vector<int> rebalancing_preference();

struct AgentState {
  Regime regime = Regime::Morning;
  Category category = Category::Remote;
  int vehicles = 0;
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

AgentState encode_state(const ZoneState& zone, Category category, Regime regime);

// Lexicographic (regime, category, vehicles) index in [0, 6 (sigma + 1)).
int state_index(const AgentState& s, int sigma);
int state_count(int sigma);

enum class DecayUnit { PerUpdate, PerEpoch };

struct QParams {
  double learning_rate = 0.01;
  double discount = 0.9;
  double epsilon_start = 1.0;
  double epsilon_min = 0.01;
  double epsilon_decay = 8.25e-7;
  DecayUnit decay_unit = DecayUnit::PerUpdate;

  void validate() const;
  friend bool operator==(const QParams&, const QParams&) = default;
};

// max(epsilon_min, epsilon_start - decay * k).
double epsilon(std::uint64_t k, const QParams& p);

// Dense tabular action-value function. Greedy ties resolve to the earliest
// action in `preference`.
class QTable {
 public:
  QTable(int states, int actions, QParams params, std::vector<int> preference = {});

  int states() const { return states_; }
  int actions() const { return actions_; }
  const QParams& params() const { return params_; }
  std::uint64_t updates() const { return updates_; }

  double value(int s, int a) const { return values_[offset(s, a)]; }
  void set_value(int s, int a, double v) { values_[offset(s, a)] = v; }
  std::span<const double> row(int s) const {
    return {values_.data() + offset(s, 0), static_cast<std::size_t>(actions_)};
  }
  std::span<const double> values() const { return values_; }

  int greedy(int s) const;
  double max_value(int s) const;

  // With probability eps a uniformly random action, otherwise greedy.
  int select(int s, double eps, RngStream& rng) const;

  // Q(s,a) += lr * (r + gamma * max_a' Q(s',a') - Q(s,a)); counts one update.
  void update(int s, int a, double reward, int next_s);

  // Restores a checkpointed update counter.
  void set_updates(std::uint64_t k) { updates_ = k; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t offset(int s, int a) const;

  int states_;
  int actions_;
  QParams params_;
  std::vector<int> preference_;
  std::vector<double> values_;
  std::uint64_t updates_ = 0;
};

// Table over the rebalancing state space with the 13 rebalancing moves.
QTable make_rebalancing_table(int sigma, const QParams& params);

Action select_action(const QTable& q, const AgentState& s, int sigma, double eps, RngStream& rng);

struct ActionResult {
  ZoneState zone;
  bool executed = false;  // truck dispatched; clipped moves still count
};

ActionResult apply_action(const ZoneState& zone, Action a);

}  // namespace fairmob
