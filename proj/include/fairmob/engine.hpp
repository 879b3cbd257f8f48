#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fairmob/agent.hpp"
#include "fairmob/city.hpp"
#include "fairmob/demand.hpp"
#include "fairmob/metrics.hpp"
#include "fairmob/reward.hpp"

namespace fairmob {

struct SimConfig {
  CategoryCounts counts = default_counts();
  RateTable rates = default_rates();
  int sigma = 100;
  SteppingMode mode = SteppingMode::Aggregate;
  RewardWeights reward;
  QParams agent;
  CostWeights cost_weights;
  int train_days = 100000;
  int eval_days = 100;
  std::vector<int> rebalance_hours{11, 23};
  // Vehicles per zone at day 0; negative means round(12 h of morning departures).
  int initial_vehicles = -1;
  std::uint64_t seed = 1;

  // Throws ConfigError. With require_positive_demand, every populated
  // category must have a positive departure rate in both regimes, so that
  // mu > 0 for every zone.
  void validate(bool require_positive_demand = true) const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// One agent transition between consecutive decision epochs.
struct EpochTransition {
  int zone = 0;
  int state = 0;
  int action = 0;
  ZoneOutcome outcome;
  double reward = 0.0;
  int next_state = 0;
};

struct DayResult {
  EvalRecord record;
  std::vector<EpochTransition> transitions;
};

// Replaces the Poisson draw for (zone, hour). Test hook.
using DrawFn = std::function<HourDraw(std::size_t zone, int hour, const DemandRates&, RngStream&)>;

// Day-by-day simulation of every zone with decisions at the rebalancing
// hours. Zone states persist across days. Before the first day, the agents
// act at the last rebalancing hour of a virtual previous day and the
// remaining hours of that day are simulated, so every transition spans a
// full window between consecutive epochs.
class Simulator {
 public:
  Simulator(const SimConfig& cfg, std::uint64_t seed);

  // Decisions use epsilon-greedy exploration and every closed transition
  // updates `q` in zone order.
  DayResult train_day(QTable& q);
  // Greedy decisions; `q` is never modified.
  DayResult eval_day(const QTable& q);

  void set_draw(DrawFn fn) { draw_ = std::move(fn); }

  const CityPartition& city() const { return city_; }
  std::span<const ZoneState> zones() const { return zones_; }
  int day() const { return day_; }
  std::uint64_t epochs() const { return epochs_; }

  // Expected departures and half expected arrivals over the window that
  // starts at epoch `slot`, for a zone of category c.
  double window_demand(std::size_t slot, Category c) const;
  double window_tolerance(std::size_t slot, Category c) const;

 private:
  struct Window {
    int hour = 0;
    Regime regime = Regime::Morning;
    std::array<double, 3> mu{};
    std::array<double, 3> zeta{};
  };
  struct Pending {
    bool open = false;
    int state = 0;
    int action = 0;
    ZoneOutcome outcome;
  };

  DayResult run_day(const QTable& policy, QTable* learner);
  void decide(const Window& w, const QTable& policy, QTable* learner, EvalRecord* record,
              std::vector<EpochTransition>* closed);
  void demand_hour(int hour, EvalRecord* record);

  SimConfig cfg_;
  CityPartition city_;
  std::vector<Window> windows_;
  std::array<double, 3> daily_mu_{};
  std::vector<ZoneState> zones_;
  std::vector<Pending> pending_;
  std::vector<RngStream> streams_;
  std::vector<ZoneSampler> samplers_;
  DrawFn draw_;
  int day_ = 0;
  bool started_ = false;
  std::uint64_t epochs_ = 0;
};

using ProgressFn = std::function<void(int day, int total)>;

// Runs cfg.train_days training days from a zero table.
QTable train(const SimConfig& cfg, std::uint64_t seed, const ProgressFn& progress = {});

// Runs cfg.eval_days greedy days with a fresh simulator; one record per day.
std::vector<EvalRecord> evaluate(const SimConfig& cfg, const QTable& q, std::uint64_t seed);

}  // namespace fairmob
