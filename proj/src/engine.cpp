#include "fairmob/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

void SimConfig::validate(bool require_positive_demand) const {
  const CityPartition city = build_city(counts, rates);
  if (sigma <= 0) throw ConfigError("city.sigma: must be > 0");
  if (train_days < 0) throw ConfigError("sim.train_days: must be >= 0");
  if (eval_days < 0) throw ConfigError("sim.eval_days: must be >= 0");
  if (initial_vehicles > sigma) throw ConfigError("sim.initial_vehicles: must not exceed sigma");
  std::set<int> seen;
  for (int h : rebalance_hours) {
    if (h < 0 || h > 23) throw ConfigError(fmt::format("sim.rebalance_hours: hour {} outside 0..23", h));
    if (!seen.insert(h).second) throw ConfigError(fmt::format("sim.rebalance_hours: duplicate hour {}", h));
  }
  if (!(cost_weights.w1 > 0.0 && cost_weights.w2 > 0.0 && cost_weights.w3 > 0.0)) {
    throw ConfigError("sim.cost_weights: weights must be > 0");
  }
  reward.validate();
  agent.validate();
  if (require_positive_demand) {
    for (Category c : kCategories) {
      if (city.count(c) == 0) continue;
      for (Regime r : kRegimes) {
        if (!(city.rates(c, r).departure > 0.0)) {
          throw ConfigError(fmt::format(
              "demand.rates.{}.{}: departure rate must be > 0 (expected demand would be zero)",
              to_string(c), to_string(r)));
        }
      }
    }
  }
}

namespace {

CityPartition city_of(const SimConfig& cfg) {
  cfg.validate(false);
  return build_city(cfg.counts, cfg.rates);
}

}  // namespace

Simulator::Simulator(const SimConfig& cfg, std::uint64_t seed) : cfg_(cfg), city_(city_of(cfg)) {
  std::sort(cfg_.rebalance_hours.begin(), cfg_.rebalance_hours.end());
  const auto& hours = cfg_.rebalance_hours;
  for (std::size_t j = 0; j < hours.size(); ++j) {
    Window w;
    w.hour = hours[j];
    w.regime = regime_for_hour(w.hour);
    const int next = j + 1 < hours.size() ? hours[j + 1] : hours.front() + 24;
    for (int h = w.hour; h < next; ++h) {
      const Regime r = regime_for_hour(h % 24);
      for (std::size_t m = 0; m < 3; ++m) {
        const DemandRates& d = city_.rates(kCategories[m], r);
        w.mu[m] += d.departure;
        w.zeta[m] += 0.5 * d.arrival;
      }
    }
    windows_.push_back(w);
  }
  for (int h = 0; h < 24; ++h) {
    for (std::size_t m = 0; m < 3; ++m) {
      daily_mu_[m] += city_.rates(kCategories[m], regime_for_hour(h)).departure;
    }
  }

  zones_.reserve(city_.size());
  streams_.reserve(city_.size());
  samplers_.reserve(city_.size());
  for (std::size_t z = 0; z < city_.size(); ++z) {
    const Category c = city_.category_of(z);
    int start = cfg_.initial_vehicles;
    if (start < 0) {
      start = static_cast<int>(std::lround(expected_demand(city_, c, Regime::Morning, 12)));
    }
    ZoneState zone;
    zone.sigma = cfg_.sigma;
    zone.vehicles = std::min(start, cfg_.sigma);
    zones_.push_back(zone);
    streams_.emplace_back(seed, z);
    samplers_.emplace_back(city_.rates(c, Regime::Morning), city_.rates(c, Regime::Evening));
  }
  pending_.resize(city_.size());
}

double Simulator::window_demand(std::size_t slot, Category c) const {
  return windows_.at(slot).mu[category_slot(c)];
}

double Simulator::window_tolerance(std::size_t slot, Category c) const {
  return windows_.at(slot).zeta[category_slot(c)];
}

DayResult Simulator::train_day(QTable& q) { return run_day(q, &q); }

DayResult Simulator::eval_day(const QTable& q) { return run_day(q, nullptr); }

void Simulator::decide(const Window& w, const QTable& policy, QTable* learner, EvalRecord* record,
                       std::vector<EpochTransition>* closed) {
  const int sigma = cfg_.sigma;
  for (std::size_t z = 0; z < zones_.size(); ++z) {
    Pending& p = pending_[z];
    if (!p.open) continue;
    EpochTransition t;
    t.zone = static_cast<int>(z);
    t.state = p.state;
    t.action = p.action;
    t.outcome = p.outcome;
    t.reward = per_zone_reward(p.outcome, cfg_.reward);
    t.next_state = state_index(encode_state(zones_[z], city_.category_of(z), w.regime), sigma);
    if (learner != nullptr) learner->update(t.state, t.action, t.reward, t.next_state);
    if (closed != nullptr) closed->push_back(t);
    p.open = false;
  }

  double eps = 0.0;
  if (learner != nullptr) {
    const std::uint64_t k =
        cfg_.agent.decay_unit == DecayUnit::PerUpdate ? learner->updates() : epochs_;
    eps = epsilon(k, cfg_.agent);
  }
  for (std::size_t z = 0; z < zones_.size(); ++z) {
    const Category c = city_.category_of(z);
    const int s = state_index(encode_state(zones_[z], c, w.regime), sigma);
    const int a = policy.select(s, eps, streams_[z]);
    const ActionResult applied = apply_action(zones_[z], action_at(a));
    zones_[z] = applied.zone;

    const std::size_t m = category_slot(c);
    Pending& p = pending_[z];
    p.open = true;
    p.state = s;
    p.action = a;
    p.outcome = ZoneOutcome{static_cast<int>(z), c,         applied.executed, 0,
                            applied.zone.vehicles, w.mu[m], w.zeta[m]};
    if (record != nullptr && applied.executed) {
      record->rebalancing_cost += cfg_.reward.rebalance_cost(c);
      ++record->rebalancing_operations;
    }
  }
  if (learner != nullptr) ++epochs_;
}

void Simulator::demand_hour(int hour, EvalRecord* record) {
  const Regime regime = regime_for_hour(hour);
  for (std::size_t z = 0; z < zones_.size(); ++z) {
    const DemandRates& rates = city_.rates(city_.category_of(z), regime);
    const HourDraw draw =
        draw_ ? draw_(z, hour, rates, streams_[z]) : samplers_[z].draw(regime, streams_[z]);
    const StepResult step = step_hour(cfg_.mode, zones_[z], draw, streams_[z]);
    zones_[z] = step.state;
    if (pending_[z].open) pending_[z].outcome.failures += step.failures;
    if (record != nullptr) {
      record->failures[z] += step.failures;
      record->demanded[z] += step.demanded;
    }
  }
}

DayResult Simulator::run_day(const QTable& policy, QTable* learner) {
  if (!started_) {
    started_ = true;
    if (!windows_.empty()) {
      const Window& last = windows_.back();
      decide(last, policy, learner, nullptr, nullptr);
      for (int h = last.hour; h < 24; ++h) demand_hour(h, nullptr);
    }
  }

  DayResult out;
  out.record = EvalRecord::zeros(day_, zones_.size());
  for (std::size_t z = 0; z < zones_.size(); ++z) {
    out.record.expected_demand[z] = daily_mu_[category_slot(city_.category_of(z))];
  }
  out.transitions.reserve(zones_.size() * windows_.size());

  auto snapshot = [&] {
    for (std::size_t z = 0; z < zones_.size(); ++z) out.record.vehicles[z] = zones_[z].vehicles;
  };
  std::size_t next_window = 0;
  for (int hour = 0; hour < 24; ++hour) {
    if (next_window < windows_.size() && windows_[next_window].hour == hour) {
      decide(windows_[next_window], policy, learner, &out.record, &out.transitions);
      ++next_window;
      if (next_window == windows_.size()) snapshot();
    }
    demand_hour(hour, &out.record);
  }
  if (windows_.empty()) snapshot();
  ++day_;
  return out;
}

QTable train(const SimConfig& cfg, std::uint64_t seed, const ProgressFn& progress) {
  QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
  Simulator sim(cfg, seed);
  const int report_every = std::max(1, cfg.train_days / 20);
  for (int d = 0; d < cfg.train_days; ++d) {
    sim.train_day(q);
    if (progress && ((d + 1) % report_every == 0 || d + 1 == cfg.train_days)) {
      progress(d + 1, cfg.train_days);
    }
  }
  return q;
}

std::vector<EvalRecord> evaluate(const SimConfig& cfg, const QTable& q, std::uint64_t seed) {
  Simulator sim(cfg, seed);
  std::vector<EvalRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.eval_days));
  for (int d = 0; d < cfg.eval_days; ++d) records.push_back(sim.eval_day(q).record);
  return records;
}

}  // namespace fairmob
