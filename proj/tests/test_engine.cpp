#include "doctest.h"

#include <cmath>
#include <map>
#include <vector>

#include "fairmob/engine.hpp"
#include "fairmob/errors.hpp"

using namespace fairmob;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.counts = {6, 3, 1};
  cfg.train_days = 30;
  cfg.eval_days = 5;
  return cfg;
}

RateTable zero_rates() {
  RateTable rates;
  for (Category c : kCategories) {
    for (Regime r : kRegimes) rates[{c, r}] = {0.0, 0.0};
  }
  return rates;
}

}  // namespace

TEST_CASE("null dynamics leave the city untouched") {
  SimConfig cfg = small_config();
  cfg.rates = zero_rates();
  cfg.initial_vehicles = 17;
  const QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
  Simulator sim(cfg, 1);
  for (int d = 0; d < 3; ++d) {
    const DayResult day = sim.eval_day(q);
    CHECK(day.record.rebalancing_cost == 0.0);
    for (std::size_t z = 0; z < sim.city().size(); ++z) {
      CHECK(day.record.failures[z] == 0);
      CHECK(day.record.demanded[z] == 0);
      CHECK(day.record.vehicles[z] == 17);
    }
  }

  cfg.eval_days = 4;
  const std::vector<EvalRecord> records = evaluate(cfg, q, 3);
  const RunSummary s = summarize(records, sim.city(), cfg.cost_weights);
  CHECK(s.gini == 0.0);
  CHECK(s.costs.c1 == 0.0);
  CHECK(s.costs.c2 == 0.0);
}

TEST_CASE("a starved zone fails every hour") {
  SimConfig cfg;
  cfg.counts = {1, 0, 0};
  cfg.initial_vehicles = 0;
  const QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
  Simulator sim(cfg, 5);
  sim.set_draw([](std::size_t, int, const DemandRates&, RngStream&) { return HourDraw{0, 1}; });
  const DayResult day = sim.eval_day(q);
  CHECK(day.record.failures[0] == 24);
  CHECK(day.record.demanded[0] == 24);
}

TEST_CASE("two transitions per zone per training day over full windows") {
  SimConfig cfg = small_config();
  QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
  Simulator sim(cfg, 9);
  std::map<std::size_t, int> draws_per_zone;
  sim.set_draw([&](std::size_t z, int, const DemandRates& r, RngStream& rng) {
    ++draws_per_zone[z];
    return draw_hour(r, rng);
  });
  sim.train_day(q);  // includes the hour simulated before the first day
  draws_per_zone.clear();
  for (int d = 0; d < 4; ++d) {
    const DayResult day = sim.train_day(q);
    CHECK(day.transitions.size() == 2 * sim.city().size());
    std::map<int, int> per_zone;
    for (const EpochTransition& t : day.transitions) ++per_zone[t.zone];
    for (const auto& [zone, n] : per_zone) CHECK(n == 2);
  }
  for (const auto& [zone, n] : draws_per_zone) CHECK(n == 4 * 24);
}

TEST_CASE("window expected demand follows the hourly regimes") {
  const SimConfig cfg;
  Simulator sim(cfg, 1);
  // 11:00 window: hour 11 (morning) + hours 12..22 (evening).
  CHECK(sim.window_demand(0, Category::Central) == doctest::Approx(7.0 + 11 * 13.8));
  CHECK(sim.window_tolerance(0, Category::Central) == doctest::Approx(0.5 * (13.8 + 11 * 10.0)));
  // 23:00 window: hour 23 (evening) + hours 0..10 (morning).
  CHECK(sim.window_demand(1, Category::Remote) == doctest::Approx(0.3 + 11 * 2.0));
  CHECK(sim.window_tolerance(1, Category::Remote) == doctest::Approx(0.5 * (1.5 + 11 * 0.3)));
}

TEST_CASE("initial placement is rounded morning demand") {
  const SimConfig cfg;
  Simulator sim(cfg, 1);
  CHECK(sim.zones()[0].vehicles == 24);
  CHECK(sim.zones()[60].vehicles == 18);
  CHECK(sim.zones()[99].vehicles == 84);
}

TEST_CASE("train bookkeeping") {
  SimConfig cfg = small_config();
  cfg.train_days = 0;
  const QTable untouched = train(cfg, 1);
  CHECK(untouched.updates() == 0);
  for (double v : untouched.values()) CHECK(v == 0.0);

  cfg.counts = {1, 0, 0};
  cfg.train_days = 1;
  CHECK(train(cfg, 1).updates() == 2);

  cfg = small_config();
  CHECK(train(cfg, 77) == train(cfg, 77));
  CHECK_FALSE(train(cfg, 77) == train(cfg, 78));
}

TEST_CASE("evaluate bookkeeping") {
  SimConfig cfg = small_config();
  const QTable q = train(cfg, 4);
  cfg.eval_days = 0;
  const std::vector<EvalRecord> none = evaluate(cfg, q, 5);
  CHECK(none.empty());
  CHECK_THROWS_AS(costs(none), ArgumentError);

  cfg.eval_days = 6;
  const std::vector<EvalRecord> a = evaluate(cfg, q, 5);
  const std::vector<EvalRecord> b = evaluate(cfg, q, 5);
  REQUIRE(a.size() == 6);
  for (std::size_t d = 0; d < a.size(); ++d) {
    CHECK(a[d].failures == b[d].failures);
    CHECK(a[d].vehicles == b[d].vehicles);
    CHECK(a[d].rebalancing_cost == b[d].rebalancing_cost);
  }
}

TEST_CASE("evaluation never modifies the table") {
  SimConfig cfg = small_config();
  const QTable q = train(cfg, 2);
  const QTable copy = q;
  Simulator sim(cfg, 3);
  for (int d = 0; d < 3; ++d) sim.eval_day(q);
  CHECK(q == copy);
}

TEST_CASE("transition rewards decompose the day's fair reward") {
  for (double beta : {0.0, 0.6, 1.0}) {
    SimConfig cfg = small_config();
    cfg.reward.beta = beta;
    QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
    Simulator sim(cfg, 21);
    for (int d = 0; d < 20; ++d) {
      const DayResult day = sim.train_day(q);
      std::vector<ZoneOutcome> outcomes;
      double sum = 0.0;
      for (const EpochTransition& t : day.transitions) {
        outcomes.push_back(t.outcome);
        sum += t.reward;
      }
      const double total = fair_reward(outcomes, cfg.reward);
      CHECK(std::abs(sum - total) <= 1e-9 * std::max(1.0, std::abs(total)));
      if (beta == 0.0) CHECK(std::abs(sum - base_reward(outcomes, cfg.reward)) <= 1e-9 * std::max(1.0, std::abs(total)));
    }
  }
}

TEST_CASE("logged failures equal a replay of the recorded draws") {
  SimConfig cfg = small_config();
  const QTable idle = make_rebalancing_table(cfg.sigma, cfg.agent);  // greedy picks delta 0
  Simulator sim(cfg, 13);
  std::vector<std::vector<HourDraw>> draws(sim.city().size());
  sim.set_draw([&](std::size_t z, int, const DemandRates& r, RngStream& rng) {
    const HourDraw d = draw_hour(r, rng);
    draws[z].push_back(d);
    return d;
  });
  std::vector<ZoneState> replay(sim.zones().begin(), sim.zones().end());
  std::vector<DayResult> days;
  for (int d = 0; d < 5; ++d) days.push_back(sim.eval_day(idle));

  for (std::size_t z = 0; z < replay.size(); ++z) {
    // One hour is simulated before day 0.
    std::size_t k = 0;
    replay[z] = apply_aggregate(replay[z], draws[z][k++]).state;
    for (const DayResult& day : days) {
      int failures = 0;
      for (int h = 0; h < 24; ++h) {
        const StepResult s = apply_aggregate(replay[z], draws[z][k++]);
        failures += s.failures;
        replay[z] = s.state;
      }
      CHECK(day.record.failures[z] == failures);
    }
    CHECK(replay[z].vehicles == sim.zones()[z].vehicles);
  }
}

TEST_CASE("event mode runs and is reproducible") {
  SimConfig cfg = small_config();
  cfg.mode = SteppingMode::Event;
  CHECK(train(cfg, 8) == train(cfg, 8));
}

TEST_CASE("per-epoch decay counts decision epochs") {
  SimConfig cfg = small_config();
  cfg.agent.decay_unit = DecayUnit::PerEpoch;
  cfg.agent.epsilon_decay = 0.5;  // greedy after two epochs
  QTable q = make_rebalancing_table(cfg.sigma, cfg.agent);
  Simulator sim(cfg, 1);
  sim.train_day(q);
  CHECK(sim.epochs() == 3);
}

TEST_CASE("simulator rejects invalid configuration") {
  SimConfig cfg = small_config();
  cfg.rebalance_hours = {11, 11};
  CHECK_THROWS_AS(Simulator(cfg, 1), ConfigError);
  cfg = small_config();
  cfg.sigma = 0;
  CHECK_THROWS_AS(Simulator(cfg, 1), ConfigError);
  cfg = small_config();
  cfg.rebalance_hours = {24};
  CHECK_THROWS_AS(Simulator(cfg, 1), ConfigError);
}
