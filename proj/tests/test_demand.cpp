#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "fairmob/demand.hpp"
#include "fairmob/errors.hpp"

using namespace fairmob;

namespace {

struct Moments {
  double mean;
  double variance;
};

template <typename Draw>
Moments moments(Draw draw, int n) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  return {mean, (sum_sq - n * mean * mean) / (n - 1)};
}

ZoneState zone(int vehicles, int sigma = 100) {
  ZoneState z;
  z.vehicles = vehicles;
  z.sigma = sigma;
  return z;
}

}  // namespace

TEST_CASE("sample_poisson degenerate and invalid rates") {
  RngStream rng(7, 0);
  for (int i = 0; i < 1000; ++i) CHECK(sample_poisson(0.0, rng) == 0);
  CHECK_THROWS_AS(sample_poisson(-1.0, rng), ArgumentError);
  CHECK_THROWS_AS(sample_poisson(std::numeric_limits<double>::quiet_NaN(), rng), ArgumentError);
  CHECK_THROWS_AS(sample_poisson(std::numeric_limits<double>::infinity(), rng), ArgumentError);
}

TEST_CASE("sample_poisson moments") {
  RngStream rng(11, 3);
  const Moments m2 = moments([&] { return sample_poisson(2.0, rng); }, 1'000'000);
  CHECK(m2.mean >= 1.99);
  CHECK(m2.mean <= 2.01);
  CHECK(m2.variance >= 1.97);
  CHECK(m2.variance <= 2.03);

  const Moments m13 = moments([&] { return sample_poisson(13.8, rng); }, 1'000'000);
  CHECK(m13.mean >= 13.76);
  CHECK(m13.mean <= 13.84);
}

TEST_CASE("zone sampler draws the configured regime rates") {
  ZoneSampler sampler({13.8, 0.0}, {0.0, 2.0});
  RngStream rng(5, 9);
  const Moments morning = moments([&] { return sampler.draw(Regime::Morning, rng).arrivals; }, 200'000);
  CHECK(morning.mean == doctest::Approx(13.8).epsilon(0.003));
  for (int i = 0; i < 1000; ++i) {
    CHECK(sampler.draw(Regime::Morning, rng).departures == 0);
    CHECK(sampler.draw(Regime::Evening, rng).arrivals == 0);
  }
  CHECK_THROWS_AS(ZoneSampler({-1.0, 0.0}, {0.0, 0.0}), ArgumentError);
}

TEST_CASE("aggregate step") {
  StepResult r = apply_aggregate(zone(5), {0, 0});
  CHECK(r.state.vehicles == 5);
  CHECK(r.failures == 0);

  r = apply_aggregate(zone(0), {0, 3});
  CHECK(r.state.vehicles == 0);
  CHECK(r.failures == 3);
  CHECK(r.demanded == 3);

  r = apply_aggregate(zone(2), {1, 5});
  CHECK(r.state.vehicles == 0);
  CHECK(r.failures == 2);

  r = apply_aggregate(zone(98), {5, 1});
  CHECK(r.state.vehicles == 100);
  CHECK(r.accepted == 3);
}

TEST_CASE("event step") {
  using E = DemandEvent;
  const std::vector<E> two_departures{E::Departure, E::Departure};
  StepResult r = apply_events(zone(0), two_departures);
  CHECK(r.failures == 2);
  CHECK(r.state.vehicles == 0);

  const std::vector<E> order{E::Departure, E::Departure, E::Arrival};
  r = apply_events(zone(1), order);
  CHECK(r.failures == 1);
  CHECK(r.state.vehicles == 1);
  CHECK(r.served == 1);

  const std::vector<E> arrivals{E::Arrival, E::Arrival, E::Arrival};
  r = apply_events(zone(10, 12), arrivals);
  CHECK(r.state.vehicles == 12);
  CHECK(r.failures == 0);
  CHECK(r.accepted == 2);
}

TEST_CASE("random steps keep occupancy bounded and conserve vehicles") {
  RngStream rng(2024, 1);
  ZoneState agg = zone(10, 40);
  ZoneState evt = zone(10, 40);
  for (int i = 0; i < 100'000; ++i) {
    const DemandRates rates{rng.uniform() * 15.0, rng.uniform() * 15.0};
    const StepResult a = step_hour_aggregate(agg, rates, rng);
    const StepResult e = step_hour_event(evt, rates, rng);
    REQUIRE(a.state.valid());
    REQUIRE(e.state.valid());
    REQUIRE(e.failures == e.demanded - e.served);
    REQUIRE(e.state.vehicles == evt.vehicles + e.accepted - e.served);
    REQUIRE(a.state.vehicles == agg.vehicles + a.accepted - a.served);
    agg = a.state;
    evt = e.state;
  }
}

TEST_CASE("event-mode failures dominate aggregate-mode failures on paired draws") {
  RngStream rng(99, 4);
  long agg_total = 0;
  long evt_total = 0;
  for (int i = 0; i < 100'000; ++i) {
    const ZoneState start = zone(rng.uniform_index(15), 30);
    const HourDraw draw{sample_poisson(3.0, rng), sample_poisson(3.0, rng)};
    const int agg = step_hour(SteppingMode::Aggregate, start, draw, rng).failures;
    const int evt = step_hour(SteppingMode::Event, start, draw, rng).failures;
    REQUIRE(evt >= agg);
    agg_total += agg;
    evt_total += evt;
  }
  CHECK(evt_total >= agg_total);
}

TEST_CASE("identical streams give identical trajectories") {
  auto run = [](SteppingMode mode) {
    RngStream rng(42, 17);
    ZoneState z = zone(20);
    std::vector<int> path;
    for (int i = 0; i < 500; ++i) {
      const HourDraw d = draw_hour({4.0, 5.0}, rng);
      z = step_hour(mode, z, d, rng).state;
      path.push_back(z.vehicles);
    }
    return path;
  };
  CHECK(run(SteppingMode::Aggregate) == run(SteppingMode::Aggregate));
  CHECK(run(SteppingMode::Event) == run(SteppingMode::Event));
}
