#pragma once

#include <array>
#include <random>
#include <span>

#include "fairmob/city.hpp"
#include "fairmob/rng.hpp"

namespace fairmob {

// Occupancy of one zone. `failures_hour` and `departures_demanded_hour`
// describe the most recent hourly step.
struct ZoneState {
  int vehicles = 0;
  int sigma = 100;
  int failures_hour = 0;
  int departures_demanded_hour = 0;

  bool valid() const {
    return sigma >= 0 && vehicles >= 0 && vehicles <= sigma && failures_hour >= 0 &&
           failures_hour <= departures_demanded_hour;
  }
};

enum class SteppingMode { Aggregate, Event };

// Poisson counts drawn for one zone-hour.
struct HourDraw {
  int arrivals = 0;
  int departures = 0;
};

struct StepResult {
  ZoneState state;
  int failures = 0;
  int demanded = 0;
  int served = 0;    // departures that found a vehicle
  int accepted = 0;  // arrivals not discarded at the cap
};

enum class DemandEvent { Arrival, Departure };

// Poisson(rate) sample. Throws ArgumentError for negative or non-finite rates.
int sample_poisson(double rate, RngStream& rng);

HourDraw draw_hour(const DemandRates& rates, RngStream& rng);

// Poisson samplers for one zone's arrival and departure rates in both
// regimes, with their setup done once. Each zone owns its own sampler so
// that zone streams stay independent.
class ZoneSampler {
 public:
  ZoneSampler(const DemandRates& morning, const DemandRates& evening);

  HourDraw draw(Regime regime, RngStream& rng);

 private:
  struct Source {
    explicit Source(double rate);
    int sample(RngStream& rng);

    bool active;
    std::poisson_distribution<int> dist;
  };

  // [regime][0 = arrivals, 1 = departures]
  std::array<std::array<Source, 2>, 2> sources_;
};

// Net update: failures = max(0, D - vehicles - A), occupancy floored at 0
// and capped at sigma.
StepResult apply_aggregate(const ZoneState& state, HourDraw draw);

// Replays arrival/departure events in the given order. Departures at zero
// occupancy fail; arrivals at sigma are discarded.
StepResult apply_events(const ZoneState& state, std::span<const DemandEvent> order);

StepResult step_hour_aggregate(const ZoneState& state, const DemandRates& rates, RngStream& rng);

// Draws A and D, then interleaves the events in a uniformly random order.
StepResult step_hour_event(const ZoneState& state, const DemandRates& rates, RngStream& rng);

StepResult step_hour(SteppingMode mode, const ZoneState& state, HourDraw draw, RngStream& rng);

}  // namespace fairmob
