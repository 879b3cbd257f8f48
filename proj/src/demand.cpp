#include "fairmob/demand.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

namespace {

double checked_rate(double rate) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw ArgumentError(fmt::format("Poisson rate must be finite and >= 0, got {}", rate));
  }
  return rate;
}

}  // namespace

int sample_poisson(double rate, RngStream& rng) {
  if (checked_rate(rate) == 0.0) return 0;
  return std::poisson_distribution<int>(rate)(rng.engine());
}

HourDraw draw_hour(const DemandRates& rates, RngStream& rng) {
  const int a = sample_poisson(rates.arrival, rng);
  const int d = sample_poisson(rates.departure, rng);
  return {a, d};
}

ZoneSampler::Source::Source(double rate)
    : active(checked_rate(rate) > 0.0), dist(active ? rate : 1.0) {}

int ZoneSampler::Source::sample(RngStream& rng) { return active ? dist(rng.engine()) : 0; }

ZoneSampler::ZoneSampler(const DemandRates& morning, const DemandRates& evening)
    : sources_{{{Source(morning.arrival), Source(morning.departure)},
                {Source(evening.arrival), Source(evening.departure)}}} {}

HourDraw ZoneSampler::draw(Regime regime, RngStream& rng) {
  auto& pair = sources_[static_cast<std::size_t>(regime)];
  const int a = pair[0].sample(rng);
  const int d = pair[1].sample(rng);
  return {a, d};
}

StepResult apply_aggregate(const ZoneState& state, HourDraw draw) {
  const int supply = state.vehicles + draw.arrivals;
  const int failures = std::max(0, draw.departures - supply);
  StepResult out;
  out.state = state;
  out.state.vehicles = std::min(state.sigma, std::max(0, supply - draw.departures));
  out.state.failures_hour = failures;
  out.state.departures_demanded_hour = draw.departures;
  out.failures = failures;
  out.demanded = draw.departures;
  out.served = draw.departures - failures;
  out.accepted = out.state.vehicles - state.vehicles + out.served;
  return out;
}

namespace {

struct EventReplay {
  int vehicles;
  int sigma;
  int failures = 0;
  int served = 0;
  int demanded = 0;
  int accepted = 0;

  void arrival() {
    if (vehicles < sigma) {
      ++vehicles;
      ++accepted;
    }
  }
  void departure() {
    ++demanded;
    if (vehicles == 0) {
      ++failures;
    } else {
      --vehicles;
      ++served;
    }
  }
  StepResult finish(const ZoneState& start) const {
    StepResult out;
    out.state = start;
    out.state.vehicles = vehicles;
    out.state.failures_hour = failures;
    out.state.departures_demanded_hour = demanded;
    out.failures = failures;
    out.demanded = demanded;
    out.served = served;
    out.accepted = accepted;
    return out;
  }
};

StepResult interleave(const ZoneState& state, HourDraw draw, RngStream& rng) {
  EventReplay replay{state.vehicles, state.sigma};
  int arrivals = draw.arrivals;
  int departures = draw.departures;
  // Picking each next event with probability proportional to the remaining
  // counts yields a uniformly random interleaving.
  while (arrivals + departures > 0) {
    if (arrivals > 0 && departures > 0) {
      if (rng.uniform_index(arrivals + departures) < arrivals) {
        replay.arrival();
        --arrivals;
      } else {
        replay.departure();
        --departures;
      }
    } else if (arrivals > 0) {
      replay.arrival();
      --arrivals;
    } else {
      replay.departure();
      --departures;
    }
  }
  return replay.finish(state);
}

}  // namespace

StepResult apply_events(const ZoneState& state, std::span<const DemandEvent> order) {
  EventReplay replay{state.vehicles, state.sigma};
  for (DemandEvent e : order) {
    if (e == DemandEvent::Arrival) {
      replay.arrival();
    } else {
      replay.departure();
    }
  }
  return replay.finish(state);
}

StepResult step_hour_aggregate(const ZoneState& state, const DemandRates& rates, RngStream& rng) {
  return apply_aggregate(state, draw_hour(rates, rng));
}

StepResult step_hour_event(const ZoneState& state, const DemandRates& rates, RngStream& rng) {
  const HourDraw draw = draw_hour(rates, rng);
  return interleave(state, draw, rng);
}

StepResult step_hour(SteppingMode mode, const ZoneState& state, HourDraw draw, RngStream& rng) {
  if (mode == SteppingMode::Aggregate) return apply_aggregate(state, draw);
  return interleave(state, draw, rng);
}

}  // namespace fairmob
