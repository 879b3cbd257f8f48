#include "fairmob/city.hpp"

#include <cmath>
#include <string>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

std::size_t category_slot(Category c) {
  const int v = static_cast<int>(c);
  if (v < 1 || v > 3) throw ArgumentError(fmt::format("unknown category {}", v));
  return static_cast<std::size_t>(v - 1);
}

Category category_from_slot(std::size_t slot) {
  if (slot > 2) throw ArgumentError(fmt::format("category slot {} out of range", slot));
  return kCategories[slot];
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Remote: return "remote";
    case Category::Peripheral: return "peripheral";
    case Category::Central: return "central";
  }
  throw ArgumentError(fmt::format("unknown category {}", static_cast<int>(c)));
}

std::string_view to_string(Regime r) {
  return r == Regime::Morning ? "morning" : "evening";
}

CategoryCounts default_counts() { return {60, 30, 10}; }

RateTable default_rates() {
  return {
      {{Category::Remote, Regime::Morning}, {0.3, 2.0}},
      {{Category::Peripheral, Regime::Morning}, {3.3, 1.5}},
      {{Category::Central, Regime::Morning}, {13.8, 7.0}},
      {{Category::Remote, Regime::Evening}, {1.5, 0.3}},
      {{Category::Peripheral, Regime::Evening}, {1.5, 3.3}},
      {{Category::Central, Regime::Evening}, {10.0, 13.8}},
  };
}

CityPartition::CityPartition(CategoryCounts counts,
                             const std::array<std::array<DemandRates, 2>, 3>& rates)
    : counts_(counts), rates_(rates) {
  for (std::size_t slot = 0; slot < 3; ++slot) {
    zones_.insert(zones_.end(), static_cast<std::size_t>(counts_[slot]), kCategories[slot]);
  }
}

CityPartition build_city(const CategoryCounts& counts, const RateTable& rates) {
  long total = 0;
  for (std::size_t slot = 0; slot < 3; ++slot) {
    if (counts[slot] < 0) {
      throw ConfigError(fmt::format("zone count for {} must be >= 0, got {}",
                                    to_string(kCategories[slot]), counts[slot]));
    }
    total += counts[slot];
  }
  if (total == 0) throw ConfigError("city has no zones");

  std::array<std::array<DemandRates, 2>, 3> table{};
  for (Category c : kCategories) {
    for (Regime r : kRegimes) {
      auto it = rates.find({c, r});
      if (it == rates.end()) {
        throw ConfigError(
            fmt::format("missing demand rates for ({}, {})", to_string(c), to_string(r)));
      }
      const DemandRates& d = it->second;
      if (!std::isfinite(d.arrival) || !std::isfinite(d.departure) || d.arrival < 0.0 ||
          d.departure < 0.0) {
        throw ConfigError(fmt::format("demand rates for ({}, {}) must be finite and >= 0",
                                      to_string(c), to_string(r)));
      }
      table[category_slot(c)][static_cast<std::size_t>(r)] = d;
    }
  }
  return CityPartition(counts, table);
}

Regime regime_for_hour(int hour) {
  if (hour < 0 || hour > 23) throw ArgumentError(fmt::format("hour {} outside 0..23", hour));
  return hour < 12 ? Regime::Morning : Regime::Evening;
}

}  // namespace fairmob
