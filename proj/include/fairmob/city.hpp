#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace fairmob {

// Area categories, ordered from the most peripheral to the most central.
enum class Category : int { Remote = 1, Peripheral = 2, Central = 3 };

inline constexpr std::array<Category, 3> kCategories{Category::Remote, Category::Peripheral,
                                                     Category::Central};

enum class Regime : int { Morning = 0, Evening = 1 };

inline constexpr std::array<Regime, 2> kRegimes{Regime::Morning, Regime::Evening};

// Zero-based position of a category in per-category arrays. Throws on an
// out-of-range enum value.
std::size_t category_slot(Category c);
Category category_from_slot(std::size_t slot);

std::string_view to_string(Category c);
std::string_view to_string(Regime r);

// Hourly Poisson rates, vehicles/hour.
struct DemandRates {
  double arrival = 0.0;
  double departure = 0.0;

  friend bool operator==(const DemandRates&, const DemandRates&) = default;
};

using CategoryCounts = std::array<int, 3>;
using RateTable = std::map<std::pair<Category, Regime>, DemandRates>;

// Zone counts per category {remote, peripheral, central}.
CategoryCounts default_counts();
// Hourly (arrival, departure) rates per category and regime for the
// reference medium-sized city.
RateTable default_rates();

class CityPartition {
 public:
  CityPartition(CategoryCounts counts, const std::array<std::array<DemandRates, 2>, 3>& rates);

  std::size_t size() const { return zones_.size(); }
  const CategoryCounts& counts() const { return counts_; }
  int count(Category c) const { return counts_[category_slot(c)]; }

  Category category_of(std::size_t zone) const { return zones_.at(zone); }
  const std::vector<Category>& zones() const { return zones_; }

  const DemandRates& rates(Category c, Regime r) const {
    return rates_[category_slot(c)][static_cast<std::size_t>(r)];
  }

 private:
  CategoryCounts counts_;
  std::array<std::array<DemandRates, 2>, 3> rates_;
  std::vector<Category> zones_;
};

// Builds the partitioned city. Zone ids are dense, remote first.
// Throws ConfigError on a missing (category, regime) rate, an invalid rate,
// a negative count or an empty city.
CityPartition build_city(const CategoryCounts& counts, const RateTable& rates);

// Morning for hours [0, 12), Evening for [12, 24).
Regime regime_for_hour(int hour);

}  // namespace fairmob
