#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fairmob/errors.hpp"
#include "fairmob/metrics.hpp"
#include "fairmob/rng.hpp"

using namespace fairmob;

TEST_CASE("gini examples") {
  const std::vector<double> equal{0.1, 0.1, 0.1};
  CHECK(gini(equal) == doctest::Approx(0.0));
  const std::vector<double> two{0.0, 1.0};
  CHECK(gini(two) == doctest::Approx(0.5));
  const std::vector<double> three{0.2, 0.4, 0.6};
  CHECK(std::abs(gini(three) - 0.2222) <= 1e-4);
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  CHECK(gini(zeros) == 0.0);
}

TEST_CASE("gini errors") {
  CHECK_THROWS_AS(gini(std::vector<double>{}), ArgumentError);
  CHECK_THROWS_AS(gini(std::vector<double>{0.1, -0.2}), ArgumentError);
}

TEST_CASE("gini is scale and permutation invariant and bounded") {
  RngStream rng(8, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + rng.uniform_index(8);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform();
    const double g = gini(x);
    const double c = 0.01 + 100.0 * rng.uniform();
    std::vector<double> scaled = x;
    for (double& v : scaled) v *= c;
    CHECK(std::abs(gini(scaled) - g) <= 1e-12);
    std::vector<double> shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    CHECK(std::abs(gini(shuffled) - g) <= 1e-12);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0 - 1.0 / n + 1e-12);
  }
}

namespace {

// Small city: 2 remote, 1 peripheral, 1 central.
CityPartition small_city() { return build_city({2, 1, 1}, default_rates()); }

}  // namespace

TEST_CASE("category failure probabilities pool days") {
  const CityPartition city = build_city({1, 1, 1}, default_rates());
  EvalRecord d1 = EvalRecord::zeros(0, 3);
  EvalRecord d2 = EvalRecord::zeros(1, 3);
  d1.failures = {3, 10, 0};
  d1.demanded = {50, 100, 20};
  d2.failures = {7, 0, 0};
  d2.demanded = {50, 0, 20};
  const std::vector<EvalRecord> records{d1, d2};
  const CategoryFailureProbs x = category_failure_probs(records, city);
  CHECK(x[0] == doctest::Approx(0.1));
  CHECK(x[1] == doctest::Approx(0.1));
  CHECK(x[2] == 0.0);
}

TEST_CASE("category failure probabilities errors") {
  const CityPartition city = build_city({1, 1, 1}, default_rates());
  EvalRecord d = EvalRecord::zeros(0, 3);
  d.demanded = {5, 0, 5};
  const std::vector<EvalRecord> records{d};
  try {
    category_failure_probs(records, city);
    FAIL("expected MetricError");
  } catch (const MetricError& e) {
    CHECK(std::string(e.what()).find("peripheral") != std::string::npos);
  }
  CHECK_THROWS_AS(category_failure_probs(std::vector<EvalRecord>{}, city), ArgumentError);
}

TEST_CASE("category failure probabilities match a per-event recount") {
  const CityPartition city = small_city();
  RngStream rng(77, 0);
  for (int trial = 0; trial < 50; ++trial) {
    // Event log: (day, zone, failed).
    struct Event {
      int day;
      std::size_t zone;
      bool failed;
    };
    std::vector<Event> log;
    const int days = 1 + rng.uniform_index(4);
    for (int d = 0; d < days; ++d) {
      for (std::size_t z = 0; z < city.size(); ++z) {
        const int n = 1 + rng.uniform_index(20);
        for (int k = 0; k < n; ++k) log.push_back({d, z, rng.uniform() < 0.3});
      }
    }
    std::vector<EvalRecord> records;
    for (int d = 0; d < days; ++d) records.push_back(EvalRecord::zeros(d, city.size()));
    for (const Event& e : log) {
      records[static_cast<std::size_t>(e.day)].demanded[e.zone] += 1;
      records[static_cast<std::size_t>(e.day)].failures[e.zone] += e.failed;
    }
    const CategoryFailureProbs x = category_failure_probs(records, city);
    for (std::size_t m = 0; m < 3; ++m) {
      double failed = 0;
      double total = 0;
      for (const Event& e : log) {
        if (category_slot(city.category_of(e.zone)) != m) continue;
        total += 1;
        failed += e.failed;
      }
      CHECK(x[m] == doctest::Approx(failed / total).epsilon(1e-12));
    }
  }
}

TEST_CASE("costs examples") {
  EvalRecord d = EvalRecord::zeros(0, 1);
  d.failures = {2};
  d.expected_demand = {4.0};
  d.vehicles = {7};
  Costs c = costs(std::vector{d});
  CHECK(c.c1 == 0.0);
  CHECK(c.c2 == doctest::Approx(0.5));
  CHECK(c.c3 == doctest::Approx(7.0));

  c = costs(std::vector{EvalRecord::zeros(0, 3)});
  CHECK(c.c1 == 0.0);
  CHECK(c.c2 == 0.0);
  CHECK(c.c3 == 0.0);

  EvalRecord a = EvalRecord::zeros(0, 1);
  EvalRecord b = EvalRecord::zeros(1, 1);
  a.rebalancing_cost = 20.0;
  b.rebalancing_cost = 40.0;
  CHECK(costs(std::vector{a, b}).c1 == doctest::Approx(30.0));

  CHECK_THROWS_AS(costs(std::vector<EvalRecord>{}), ArgumentError);
  EvalRecord bad = EvalRecord::zeros(0, 1);
  bad.failures = {1};
  CHECK_THROWS_AS(costs(std::vector{bad}), MetricError);
}

TEST_CASE("costs are linear in record counts") {
  RngStream rng(5, 5);
  std::vector<EvalRecord> records;
  for (int d = 0; d < 4; ++d) {
    EvalRecord r = EvalRecord::zeros(d, 5);
    r.rebalancing_cost = 100.0 * rng.uniform();
    for (std::size_t z = 0; z < 5; ++z) {
      r.failures[z] = rng.uniform_index(10);
      r.expected_demand[z] = 1.0 + 50.0 * rng.uniform();
      r.vehicles[z] = rng.uniform_index(100);
    }
    records.push_back(r);
  }
  std::vector<EvalRecord> doubled = records;
  for (EvalRecord& r : doubled) {
    r.rebalancing_cost *= 2.0;
    for (int& f : r.failures) f *= 2;
    for (int& v : r.vehicles) v *= 2;
  }
  const Costs c = costs(records);
  const Costs c2 = costs(doubled);
  CHECK(c2.c1 == doctest::Approx(2.0 * c.c1));
  CHECK(c2.c2 == doctest::Approx(2.0 * c.c2));
  CHECK(c2.c3 == doctest::Approx(2.0 * c.c3));
}

TEST_CASE("global cost") {
  const CostWeights w;
  CHECK(global_cost({0, 0, 0}, w) == 0.0);
  CHECK(global_cost({30, 0.5, 700}, w) == doctest::Approx(42.0));
  CHECK(global_cost({1, 1, 1}, w) == doctest::Approx(11.01));
}

TEST_CASE("summary of a run without demand is perfectly fair") {
  const CityPartition city = small_city();
  const std::vector<EvalRecord> records{EvalRecord::zeros(0, city.size())};
  const RunSummary s = summarize(records, city, CostWeights{});
  CHECK(s.gini == 0.0);
  CHECK(s.global_cost == 0.0);
}
