#include "fairmob/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

std::vector<std::uint64_t> SweepConfig::resolve_seeds(std::uint64_t master) const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < seed_count; ++i) out.push_back(derive_seed(master, static_cast<std::uint64_t>(i)));
  return out;
}

void SweepConfig::validate() const {
  if (betas.empty()) throw ConfigError("sweep.betas: must not be empty");
  for (double b : betas) {
    if (!std::isfinite(b) || b < 0.0) throw ConfigError(fmt::format("sweep.betas: invalid beta {}", b));
  }
  if (seeds.empty() && seed_count <= 0) throw ConfigError("sweep.seed_count: must be > 0");
  if (workers <= 0) throw ConfigError("sweep.workers: must be > 0");
}

RunMetrics run_single(const SimConfig& base, double beta, std::uint64_t seed,
                      const ProgressFn& progress) {
  SimConfig cfg = base;
  cfg.reward.beta = beta;
  const QTable q = train(cfg, derive_seed(seed, 0), progress);
  const std::vector<EvalRecord> records = evaluate(cfg, q, derive_seed(seed, 1));
  const RunSummary s = summarize(records, build_city(cfg.counts, cfg.rates), cfg.cost_weights);
  return {beta, seed, s.gini, s.costs.c1, s.costs.c2, s.costs.c3, s.global_cost};
}

std::vector<ParetoPoint> beta_sweep(const SimConfig& base, const SweepConfig& sweep,
                                    const SweepProgressFn& progress,
                                    std::span<const std::size_t> order) {
  sweep.validate();
  const std::vector<std::uint64_t> seeds = sweep.resolve_seeds(base.seed);
  const std::size_t jobs = sweep.betas.size() * seeds.size();

  std::vector<std::size_t> schedule(jobs);
  if (order.empty()) {
    std::iota(schedule.begin(), schedule.end(), std::size_t{0});
  } else {
    schedule.assign(order.begin(), order.end());
    std::vector<std::size_t> check = schedule;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i) {
      if (check.size() != jobs || check[i] != i) throw ArgumentError("order must permute the jobs");
    }
  }

  std::vector<std::optional<RunMetrics>> results(jobs);
  std::vector<std::string> errors(jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      const std::size_t job = schedule[i];
      const double beta = sweep.betas[job / seeds.size()];
      const std::uint64_t seed = seeds[job % seeds.size()];
      try {
        results[job] = run_single(base, beta, seed);
        if (progress) {
          std::lock_guard lock(progress_mutex);
          progress(++done, jobs, *results[job]);
        }
      } catch (const std::exception& e) {
        errors[job] = fmt::format("run (beta={}, seed={}) failed: {}", beta, seed, e.what());
      }
    }
  };

  const int threads = std::min<int>(sweep.workers, static_cast<int>(jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<RunMetrics> completed;
  std::string first_error;
  for (std::size_t job = 0; job < jobs; ++job) {
    if (results[job]) {
      completed.push_back(*results[job]);
    } else if (first_error.empty()) {
      first_error = errors[job];
    }
  }
  if (!first_error.empty()) throw SweepError(first_error, std::move(completed));

  std::vector<ParetoPoint> points;
  for (std::size_t b = 0; b < sweep.betas.size(); ++b) {
    ParetoPoint p;
    p.beta = sweep.betas[b];
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const RunMetrics& r = *results[b * seeds.size() + s];
      p.runs.push_back(r);
      p.mean_cost += r.cost;
      p.mean_gini += r.gini;
    }
    p.mean_cost /= static_cast<double>(seeds.size());
    p.mean_gini /= static_cast<double>(seeds.size());
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<ParetoPoint> points_from_runs(std::span<const RunMetrics> runs) {
  std::map<double, ParetoPoint> grouped;
  for (const RunMetrics& r : runs) {
    ParetoPoint& p = grouped[r.beta];
    p.beta = r.beta;
    p.runs.push_back(r);
  }
  std::vector<ParetoPoint> points;
  for (auto& [beta, p] : grouped) {
    for (const RunMetrics& r : p.runs) {
      p.mean_cost += r.cost;
      p.mean_gini += r.gini;
    }
    p.mean_cost /= static_cast<double>(p.runs.size());
    p.mean_gini /= static_cast<double>(p.runs.size());
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<RunMetrics> flatten_runs(std::span<const ParetoPoint> points) {
  std::vector<RunMetrics> out;
  for (const ParetoPoint& p : points) out.insert(out.end(), p.runs.begin(), p.runs.end());
  return out;
}

std::vector<ParetoPoint> pareto_front(std::span<const ParetoPoint> points) {
  if (points.empty()) throw ArgumentError("pareto_front of an empty point set");
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].mean_cost != points[b].mean_cost) return points[a].mean_cost < points[b].mean_cost;
    return points[a].mean_gini < points[b].mean_gini;
  });

  // Sweep by cost; a point survives if its Gini is below every Gini seen at a
  // strictly lower cost, or equal to the best Gini in its own cost group.
  std::vector<ParetoPoint> front;
  double best_before = INFINITY;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    const double cost = points[idx[i]].mean_cost;
    while (j < idx.size() && points[idx[j]].mean_cost == cost) ++j;
    const double group_best = points[idx[i]].mean_gini;
    if (group_best < best_before) {
      for (std::size_t k = i; k < j && points[idx[k]].mean_gini == group_best; ++k) {
        front.push_back(points[idx[k]]);
      }
      best_before = group_best;
    }
    i = j;
  }
  return front;
}

Tradeoff best_tradeoff_ratio(std::span<const ParetoPoint> points) {
  const auto base = std::find_if(points.begin(), points.end(),
                                 [](const ParetoPoint& p) { return p.beta == 0.0; });
  if (base == points.end()) throw ArgumentError("trade-off ratio needs the beta = 0 baseline");
  const double c0 = base->mean_cost;
  const double g0 = base->mean_gini;
  if (!(g0 > 0.0)) throw MetricError("baseline Gini is zero; no fairness improvement is measurable");
  if (!(c0 > 0.0)) throw MetricError("baseline cost is zero; relative cost change is undefined");

  Tradeoff t;
  t.baseline_cost = c0;
  t.baseline_gini = g0;
  for (const ParetoPoint& p : points) {
    if (p.beta == 0.0) continue;
    const double dg = (g0 - p.mean_gini) / g0;
    const double dc = (p.mean_cost - c0) / c0;
    if (p.mean_cost > c0) {
      const double rho = dg / dc;
      if (!t.rho || rho > *t.rho) {
        t.beta = p.beta;
        t.rho = rho;
        t.gini_change = -dg;
        t.cost_change = dc;
      }
    } else if (p.mean_gini < g0) {
      t.dominating_betas.push_back(p.beta);
    }
  }
  if (!t.rho && t.dominating_betas.empty()) {
    throw MetricError("no beta changes cost or fairness relative to the baseline");
  }
  return t;
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("box_stats of an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  BoxStats s;
  s.min = values.front();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return s;
}

std::vector<MetricDistribution> aggregate_stats(std::span<const ParetoPoint> points) {
  if (points.empty()) throw ArgumentError("aggregate_stats of an empty point set");
  struct Field {
    const char* name;
    double RunMetrics::*member;
  };
  static constexpr Field kFields[] = {
      {"gini", &RunMetrics::gini}, {"C1", &RunMetrics::c1}, {"C2", &RunMetrics::c2}, {"C3", &RunMetrics::c3}};
  std::vector<MetricDistribution> out;
  for (const ParetoPoint& p : points) {
    for (const Field& f : kFields) {
      std::vector<double> values;
      for (const RunMetrics& r : p.runs) values.push_back(r.*(f.member));
      out.push_back({p.beta, f.name, box_stats(std::move(values))});
    }
  }
  return out;
}

}  // namespace fairmob
