#include "fairmob/commands.hpp"

#include <chrono>
#include <exception>
#include <map>

#include <fmt/core.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "fairmob/errors.hpp"
#include "fairmob/io.hpp"

namespace fairmob {

namespace fs = std::filesystem;
using nlohmann::json;

ExperimentConfig resolve_config(const CliOverrides& flags) {
  ExperimentConfig cfg = flags.config ? parse_config(*flags.config) : ExperimentConfig{};
  if (flags.seed) cfg.sim.seed = *flags.seed;
  if (flags.beta) {
    cfg.sim.reward.beta = *flags.beta;
    cfg.sweep.betas = {*flags.beta};
  }
  if (flags.workers) cfg.sweep.workers = *flags.workers;
  if (flags.mode) cfg.sim.mode = *flags.mode;
  if (flags.train_days) cfg.sim.train_days = *flags.train_days;
  if (flags.eval_days) cfg.sim.eval_days = *flags.eval_days;
  cfg.validate();
  return cfg;
}

namespace {

class Manifest {
 public:
  Manifest(fs::path dir, std::string command, const ExperimentConfig& cfg)
      : dir_(std::move(dir)), command_(std::move(command)), cfg_(cfg),
        start_(std::chrono::steady_clock::now()) {}

  void add(const std::string& file, const std::string& contents) {
    write_file(dir_ / file, contents);
    artifacts_.push_back(file);
  }

  // Merges this command's entry into the directory's single manifest.
  void commit() const {
    const fs::path path = dir_ / "manifest.json";
    json doc = json::object();
    if (fs::exists(path)) {
      try {
        doc = json::parse(read_file(path));
      } catch (const json::exception&) {
        doc = json::object();
      }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    doc["tool"] = "fairmob";
    doc["version"] = std::string(kToolVersion);
    doc["master_seed"] = cfg_.sim.seed;
    doc["config"] = serialize_config(cfg_);
    doc["commands"][command_] = {{"artifacts", artifacts_},
                                 {"config", serialize_config(cfg_)},
                                 {"wall_clock_seconds", seconds}};
    write_file(path, doc.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  std::string command_;
  const ExperimentConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> artifacts_;
};

json summary_json(const RunSummary& s, double beta, std::uint64_t seed) {
  return {{"beta", beta},
          {"seed", seed},
          {"gini", s.gini},
          {"failure_probs",
           {{"remote", s.failure_probs[0]},
            {"peripheral", s.failure_probs[1]},
            {"central", s.failure_probs[2]}}},
          {"C1", s.costs.c1},
          {"C2", s.costs.c2},
          {"C3", s.costs.c3},
          {"C", s.global_cost}};
}

ProgressFn day_logger(const char* phase) {
  return [phase](int day, int total) { spdlog::info("{}: day {}/{}", phase, day, total); };
}

void cmd_train(const ExperimentConfig& cfg, const CommandPaths& paths, std::ostream& out) {
  Manifest m(paths.out_dir, "train", cfg);
  const QTable q = train(cfg.sim, derive_seed(cfg.sim.seed, 0), day_logger("train"));
  m.add("qtable.csv", qtable_csv(q));
  m.commit();
  out << fmt::format("trained {} days, {} updates -> {}\n", cfg.sim.train_days, q.updates(),
                     (paths.out_dir / "qtable.csv").string());
}

void cmd_evaluate(const ExperimentConfig& cfg, const CommandPaths& paths, std::ostream& out) {
  Manifest m(paths.out_dir, "evaluate", cfg);
  const QTable q = paths.qtable
                       ? parse_qtable_csv(read_file(*paths.qtable), cfg.sim.sigma, cfg.sim.agent)
                       : train(cfg.sim, derive_seed(cfg.sim.seed, 0), day_logger("train"));
  const std::vector<EvalRecord> records = evaluate(cfg.sim, q, derive_seed(cfg.sim.seed, 1));
  const CityPartition city = build_city(cfg.sim.counts, cfg.sim.rates);
  const RunSummary s = summarize(records, city, cfg.sim.cost_weights);
  m.add("eval.csv", eval_csv(records, city));
  m.add("metrics.json", summary_json(s, cfg.sim.reward.beta, cfg.sim.seed).dump(2) + "\n");
  m.commit();
  out << fmt::format("gini {} C1 {} C2 {} C3 {} C {}\n", s.gini, s.costs.c1, s.costs.c2,
                     s.costs.c3, s.global_cost);
}

void cmd_sweep(const ExperimentConfig& cfg, const CommandPaths& paths, std::ostream& out) {
  Manifest m(paths.out_dir, "sweep", cfg);
  std::vector<ParetoPoint> points;
  try {
    points = beta_sweep(cfg.sim, cfg.sweep, [](std::size_t done, std::size_t total,
                                               const RunMetrics& r) {
      spdlog::info("run {}/{} done: beta={} seed={} gini={} C={}", done, total, r.beta, r.seed,
                   r.gini, r.cost);
    });
  } catch (const SweepError& e) {
    write_file(paths.out_dir / "runs.csv.partial", runs_csv(e.completed()));
    throw;
  }
  const std::vector<RunMetrics> runs = flatten_runs(points);
  m.add("runs.csv", runs_csv(runs));
  m.add("boxplots.csv", boxplots_csv(aggregate_stats(points)));
  m.commit();
  fs::remove(paths.out_dir / "runs.csv.partial");
  out << fmt::format("{} runs -> {}\n", runs.size(), (paths.out_dir / "runs.csv").string());
}

std::vector<ParetoPoint> load_points(const CommandPaths& paths) {
  const fs::path runs = paths.runs.value_or(paths.out_dir / "runs.csv");
  return points_from_runs(parse_runs_csv(read_file(runs)));
}

json tradeoff_json(const Tradeoff& t) {
  json j = {{"baseline_cost", t.baseline_cost},
            {"baseline_gini", t.baseline_gini},
            {"dominating_betas", t.dominating_betas}};
  if (t.rho) {
    j["beta"] = *t.beta;
    j["rho"] = *t.rho;
    j["gini_change"] = t.gini_change;
    j["cost_change"] = t.cost_change;
  }
  return j;
}

void cmd_pareto(const ExperimentConfig& cfg, const CommandPaths& paths, std::ostream& out) {
  Manifest m(paths.out_dir, "pareto", cfg);
  const std::vector<ParetoPoint> points = load_points(paths);
  const std::vector<ParetoPoint> front = pareto_front(points);
  m.add("pareto.csv", pareto_csv(points));
  m.add("front.csv", pareto_csv(front));
  const Tradeoff t = best_tradeoff_ratio(points);
  m.add("tradeoff.json", tradeoff_json(t).dump(2) + "\n");
  m.commit();
  out << fmt::format("{} points, {} on the front\n", points.size(), front.size());
  out << format_report(points, t);
}

void cmd_report(const ExperimentConfig& cfg, const CommandPaths& paths, std::ostream& out) {
  Manifest m(paths.out_dir, "report", cfg);
  const std::vector<ParetoPoint> points = load_points(paths);
  const std::string text = format_report(points, best_tradeoff_ratio(points));
  m.add("report.txt", text);
  m.commit();
  out << text;
}

}  // namespace

std::string format_report(std::span<const ParetoPoint> points, const Tradeoff& t) {
  std::string s = fmt::format("{:>6} {:>12} {:>10} {:>6}\n", "beta", "mean_C", "mean_gini", "seeds");
  for (const ParetoPoint& p : points) {
    s += fmt::format("{:>6.2f} {:>12.4f} {:>10.4f} {:>6}\n", p.beta, p.mean_cost, p.mean_gini,
                     p.runs.size());
  }
  s += fmt::format("baseline (beta = 0): C = {:.4f}, Gini = {:.4f}\n", t.baseline_cost,
                   t.baseline_gini);
  if (t.rho) {
    s += fmt::format("best trade-off: beta = {}\n", *t.beta);
    s += fmt::format("  Gini change: {:+.1f}%\n", 100.0 * t.gini_change);
    s += fmt::format("  cost change: {:+.1f}%\n", 100.0 * t.cost_change);
    s += fmt::format("  rho: {:.2f}\n", *t.rho);
    if (*t.rho <= 0.0) s += "  no beta above the baseline cost improves fairness\n";
  } else {
    s += "no beta increases cost over the baseline\n";
  }
  for (double b : t.dominating_betas) {
    s += fmt::format("beta = {} is cheaper and fairer than the baseline\n", b);
  }
  return s;
}

int run_subcommand(std::string_view name, const ExperimentConfig& cfg, const CommandPaths& paths,
                   std::ostream& out, std::ostream& err) {
  static const std::map<std::string_view,
                        void (*)(const ExperimentConfig&, const CommandPaths&, std::ostream&)>
      kCommands{{"train", cmd_train},
                {"evaluate", cmd_evaluate},
                {"sweep", cmd_sweep},
                {"pareto", cmd_pareto},
                {"report", cmd_report}};
  const auto it = kCommands.find(name);
  if (it == kCommands.end()) {
    err << fmt::format("error: unknown subcommand '{}'\n", name);
    return 2;
  }
  try {
    fs::create_directories(paths.out_dir);
    it->second(cfg, paths, out);
    return 0;
  } catch (const std::exception& e) {
    err << fmt::format("error: {}: {}\n", name, e.what());
    return 1;
  }
}

}  // namespace fairmob
