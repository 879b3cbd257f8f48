// Command-line entry point for the fairness-aware rebalancing simulator.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "fairmob/commands.hpp"
#include "fairmob/errors.hpp"

namespace {

void configure_logging() {
  spdlog::set_default_logger(spdlog::stderr_logger_mt("fairmob"));
  spdlog::set_pattern("[%H:%M:%S] [%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FAIR_REBALANCE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Fairness-aware rebalancing simulator for dockless micromobility"};
  app.set_version_flag("--version", std::string(fairmob::kToolVersion));
  app.require_subcommand(1);

  fairmob::CliOverrides flags;
  fairmob::CommandPaths paths;
  std::string config, out = "out", qtable, runs, mode;
  std::uint64_t seed = 0;
  double beta = 0.0;
  int workers = 1, train_days = 0, eval_days = 0;

  auto* o_config = app.add_option("--config", config, "YAML config file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory")->capture_default_str();
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_beta = app.add_option("--beta", beta, "fairness temperature")->check(CLI::NonNegativeNumber);
  auto* o_workers = app.add_option("--workers", workers, "parallel sweep runs")->check(CLI::PositiveNumber);
  auto* o_mode = app.add_option("--mode", mode, "demand stepping mode")
                     ->check(CLI::IsMember({"aggregate", "event"}));
  auto* o_train = app.add_option("--train-days", train_days, "training days")->check(CLI::NonNegativeNumber);
  auto* o_eval = app.add_option("--eval-days", eval_days, "evaluation days")->check(CLI::NonNegativeNumber);

  app.add_subcommand("train", "train a Q-table and write qtable.csv");
  app.add_subcommand("evaluate", "evaluate a policy and write eval.csv + metrics.json")
      ->add_option("--qtable", qtable, "pretrained qtable.csv (trains first when absent)")
      ->check(CLI::ExistingFile);
  app.add_subcommand("sweep", "beta sweep over seeds; writes runs.csv + boxplots.csv");
  app.add_subcommand("pareto", "Pareto front and trade-off ratio from runs.csv")
      ->add_option("--runs", runs, "runs.csv (default: <out>/runs.csv)");
  app.add_subcommand("report", "human-readable trade-off summary from runs.csv")
      ->add_option("--runs", runs, "runs.csv (default: <out>/runs.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*o_config) flags.config = config;
  if (*o_seed) flags.seed = seed;
  if (*o_beta) flags.beta = beta;
  if (*o_workers) flags.workers = workers;
  if (*o_mode) flags.mode = fairmob::parse_mode(mode);
  if (*o_train) flags.train_days = train_days;
  if (*o_eval) flags.eval_days = eval_days;
  paths.out_dir = out;
  if (!qtable.empty()) paths.qtable = qtable;
  if (!runs.empty()) paths.runs = runs;

  fairmob::ExperimentConfig cfg;
  try {
    cfg = fairmob::resolve_config(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return fairmob::run_subcommand(name, cfg, paths, std::cout, std::cerr);
}
