#include "fairmob/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

#include "fairmob/errors.hpp"

namespace fairmob {

SteppingMode parse_mode(std::string_view s) {
  if (s == "aggregate") return SteppingMode::Aggregate;
  if (s == "event") return SteppingMode::Event;
  throw ConfigError(fmt::format("demand.mode: expected aggregate or event, got '{}'", s));
}

std::string_view to_string(SteppingMode m) {
  return m == SteppingMode::Aggregate ? "aggregate" : "event";
}

void ExperimentConfig::validate() const {
  sim.validate();
  sweep.validate();
}

namespace {

// A YAML mapping whose keys are tracked so that leftovers can be reported.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::vector<std::string>& unknown)
      : node_(std::move(node)), path_(std::move(path)), unknown_(unknown) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(fmt::format("{}: expected a mapping", path_));
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  ~Section() {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.contains(key)) unknown_.push_back(join(key));
    }
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    return Section(lookup(key), join(key), unknown_);
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    const YAML::Node n = lookup(key);
    if (!n || n.IsNull()) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(fmt::format("{}: invalid value", join(key)));
    }
  }

  void read_table(const std::string& key, std::array<double, 3>& out) {
    std::vector<double> v;
    read(key, v);
    if (v.empty()) return;
    if (v.size() != 3) throw ConfigError(fmt::format("{}: expected 3 values", join(key)));
    std::copy(v.begin(), v.end(), out.begin());
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool present() const { return node_ && node_.IsMap(); }

 private:
  YAML::Node lookup(const std::string& key) const {
    if (!node_ || !node_.IsMap()) return YAML::Node();
    return node_[key];
  }

  YAML::Node node_;
  std::string path_;
  std::vector<std::string>& unknown_;
  std::set<std::string> seen_;
};

void read_city(Section& s, SimConfig& sim) {
  Section counts = s.child("counts");
  for (std::size_t m = 0; m < 3; ++m) {
    counts.read(std::string(to_string(kCategories[m])), sim.counts[m]);
  }
  s.read("sigma", sim.sigma);
}

void read_demand(Section& s, SimConfig& sim) {
  std::string mode;
  s.read("mode", mode);
  if (!mode.empty()) sim.mode = parse_mode(mode);
  Section rates = s.child("rates");
  for (Category c : kCategories) {
    Section cat = rates.child(std::string(to_string(c)));
    for (Regime r : kRegimes) {
      const std::string key(to_string(r));
      std::vector<double> pair;
      cat.read(key, pair);
      if (pair.empty()) continue;
      if (pair.size() != 2) {
        throw ConfigError(fmt::format("{}: expected [arrival, departure]", cat.join(key)));
      }
      sim.rates[{c, r}] = DemandRates{pair[0], pair[1]};
    }
  }
}

void read_reward(Section& s, RewardWeights& w) {
  s.read("alpha", w.alpha);
  s.read("xi", w.xi);
  s.read("beta", w.beta);
  s.read_table("phi_table", w.phi);
  s.read_table("chi_table", w.chi);
  s.read("clamp_clutter", w.clamp_clutter);
}

void read_agent(Section& s, QParams& p) {
  s.read("learning_rate", p.learning_rate);
  s.read("discount", p.discount);
  s.read("epsilon_start", p.epsilon_start);
  s.read("epsilon_min", p.epsilon_min);
  s.read("epsilon_decay", p.epsilon_decay);
  std::string unit;
  s.read("decay_unit", unit);
  if (unit == "update") {
    p.decay_unit = DecayUnit::PerUpdate;
  } else if (unit == "epoch") {
    p.decay_unit = DecayUnit::PerEpoch;
  } else if (!unit.empty()) {
    throw ConfigError(fmt::format("agent.decay_unit: expected update or epoch, got '{}'", unit));
  }
}

void read_sim(Section& s, SimConfig& sim) {
  s.read("train_days", sim.train_days);
  s.read("eval_days", sim.eval_days);
  s.read("rebalance_hours", sim.rebalance_hours);
  s.read("initial_vehicles", sim.initial_vehicles);
  s.read("seed", sim.seed);
  std::array<double, 3> w{sim.cost_weights.w1, sim.cost_weights.w2, sim.cost_weights.w3};
  s.read_table("cost_weights", w);
  sim.cost_weights = {w[0], w[1], w[2]};
}

void read_sweep(Section& s, SweepConfig& sweep) {
  s.read("betas", sweep.betas);
  s.read("seeds", sweep.seeds);
  s.read("seed_count", sweep.seed_count);
  s.read("workers", sweep.workers);
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  }

  ExperimentConfig cfg;
  std::vector<std::string> unknown;
  {
    Section top(root, "", unknown);
    {
      Section s = top.child("city");
      read_city(s, cfg.sim);
    }
    {
      Section s = top.child("demand");
      read_demand(s, cfg.sim);
    }
    {
      Section s = top.child("reward");
      read_reward(s, cfg.sim.reward);
    }
    {
      Section s = top.child("agent");
      read_agent(s, cfg.sim.agent);
    }
    {
      Section s = top.child("sim");
      read_sim(s, cfg.sim);
    }
    {
      Section s = top.child("sweep");
      read_sweep(s, cfg.sweep);
    }
  }
  if (!unknown.empty()) {
    throw ConfigError(fmt::format("unknown config keys: {}", fmt::join(unknown, ", ")));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  const SimConfig& s = cfg.sim;
  std::string out;
  auto line = [&out](std::string_view text) {
    out += text;
    out += '\n';
  };

  line("city:");
  line("  counts:");
  for (std::size_t m = 0; m < 3; ++m) {
    line(fmt::format("    {}: {}", to_string(kCategories[m]), s.counts[m]));
  }
  line(fmt::format("  sigma: {}", s.sigma));

  line("demand:");
  line(fmt::format("  mode: {}", to_string(s.mode)));
  line("  rates:");
  for (Category c : kCategories) {
    line(fmt::format("    {}:", to_string(c)));
    for (Regime r : kRegimes) {
      const auto it = s.rates.find({c, r});
      if (it == s.rates.end()) continue;
      line(fmt::format("      {}: [{}, {}]", to_string(r), it->second.arrival, it->second.departure));
    }
  }

  const RewardWeights& w = s.reward;
  line("reward:");
  line(fmt::format("  alpha: {}", w.alpha));
  line(fmt::format("  xi: {}", w.xi));
  line(fmt::format("  beta: {}", w.beta));
  line(fmt::format("  phi_table: [{}]", fmt::join(w.phi, ", ")));
  line(fmt::format("  chi_table: [{}]", fmt::join(w.chi, ", ")));
  line(fmt::format("  clamp_clutter: {}", w.clamp_clutter));

  const QParams& a = s.agent;
  line("agent:");
  line(fmt::format("  learning_rate: {}", a.learning_rate));
  line(fmt::format("  discount: {}", a.discount));
  line(fmt::format("  epsilon_start: {}", a.epsilon_start));
  line(fmt::format("  epsilon_min: {}", a.epsilon_min));
  line(fmt::format("  epsilon_decay: {}", a.epsilon_decay));
  line(fmt::format("  decay_unit: {}", a.decay_unit == DecayUnit::PerUpdate ? "update" : "epoch"));

  line("sim:");
  line(fmt::format("  train_days: {}", s.train_days));
  line(fmt::format("  eval_days: {}", s.eval_days));
  line(fmt::format("  rebalance_hours: [{}]", fmt::join(s.rebalance_hours, ", ")));
  line(fmt::format("  initial_vehicles: {}", s.initial_vehicles));
  line(fmt::format("  seed: {}", s.seed));
  line(fmt::format("  cost_weights: [{}, {}, {}]", s.cost_weights.w1, s.cost_weights.w2,
                   s.cost_weights.w3));

  const SweepConfig& sw = cfg.sweep;
  line("sweep:");
  line(fmt::format("  betas: [{}]", fmt::join(sw.betas, ", ")));
  line(fmt::format("  seeds: [{}]", fmt::join(sw.seeds, ", ")));
  line(fmt::format("  seed_count: {}", sw.seed_count));
  line(fmt::format("  workers: {}", sw.workers));
  return out;
}

}  // namespace fairmob
