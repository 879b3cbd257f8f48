#include "fairmob/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "fairmob/errors.hpp"

namespace fairmob {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ConfigError(fmt::format("line {}: cannot parse '{}'", line_no, field));
  }
  return value;
}

// Calls `row(fields, line_no)` for every data row after checking the header.
template <typename RowFn>
void for_each_row(const std::string& text, std::string_view header, RowFn row) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ConfigError(fmt::format("expected CSV header '{}'", header));
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    row(split(line), line_no);
  }
}

constexpr std::string_view kRunsHeader = "beta,seed,gini,C1,C2,C3,C";
constexpr std::string_view kQTableHeader = "state,action,value";

}  // namespace

std::string runs_csv(std::span<const RunMetrics> runs) {
  std::string out(kRunsHeader);
  out += '\n';
  for (const RunMetrics& r : runs) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.beta, r.seed, r.gini, r.c1, r.c2, r.c3, r.cost);
  }
  return out;
}

std::string pareto_csv(std::span<const ParetoPoint> points) {
  std::string out = "beta,mean_C,mean_gini,n_seeds\n";
  for (const ParetoPoint& p : points) {
    out += fmt::format("{},{},{},{}\n", p.beta, p.mean_cost, p.mean_gini, p.runs.size());
  }
  return out;
}

std::string boxplots_csv(std::span<const MetricDistribution> rows) {
  std::string out = "beta,metric,min,q1,median,q3,max,mean\n";
  for (const MetricDistribution& r : rows) {
    const BoxStats& s = r.stats;
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.beta, r.metric, s.min, s.q1, s.median, s.q3,
                       s.max, s.mean);
  }
  return out;
}

std::string eval_csv(std::span<const EvalRecord> records, const CityPartition& city) {
  std::string out =
      "day,zone,category,failures,demanded,expected_demand,vehicles,day_rebalancing_cost\n";
  for (const EvalRecord& r : records) {
    for (std::size_t z = 0; z < city.size(); ++z) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", r.day, z, to_string(city.category_of(z)),
                         r.failures[z], r.demanded[z], r.expected_demand[z], r.vehicles[z],
                         r.rebalancing_cost);
    }
  }
  return out;
}

std::string qtable_csv(const QTable& q) {
  std::string out(kQTableHeader);
  out += '\n';
  for (int s = 0; s < q.states(); ++s) {
    for (int a = 0; a < q.actions(); ++a) out += fmt::format("{},{},{}\n", s, a, q.value(s, a));
  }
  return out;
}

std::vector<RunMetrics> parse_runs_csv(const std::string& text) {
  std::vector<RunMetrics> runs;
  for_each_row(text, kRunsHeader, [&](const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() != 7) throw ConfigError(fmt::format("line {}: expected 7 fields", n));
    runs.push_back({parse_number<double>(f[0], n), parse_number<std::uint64_t>(f[1], n),
                    parse_number<double>(f[2], n), parse_number<double>(f[3], n),
                    parse_number<double>(f[4], n), parse_number<double>(f[5], n),
                    parse_number<double>(f[6], n)});
  });
  return runs;
}

QTable parse_qtable_csv(const std::string& text, int sigma, const QParams& params) {
  QTable q = make_rebalancing_table(sigma, params);
  for_each_row(text, kQTableHeader, [&](const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() != 3) throw ConfigError(fmt::format("line {}: expected 3 fields", n));
    const int s = parse_number<int>(f[0], n);
    const int a = parse_number<int>(f[1], n);
    if (s < 0 || s >= q.states() || a < 0 || a >= q.actions()) {
      throw ConfigError(fmt::format("line {}: entry ({}, {}) outside the table", n, s, a));
    }
    q.set_value(s, a, parse_number<double>(f[2], n));
  });
  return q;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
  out << contents;
  if (!out) throw ConfigError(fmt::format("write to {} failed", path.string()));
}

}  // namespace fairmob
