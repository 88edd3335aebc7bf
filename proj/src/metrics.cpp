#include "lmrnach/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lmrnach {

std::optional<int> first_dead_round(std::span<const RoundRecord> records) {
  for (const auto& r : records) {
    if (r.dead > 0) return r.round;
  }
  return std::nullopt;
}

int quarter_dead_threshold(int num_nodes) { return (num_nodes + 3) / 4; }

std::optional<int> quarter_dead_round(std::span<const RoundRecord> records, int num_nodes) {
  const int needed = quarter_dead_threshold(num_nodes);
  for (const auto& r : records) {
    if (r.dead >= needed) return r.round;
  }
  return std::nullopt;
}

int last_alive_round(std::span<const RoundRecord> records) {
  int last = 0;
  for (const auto& r : records) {
    if (r.alive > 0) last = r.round;
  }
  return last;
}

LifetimeSummary summarize_run(std::span<const RoundRecord> records, const ScenarioSpec& spec) {
  LifetimeSummary s;
  s.first_dead_round = first_dead_round(records);
  s.quarter_dead_round = quarter_dead_round(records, spec.num_nodes);
  s.last_alive_round = last_alive_round(records);
  s.scenario = spec.variant;
  s.dim = spec.field.xm;
  s.seed = spec.rng_seed;
  return s;
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  std::string text(buf, res.ptr);
  // Fall back to the shortest exact form when 12 digits would lose information.
  double parsed = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (parsed != value) {
    const auto exact = std::to_chars(buf, buf + sizeof buf, value);
    text.assign(buf, exact.ptr);
  }
  return text;
}

void write_round_csv(std::span<const RoundRecord> records, std::ostream& out) {
  out << kRoundCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.round << ',' << r.alive << ',' << r.dead << ',' << r.ch_count << ',' << format_real(r.total_residual_j)
        << ',' << format_real(r.avg_energy_per_alive_j) << ',' << format_real(r.sink_x) << ','
        << format_real(r.sink_y) << ',' << r.bits_delivered << '\n';
  }
}

void write_round_csv(std::span<const RoundRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_round_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::runtime_error("malformed CSV field '" + std::string(text) + "' on line " + std::to_string(line_no));
  }
  return value;
}

}  // namespace

std::vector<RoundRecord> read_round_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRoundCsvHeader) throw std::runtime_error("missing or unexpected CSV header");
  std::vector<RoundRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != 9) throw std::runtime_error("expected 9 fields on line " + std::to_string(line_no));
    RoundRecord r;
    r.round = parse_field<int>(fields[0], line_no);
    r.alive = parse_field<int>(fields[1], line_no);
    r.dead = parse_field<int>(fields[2], line_no);
    r.ch_count = parse_field<int>(fields[3], line_no);
    r.total_residual_j = parse_field<double>(fields[4], line_no);
    r.avg_energy_per_alive_j = parse_field<double>(fields[5], line_no);
    r.sink_x = parse_field<double>(fields[6], line_no);
    r.sink_y = parse_field<double>(fields[7], line_no);
    r.bits_delivered = parse_field<std::uint64_t>(fields[8], line_no);
    records.push_back(r);
  }
  return records;
}

MetricStats metric_stats(std::span<const std::optional<int>> values) {
  MetricStats stats;
  std::vector<int> defined;
  for (const auto& v : values) {
    if (v) defined.push_back(*v);
    else ++stats.undefined_count;
  }
  if (defined.empty()) return stats;
  std::sort(defined.begin(), defined.end());
  stats.median = defined[(defined.size() - 1) / 2];
  stats.min = defined.front();
  stats.max = defined.back();
  return stats;
}

ReplicateAggregate summarize_replicates(std::span<const LifetimeSummary> summaries) {
  if (summaries.empty()) throw std::invalid_argument("summarize_replicates needs at least one run");
  ReplicateAggregate agg;
  agg.scenario = summaries.front().scenario;
  agg.dim = summaries.front().dim;
  agg.runs = static_cast<int>(summaries.size());

  std::vector<std::optional<int>> first, quarter, last;
  for (const auto& s : summaries) {
    if (s.scenario != agg.scenario || s.dim != agg.dim) {
      throw std::invalid_argument("summarize_replicates: runs mix scenario/dim cells");
    }
    first.push_back(s.first_dead_round);
    quarter.push_back(s.quarter_dead_round);
    last.emplace_back(s.last_alive_round);
  }
  agg.first_dead = metric_stats(first);
  agg.quarter_dead = metric_stats(quarter);
  agg.last_alive = metric_stats(last);
  return agg;
}

namespace {

nlohmann::json to_json(const MetricStats& m) {
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"median", opt(m.median)}, {"min", opt(m.min)}, {"max", opt(m.max)}, {"undefined_count", m.undefined_count}};
}

}  // namespace

nlohmann::json summary_json(std::span<const ReplicateAggregate> cells) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& c : cells) {
    auto& cell = doc[std::string(to_string(c.scenario))][dim_label(c.dim)];
    cell["runs"] = c.runs;
    cell["first_dead_round"] = to_json(c.first_dead);
    cell["quarter_dead_round"] = to_json(c.quarter_dead);
    cell["last_alive_round"] = to_json(c.last_alive);
  }
  return doc;
}

std::string dim_label(double dim) {
  if (dim == std::floor(dim) && std::abs(dim) < 1e15) return std::to_string(static_cast<long long>(dim));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, dim);
  return std::string(buf, res.ptr);
}

}  // namespace lmrnach
