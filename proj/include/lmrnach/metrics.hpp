#pragma once

// Lifetime statistics and CSV / JSON output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lmrnach/model.hpp"

namespace lmrnach {

/// One row per simulated round. Energies are reported after the round's
/// traffic with negative residuals floored at zero; the sink position is the
/// one the round's traffic used.
struct RoundRecord {
  int round = 0;
  int alive = 0;
  int dead = 0;
  int ch_count = 0;
  double total_residual_j = 0.0;
  double avg_energy_per_alive_j = 0.0;
  double sink_x = 0.0;
  double sink_y = 0.0;
  std::uint64_t bits_delivered = 0;  // cumulative

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct LifetimeSummary {
  std::optional<int> first_dead_round;
  std::optional<int> quarter_dead_round;
  int last_alive_round = 0;
  Variant scenario = Variant::Static;
  double dim = 0.0;
  std::uint64_t seed = 0;
};

/// Earliest round with fewer alive nodes than deployed, if any.
std::optional<int> first_dead_round(std::span<const RoundRecord> records);

/// Dead-node count that marks the quarter-dead milestone: ceil(n / 4).
int quarter_dead_threshold(int num_nodes);

/// Earliest round with at least ceil(num_nodes / 4) dead nodes, if any.
std::optional<int> quarter_dead_round(std::span<const RoundRecord> records, int num_nodes);

/// Last round that began with at least one alive node (0 if none did).
int last_alive_round(std::span<const RoundRecord> records);

LifetimeSummary summarize_run(std::span<const RoundRecord> records, const ScenarioSpec& spec);

inline constexpr const char* kRoundCsvHeader =
    "round,alive,dead,ch_count,total_residual_j,avg_energy_per_alive_j,sink_x,sink_y,bits_delivered";

void write_round_csv(std::span<const RoundRecord> records, std::ostream& out);

/// Writes the CSV to `path`. Throws std::runtime_error naming the path on I/O failure.
void write_round_csv(std::span<const RoundRecord> records, const std::filesystem::path& path);

/// Parses a CSV produced by write_round_csv. Throws std::runtime_error on malformed input.
std::vector<RoundRecord> read_round_csv(std::istream& in);

/// Shortest-exact rendering with at least 12 significant digits available.
std::string format_real(double value);

struct MetricStats {
  std::optional<int> median;  // lower median over defined runs
  std::optional<int> min;
  std::optional<int> max;
  int undefined_count = 0;
};

struct ReplicateAggregate {
  Variant scenario = Variant::Static;
  double dim = 0.0;
  int runs = 0;
  MetricStats first_dead;
  MetricStats quarter_dead;
  MetricStats last_alive;
};

/// Lower median of the defined values; none when every value is undefined.
MetricStats metric_stats(std::span<const std::optional<int>> values);

/// Aggregates replicate runs of one (scenario, dim) cell. Throws
/// std::invalid_argument if the list is empty or mixes cells.
ReplicateAggregate summarize_replicates(std::span<const LifetimeSummary> summaries);

/// Summary document keyed scenario -> dim -> metric -> {median, min, max, undefined_count}.
nlohmann::json summary_json(std::span<const ReplicateAggregate> cells);

/// Renders a dimension as a key or filename fragment: "450", "250.5".
std::string dim_label(double dim);

}  // namespace lmrnach
