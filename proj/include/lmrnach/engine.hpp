#pragma once

// Round-based simulation loop.

#include <cstdint>
#include <vector>

#include "lmrnach/metrics.hpp"
#include "lmrnach/model.hpp"

namespace lmrnach {

/// Everything one run owns. Nodes are stored in ascending id order.
struct SimulationState {
  ScenarioSpec spec;
  std::vector<NodeState> nodes;
  SinkState sink;
  int round = 0;  // rounds completed so far
  Rng rng;
  std::vector<RoundRecord> records;

  double consumed_j = 0.0;  // every Joule charged to any node
  std::uint64_t bits_generated = 0;
  std::uint64_t bits_delivered = 0;  // received by the sink
  std::uint64_t bits_dropped = 0;    // held by rendezvous nodes that died

  explicit SimulationState(const ScenarioSpec& s) : spec(s), rng(s.rng_seed) {}

  int alive_count() const;
};

/// Places num_nodes nodes uniformly in the field from the run's seeded
/// generator, all at full energy, and positions the sink.
SimulationState init_simulation(const ScenarioSpec& spec);

/// Executes one round: death check, RN labelling, election, cluster join,
/// member traffic, aggregation, uplink or RN relay, RN flush, sink motion.
/// Appends and returns the round's record.
const RoundRecord& run_round(SimulationState& state);

/// Runs until max_rounds or the first round that starts with no alive node.
std::vector<RoundRecord> run_simulation(const ScenarioSpec& spec);

/// Advances the sink by (dx, dy) and applies `boundary` at the field edges.
/// Reflection folds the overshoot back inside and flips the velocity sign.
SinkState move_sink(const SinkState& sink, const FieldGeometry& field,
                    SinkBoundary boundary = SinkBoundary::Reflect);

/// |sum of raw residuals + consumed - num_nodes * e0| relative to the initial total.
double energy_balance_error(const SimulationState& state);

}  // namespace lmrnach
