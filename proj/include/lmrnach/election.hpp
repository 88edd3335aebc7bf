#pragma once

// Per-round role assignment: rendezvous-node labelling and cluster head
// election for every protocol variant.

#include <span>
#include <vector>

#include "lmrnach/model.hpp"

namespace lmrnach {

struct ElectedHead {
  int id = 0;
  Point pos;
};

/// Round-level quantities the weighted threshold depends on. All averages
/// are taken over alive nodes only.
struct ElectionContext {
  int round = 1;
  int alive_count = 0;
  double alive_avg_energy = 0.0;
  double alive_avg_sink_dist = 0.0;
  double alive_avg_times_ch = 0.0;
  std::vector<ElectedHead> elected_so_far;  // in election order; Q = size()
  SinkState sink;
};

ElectionContext make_election_context(std::span<const NodeState> nodes, int round, const SinkState& sink);

/// Relative slack used when a quantity is compared against an average it
/// contributed to, so nodes exactly at the average are not excluded by
/// summation rounding.
inline constexpr double kGateTolerance = 1e-12;

/// Labels every alive node inside the band ym/2 * (1 -+ r_thresh) as a
/// rendezvous node and every other alive node as a normal node. Dead nodes
/// are left alone.
void assign_rn_labels(std::span<NodeState> nodes, const FieldGeometry& field, double r_thresh);

bool in_rn_band(double y, const FieldGeometry& field, double r_thresh);

/// Classic LEACH threshold p / (1 - p * ((round - 1) mod floor(1/p))) for
/// members of G, 0 for nodes that served as CH within the last floor(1/p)
/// rounds.
double leach_threshold(double p, int round, const NodeState& node);

double sub_threshold_t1(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w);
double sub_threshold_t2(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w);
double sub_threshold_t3(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w);
double sub_threshold_t4(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w);

/// Weighted election score a1*T1 + a2*T2 + a3*T3 + a4*T4, zero when the
/// node's energy is below t1 times the alive average.
double z_threshold(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w);

/// Elects cluster heads for this round under the rule of `spec.variant`.
///
/// Alive candidates are visited in ascending id order and one uniform draw
/// is consumed per candidate. Elected nodes become ClusterHead with their
/// CH counters updated, and are appended to `ctx.elected_so_far` so later
/// candidates see them through T3. Returns the elected ids in order.
std::vector<int> elect_cluster_heads(std::span<NodeState> nodes, ElectionContext& ctx, const ScenarioSpec& spec,
                                     Rng& rng);

}  // namespace lmrnach
