#include "lmrnach/election.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lmrnach {

namespace {

// Floor for the node-to-sink distance when the sink sits exactly on a node.
constexpr double kMinSinkDistance = 1e-9;

bool at_least(double value, double bound) { return value >= bound - kGateTolerance * std::abs(bound); }

}  // namespace

ElectionContext make_election_context(std::span<const NodeState> nodes, int round, const SinkState& sink) {
  ElectionContext ctx;
  ctx.round = round;
  ctx.sink = sink;
  double energy = 0.0;
  double dist = 0.0;
  double times_ch = 0.0;
  for (const auto& n : nodes) {
    if (!n.alive()) continue;
    ++ctx.alive_count;
    energy += n.energy;
    dist += distance(n.pos, sink.pos);
    times_ch += n.times_ch;
  }
  if (ctx.alive_count > 0) {
    const auto count = static_cast<double>(ctx.alive_count);
    ctx.alive_avg_energy = energy / count;
    ctx.alive_avg_sink_dist = dist / count;
    ctx.alive_avg_times_ch = times_ch / count;
  }
  return ctx;
}

bool in_rn_band(double y, const FieldGeometry& field, double r_thresh) {
  const double mid = field.ym / 2.0;
  return std::abs(y - mid) <= mid * r_thresh;
}

void assign_rn_labels(std::span<NodeState> nodes, const FieldGeometry& field, double r_thresh) {
  for (auto& n : nodes) {
    if (!n.alive()) continue;
    n.role = in_rn_band(n.pos.y, field, r_thresh) ? NodeRole::RendezvousNode : NodeRole::NormalNode;
  }
}

double leach_threshold(double p, int round, const NodeState& node) {
  const int epoch = static_cast<int>(std::floor(1.0 / p));
  if (node.last_ch_round && round - *node.last_ch_round < epoch) return 0.0;
  const int phase = (round - 1) % epoch;
  return p / (1.0 - p * phase);
}

double sub_threshold_t1(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w) {
  const double avg = ctx.alive_avg_energy;
  if (avg <= 0.0 || !at_least(node.energy, w.t2 * avg)) return 0.0;
  return w.p * node.energy / avg;
}

double sub_threshold_t2(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w) {
  const double ds = std::max(distance(node.pos, ctx.sink.pos), kMinSinkDistance);
  const double avg = ctx.alive_avg_sink_dist;
  if (!at_least(ds, w.t3 * avg)) return 0.0;
  return w.p * avg / ds;
}

double sub_threshold_t3(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w) {
  const auto& heads = ctx.elected_so_far;
  const std::size_t q = heads.size();
  if (q <= 1) return w.p;

  double to_node = 0.0;
  for (const auto& h : heads) to_node += distance(node.pos, h.pos);

  // Ordered pairs j != i, so every unordered pair counts twice.
  double pairwise = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = j + 1; i < q; ++i) pairwise += 2.0 * distance(heads[j].pos, heads[i].pos);
  }
  const auto qd = static_cast<double>(q);
  const double mean_pairwise = pairwise / (qd * (qd - 1.0));
  if (mean_pairwise <= 0.0) return w.p;
  return w.p * (to_node / qd) / mean_pairwise;
}

double sub_threshold_t4(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w) {
  if (ctx.round <= 1) return w.p;
  return w.p * ctx.alive_avg_times_ch / std::max(node.times_ch, 1);
}

double z_threshold(const NodeState& node, const ElectionContext& ctx, const ElectionWeights& w) {
  if (ctx.alive_avg_energy <= 0.0 || !at_least(node.energy, w.t1 * ctx.alive_avg_energy)) return 0.0;
  return w.a1 * sub_threshold_t1(node, ctx, w) + w.a2 * sub_threshold_t2(node, ctx, w) +
         w.a3 * sub_threshold_t3(node, ctx, w) + w.a4 * sub_threshold_t4(node, ctx, w);
}

std::vector<int> elect_cluster_heads(std::span<NodeState> nodes, ElectionContext& ctx, const ScenarioSpec& spec,
                                     Rng& rng) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a].id < nodes[b].id; });

  const Variant v = spec.variant;
  std::vector<int> elected;
  for (std::size_t idx : order) {
    NodeState& node = nodes[idx];
    if (!node.alive()) continue;
    if (node.role == NodeRole::RendezvousNode && !rns_are_candidates(v)) continue;

    double threshold = 0.0;
    if (uses_weighted_threshold(v)) {
      threshold = z_threshold(node, ctx, spec.weights);
    } else {
      threshold = leach_threshold(spec.weights.p, ctx.round, node);
      if (uses_energy_gate(v) && !at_least(node.energy, ctx.alive_avg_energy)) threshold = 0.0;
    }

    const double u = rng.uniform();
    if (u < threshold) {
      node.role = NodeRole::ClusterHead;
      ++node.times_ch;
      node.last_ch_round = ctx.round;
      ctx.elected_so_far.push_back({node.id, node.pos});
      elected.push_back(node.id);
    }
  }
  return elected;
}

}  // namespace lmrnach
