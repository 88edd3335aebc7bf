#include "lmrnach/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "lmrnach/election.hpp"
#include "lmrnach/energy.hpp"

namespace lmrnach {

namespace {

void charge(SimulationState& state, NodeState& node, double joules) {
  node.energy -= joules;
  state.consumed_j += joules;
}

/// Index of the nearest node among `candidates`, ties to the lower id.
std::optional<std::size_t> nearest(const std::vector<NodeState>& nodes, const std::vector<std::size_t>& candidates,
                                   const Point& from) {
  std::optional<std::size_t> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t idx : candidates) {
    const double d = distance(from, nodes[idx].pos);
    if (d < best_dist || (d == best_dist && best && nodes[idx].id < nodes[*best].id)) {
      best = idx;
      best_dist = d;
    }
  }
  return best;
}

double reflect(double pos, double& vel, double extent) {
  // A single step may exceed the extent when the speed is large.
  for (int guard = 0; guard < 64 && (pos < 0.0 || pos > extent); ++guard) {
    if (pos > extent) pos = 2.0 * extent - pos;
    else pos = -pos;
    vel = -vel;
  }
  return std::clamp(pos, 0.0, extent);
}

double advance_axis(double pos, double& vel, double extent, SinkBoundary boundary) {
  if (vel == 0.0) return pos;
  const double next = pos + vel;
  switch (boundary) {
    case SinkBoundary::Reflect: return reflect(next, vel, extent);
    case SinkBoundary::Wrap: {
      const double wrapped = next - extent * std::floor(next / extent);
      return wrapped >= extent ? 0.0 : wrapped;
    }
    case SinkBoundary::Stop:
      if (next < 0.0 || next > extent) {
        vel = 0.0;
        return std::clamp(next, 0.0, extent);
      }
      return next;
  }
  return next;
}

}  // namespace

int SimulationState::alive_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive(); }));
}

SimulationState init_simulation(const ScenarioSpec& spec) {
  spec.validate();
  SimulationState state(spec);
  state.nodes.reserve(static_cast<std::size_t>(spec.num_nodes));
  for (int i = 1; i <= spec.num_nodes; ++i) {
    NodeState n;
    n.id = i;
    n.pos.x = state.rng.uniform(0.0, spec.field.xm);
    n.pos.y = state.rng.uniform(0.0, spec.field.ym);
    n.energy = spec.energy.e0;
    state.nodes.push_back(n);
  }
  state.sink = initial_sink(spec);
  return state;
}

SinkState move_sink(const SinkState& sink, const FieldGeometry& field, SinkBoundary boundary) {
  SinkState next = sink;
  next.pos.x = advance_axis(sink.pos.x, next.dx, field.xm, boundary);
  next.pos.y = advance_axis(sink.pos.y, next.dy, field.ym, boundary);
  return next;
}

double energy_balance_error(const SimulationState& state) {
  double residual = 0.0;
  for (const auto& n : state.nodes) residual += n.energy;
  const double initial = static_cast<double>(state.spec.num_nodes) * state.spec.energy.e0;
  return std::abs(residual + state.consumed_j - initial) / initial;
}

const RoundRecord& run_round(SimulationState& state) {
  const ScenarioSpec& spec = state.spec;
  const EnergyParams& ep = spec.energy;
  const std::uint64_t l = ep.packet_bits;
  const double d0 = energy::threshold_distance(ep);
  const int round = ++state.round;
  auto& nodes = state.nodes;

  // 1. Death check at the round boundary.
  for (auto& n : nodes) {
    if (n.alive() && n.energy <= 0.0) {
      n.role = NodeRole::Dead;
      state.bits_dropped += n.rn_buffer_bits;
      n.rn_buffer_bits = 0;
    }
  }

  // 2. Role reset and rendezvous labelling.
  for (auto& n : nodes) {
    if (n.alive()) n.role = NodeRole::NormalNode;
  }
  if (is_mobile(spec.variant)) assign_rn_labels(nodes, spec.field, spec.r_thresh);

  // 3. Cluster head election.
  ElectionContext ctx = make_election_context(nodes, round, state.sink);
  const auto elected = elect_cluster_heads(nodes, ctx, spec, state.rng);

  std::vector<std::size_t> heads;
  std::vector<std::size_t> rns;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == NodeRole::ClusterHead) heads.push_back(i);
    if (nodes[i].role == NodeRole::RendezvousNode) rns.push_back(i);
  }

  // A rendezvous node elected CH folds its buffered packets into its own aggregate.
  std::vector<std::uint64_t> signals(nodes.size(), 0);
  for (std::size_t h : heads) {
    signals[h] = 1 + nodes[h].rn_buffer_bits / l;
    nodes[h].rn_buffer_bits = 0;
  }

  // 4-5. Cluster join and member traffic. A member sends to the nearest
  // advertiser (CH, or RN when allowed); with none it sends to the sink.
  std::vector<std::size_t> targets = heads;
  if (spec.member_join == MemberJoin::NearestChOrRn) targets.insert(targets.end(), rns.begin(), rns.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeState& member = nodes[i];
    if (member.role != NodeRole::NormalNode) continue;
    state.bits_generated += l;
    const auto target = nearest(nodes, targets, member.pos);
    if (!target) {
      charge(state, member, energy::tx_energy(ep, l, distance(member.pos, state.sink.pos)));
      state.bits_delivered += l;
      continue;
    }
    NodeState& receiver = nodes[*target];
    charge(state, member, energy::tx_energy(ep, l, distance(member.pos, receiver.pos)));
    charge(state, receiver, energy::rx_energy(ep, l));
    if (receiver.role == NodeRole::ClusterHead) ++signals[*target];
    else receiver.rn_buffer_bits += l;
  }

  // 6-7. Aggregation and uplink.
  for (std::size_t h : heads) {
    NodeState& head = nodes[h];
    state.bits_generated += l;
    charge(state, head, energy::aggregation_energy(ep, l, signals[h]));

    const double to_sink = distance(head.pos, state.sink.pos);
    std::optional<std::size_t> relay;
    if (is_mobile(spec.variant) && to_sink > d0) relay = nearest(nodes, rns, head.pos);
    if (!relay) {
      charge(state, head, energy::tx_energy(ep, l, to_sink));
      state.bits_delivered += l;
      continue;
    }
    NodeState& rn = nodes[*relay];
    charge(state, head, energy::tx_energy(ep, l, distance(head.pos, rn.pos)));
    charge(state, rn, energy::rx_energy(ep, l));
    rn.rn_buffer_bits += l;
  }

  // 8. Rendezvous flush when the sink is within d0.
  for (std::size_t r : rns) {
    NodeState& rn = nodes[r];
    if (rn.rn_buffer_bits == 0) continue;
    const double to_sink = distance(rn.pos, state.sink.pos);
    if (to_sink > d0) continue;
    charge(state, rn, energy::aggregation_energy(ep, l, rn.rn_buffer_bits / l));
    charge(state, rn, energy::tx_energy(ep, l, to_sink));
    rn.rn_buffer_bits = 0;
    state.bits_delivered += l;
  }

  RoundRecord rec;
  rec.round = round;
  rec.alive = ctx.alive_count;
  rec.dead = spec.num_nodes - rec.alive;
  rec.ch_count = static_cast<int>(elected.size());
  for (const auto& n : nodes) rec.total_residual_j += std::max(n.energy, 0.0);
  rec.avg_energy_per_alive_j = rec.alive > 0 ? rec.total_residual_j / rec.alive : 0.0;
  rec.sink_x = state.sink.pos.x;
  rec.sink_y = state.sink.pos.y;
  rec.bits_delivered = state.bits_delivered;

  // 9. Sink motion for the next round.
  state.sink = move_sink(state.sink, spec.field, spec.sink_boundary);

  state.records.push_back(rec);
  return state.records.back();
}

std::vector<RoundRecord> run_simulation(const ScenarioSpec& spec) {
  SimulationState state = init_simulation(spec);
  state.records.reserve(static_cast<std::size_t>(spec.max_rounds));
  while (state.round < spec.max_rounds) {
    if (run_round(state).alive == 0) break;
  }
  return std::move(state.records);
}

}  // namespace lmrnach
