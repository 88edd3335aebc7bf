#pragma once

// Domain types and configuration defaults shared by the whole simulator.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace lmrnach {

enum class NodeRole { NormalNode, RendezvousNode, ClusterHead, Dead };

/// Protocol variant simulated by a run.
///
/// Static is classic LEACH with a sink fixed at the field centre. MS1..MS4
/// add a mobile sink and rendezvous nodes (RNs) and differ in whether RNs
/// may become cluster heads and whether an above-average energy gate applies.
/// PMS2/PMS4 replace the LEACH threshold with the weighted four-term score.
enum class Variant { Static, MS1, MS2, MS3, MS4, PMS2, PMS4 };

inline constexpr Variant kAllVariants[] = {Variant::Static, Variant::MS1,  Variant::MS2, Variant::MS3,
                                           Variant::MS4,    Variant::PMS2, Variant::PMS4};

std::string_view to_string(Variant v);
std::string_view to_string(NodeRole r);

/// Case-insensitive parse of "static", "ms1" ... "pms4". Throws std::invalid_argument.
Variant parse_variant(std::string_view text);

bool is_mobile(Variant v);
/// Whether rendezvous nodes may stand for cluster head election.
bool rns_are_candidates(Variant v);
/// MS2/MS4 require residual energy at or above the alive average.
bool uses_energy_gate(Variant v);
/// PMS2/PMS4 elect with the weighted score instead of the LEACH threshold.
bool uses_weighted_threshold(Variant v);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

struct NodeState {
  int id = 0;  // 1-based
  Point pos;
  double energy = 0.0;  // J, may dip below zero by one transaction before the death check
  NodeRole role = NodeRole::NormalNode;
  int times_ch = 0;
  std::optional<int> last_ch_round;
  std::uint64_t rn_buffer_bits = 0;

  bool alive() const { return role != NodeRole::Dead; }
};

struct FieldGeometry {
  double xm = 0.0;
  double ym = 0.0;

  void validate() const;
  Point centre() const { return {xm / 2.0, ym / 2.0}; }

  friend bool operator==(const FieldGeometry&, const FieldGeometry&) = default;
};

/// First-order radio model constants. Units: J, J/bit, J/bit/m^2, J/bit/m^4.
struct EnergyParams {
  double e0 = 0.3;
  double e_elec_tx = 50e-9;
  double e_elec_rx = 50e-9;
  double e_da = 5e-9;
  double e_fs = 10e-12;
  double e_amp = 0.0013e-12;
  std::uint64_t packet_bits = 4000;

  void validate() const;

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

struct ElectionWeights {
  double p = 0.05;
  double a1 = 0.25;
  double a2 = 0.25;
  double a3 = 0.25;
  double a4 = 0.25;
  double t1 = 1.0;
  double t2 = 1.0;
  double t3 = 1.0;

  /// Weights must be non-negative and sum to one within 1e-12.
  void validate() const;

  friend bool operator==(const ElectionWeights&, const ElectionWeights&) = default;
};

enum class SinkBoundary { Reflect, Wrap, Stop };

std::string_view to_string(SinkBoundary b);
SinkBoundary parse_sink_boundary(std::string_view text);

/// Which advertisers a normal node may send its packet to. With
/// NearestChOrRn a node picks the closest of this round's CHs and RNs (RNs
/// exist only with a mobile sink); NearestCh restricts it to CHs.
enum class MemberJoin { NearestChOrRn, NearestCh };

std::string_view to_string(MemberJoin j);
MemberJoin parse_member_join(std::string_view text);

struct ScenarioSpec {
  Variant variant = Variant::Static;
  FieldGeometry field;
  EnergyParams energy;
  int num_nodes = 100;
  int max_rounds = 3000;
  double r_thresh = 0.16;
  ElectionWeights weights;
  double sink_speed = 0.0;  // m per round
  SinkBoundary sink_boundary = SinkBoundary::Reflect;
  MemberJoin member_join = MemberJoin::NearestChOrRn;
  std::uint64_t rng_seed = 1;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct SinkState {
  Point pos;
  double dx = 0.0;
  double dy = 0.0;
};

/// Default run configuration for a square dim x dim field. The mobile sink
/// crosses the field once every 50 rounds; Static gets a motionless sink.
ScenarioSpec default_scenario(Variant variant, double dim, std::uint64_t seed);

/// Initial sink placement: centre for Static, (0, ym/2) moving along +x otherwise.
SinkState initial_sink(const ScenarioSpec& spec);

/// Seeded generator owned by one simulation run. Doubles are built from the
/// top 53 bits of mt19937_64 so sequences are identical across standard
/// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lmrnach
