#include "lmrnach/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lmrnach {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Static: return "static";
    case Variant::MS1: return "ms1";
    case Variant::MS2: return "ms2";
    case Variant::MS3: return "ms3";
    case Variant::MS4: return "ms4";
    case Variant::PMS2: return "pms2";
    case Variant::PMS4: return "pms4";
  }
  return "?";
}

std::string_view to_string(NodeRole r) {
  switch (r) {
    case NodeRole::NormalNode: return "NN";
    case NodeRole::RendezvousNode: return "RN";
    case NodeRole::ClusterHead: return "CH";
    case NodeRole::Dead: return "dead";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  const std::string key = lower(text);
  for (Variant v : kAllVariants) {
    if (key == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(text) + "'");
}

bool is_mobile(Variant v) { return v != Variant::Static; }

bool rns_are_candidates(Variant v) {
  return v == Variant::MS3 || v == Variant::MS4 || v == Variant::PMS4;
}

bool uses_energy_gate(Variant v) { return v == Variant::MS2 || v == Variant::MS4; }

bool uses_weighted_threshold(Variant v) { return v == Variant::PMS2 || v == Variant::PMS4; }

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void FieldGeometry::validate() const {
  require(std::isfinite(xm) && xm > 0.0, "field width xm must be positive");
  require(std::isfinite(ym) && ym > 0.0, "field height ym must be positive");
}

void EnergyParams::validate() const {
  require(e0 > 0.0, "e0 must be positive");
  require(e_elec_tx > 0.0, "e_elec_tx must be positive");
  require(e_elec_rx > 0.0, "e_elec_rx must be positive");
  require(e_da > 0.0, "e_da must be positive");
  require(e_fs > 0.0, "e_fs must be positive");
  require(e_amp > 0.0, "e_amp must be positive");
  require(packet_bits > 0, "packet_bits must be positive");
  require(e_fs > e_amp, "e_fs must exceed e_amp so the threshold distance exceeds 1 m");
}

void ElectionWeights::validate() const {
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  require(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0 && a4 >= 0.0, "weights a1..a4 must be non-negative");
  require(std::abs(a1 + a2 + a3 + a4 - 1.0) <= 1e-12, "weights a1..a4 must sum to 1");
  require(t1 > 0.0 && t2 > 0.0 && t3 > 0.0, "gate multipliers t1..t3 must be positive");
}

std::string_view to_string(SinkBoundary b) {
  switch (b) {
    case SinkBoundary::Reflect: return "reflect";
    case SinkBoundary::Wrap: return "wrap";
    case SinkBoundary::Stop: return "stop";
  }
  return "?";
}

SinkBoundary parse_sink_boundary(std::string_view text) {
  const std::string key = lower(text);
  for (SinkBoundary b : {SinkBoundary::Reflect, SinkBoundary::Wrap, SinkBoundary::Stop}) {
    if (key == to_string(b)) return b;
  }
  throw std::invalid_argument("unknown sink boundary '" + std::string(text) + "'");
}

std::string_view to_string(MemberJoin j) {
  switch (j) {
    case MemberJoin::NearestChOrRn: return "nearest_ch_or_rn";
    case MemberJoin::NearestCh: return "nearest_ch";
  }
  return "?";
}

MemberJoin parse_member_join(std::string_view text) {
  const std::string key = lower(text);
  for (MemberJoin j : {MemberJoin::NearestChOrRn, MemberJoin::NearestCh}) {
    if (key == to_string(j)) return j;
  }
  throw std::invalid_argument("unknown member join rule '" + std::string(text) + "'");
}

void ScenarioSpec::validate() const {
  field.validate();
  energy.validate();
  weights.validate();
  require(num_nodes >= 2, "num_nodes must be at least 2");
  require(max_rounds >= 1, "max_rounds must be at least 1");
  require(r_thresh > 0.0 && r_thresh < 1.0, "r_thresh must lie in (0, 1)");
  require(std::isfinite(sink_speed) && sink_speed >= 0.0, "sink_speed must be non-negative");
}

ScenarioSpec default_scenario(Variant variant, double dim, std::uint64_t seed) {
  if (!(dim > 0.0) || !std::isfinite(dim)) {
    throw std::invalid_argument("dim must be positive, got " + std::to_string(dim));
  }
  ScenarioSpec spec;
  spec.variant = variant;
  spec.field = {dim, dim};
  spec.sink_speed = is_mobile(variant) ? dim / 50.0 : 0.0;
  spec.rng_seed = seed;
  return spec;
}

SinkState initial_sink(const ScenarioSpec& spec) {
  if (!is_mobile(spec.variant)) return {spec.field.centre(), 0.0, 0.0};
  return {{0.0, spec.field.ym / 2.0}, spec.sink_speed, 0.0};
}

}  // namespace lmrnach
