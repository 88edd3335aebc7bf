#include <stdexcept>

#include "doctest.h"
#include "lmrnach/model.hpp"

using namespace lmrnach;

TEST_CASE("default_scenario carries the published parameters") {
  const ScenarioSpec spec = default_scenario(Variant::MS2, 450, 7);
  CHECK(spec.variant == Variant::MS2);
  CHECK(spec.r_thresh == 0.16);
  CHECK(spec.num_nodes == 100);
  CHECK(spec.energy.e0 == 0.3);
  CHECK(spec.energy.e_elec_tx == 50e-9);
  CHECK(spec.energy.e_elec_rx == 50e-9);
  CHECK(spec.energy.e_da == 5e-9);
  CHECK(spec.energy.e_fs == 10e-12);
  CHECK(spec.energy.e_amp == 0.0013e-12);
  CHECK(spec.energy.packet_bits == 4000);
  CHECK(spec.field.xm == 450);
  CHECK(spec.field.ym == 450);
  CHECK(spec.rng_seed == 7);
  CHECK(spec.max_rounds == 3000);
  CHECK(spec.weights.p == 0.05);
  CHECK(spec.sink_speed == doctest::Approx(9.0));
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("static scenario has a motionless centred sink") {
  const ScenarioSpec spec = default_scenario(Variant::Static, 200, 1);
  CHECK(spec.sink_speed == 0.0);
  const SinkState sink = initial_sink(spec);
  CHECK(sink.pos == Point{100, 100});
  CHECK(sink.dx == 0.0);
  CHECK(sink.dy == 0.0);
}

TEST_CASE("mobile sink starts at the left edge on the midline") {
  const SinkState sink = initial_sink(default_scenario(Variant::MS1, 200, 5));
  CHECK(sink.pos == Point{0, 100});
  CHECK(sink.dx == doctest::Approx(4.0));
  CHECK(sink.dy == 0.0);
}

TEST_CASE("uniform weights sum to one") {
  const ElectionWeights w = default_scenario(Variant::PMS4, 350, 3).weights;
  CHECK(w.a1 == 0.25);
  CHECK(w.a2 == 0.25);
  CHECK(w.a3 == 0.25);
  CHECK(w.a4 == 0.25);
  CHECK(w.a1 + w.a2 + w.a3 + w.a4 == 1.0);
}

TEST_CASE("default_scenario rejects non-positive dimensions") {
  CHECK_THROWS_AS(default_scenario(Variant::MS1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(default_scenario(Variant::MS1, -5, 1), std::invalid_argument);
}

TEST_CASE("default_scenario is pure") {
  for (Variant v : kAllVariants) {
    CHECK(default_scenario(v, 250, 11) == default_scenario(v, 250, 11));
  }
}

TEST_CASE("weights off the unit simplex are rejected") {
  ElectionWeights w;
  w.a1 = 0.3;  // sum 1.05
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);

  w = {};
  w.a1 = 0.25 + 2e-12;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);

  w = {};
  w.a1 = 0.25 + 5e-13;
  CHECK_NOTHROW(w.validate());

  w = {};
  w.a1 = -0.25;
  w.a2 = 0.75;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);

  ScenarioSpec spec = default_scenario(Variant::PMS2, 200, 1);
  spec.weights.a4 = 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("scenario constraints") {
  ScenarioSpec spec = default_scenario(Variant::MS3, 200, 1);
  spec.r_thresh = 1.0;
  CHECK_THROWS(spec.validate());
  spec = default_scenario(Variant::MS3, 200, 1);
  spec.num_nodes = 1;
  CHECK_THROWS(spec.validate());
  spec = default_scenario(Variant::MS3, 200, 1);
  spec.max_rounds = 0;
  CHECK_THROWS(spec.validate());
  spec = default_scenario(Variant::MS3, 200, 1);
  spec.energy.e_fs = spec.energy.e_amp / 2;
  CHECK_THROWS(spec.validate());
  spec = default_scenario(Variant::MS3, 200, 1);
  spec.weights.p = 1.0;
  CHECK_THROWS(spec.validate());
}

TEST_CASE("variant names round-trip and reject junk") {
  for (Variant v : kAllVariants) CHECK(parse_variant(to_string(v)) == v);
  CHECK(parse_variant("PMS2") == Variant::PMS2);
  CHECK_THROWS_WITH_AS(parse_variant("ms9"), doctest::Contains("ms9"), std::invalid_argument);
}

TEST_CASE("variant rule table") {
  CHECK_FALSE(is_mobile(Variant::Static));
  for (Variant v : {Variant::MS1, Variant::MS2, Variant::PMS2}) CHECK_FALSE(rns_are_candidates(v));
  for (Variant v : {Variant::MS3, Variant::MS4, Variant::PMS4}) CHECK(rns_are_candidates(v));
  CHECK(uses_energy_gate(Variant::MS2));
  CHECK(uses_energy_gate(Variant::MS4));
  CHECK_FALSE(uses_energy_gate(Variant::MS1));
  CHECK_FALSE(uses_energy_gate(Variant::PMS2));
  CHECK(uses_weighted_threshold(Variant::PMS2));
  CHECK(uses_weighted_threshold(Variant::PMS4));
  CHECK_FALSE(uses_weighted_threshold(Variant::MS2));
}

TEST_CASE("rng is reproducible and stays in [0, 1)") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
}
