#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "lmrnach/config.hpp"

using namespace lmrnach;
using nlohmann::json;

TEST_CASE("spec survives a JSON round trip") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    ScenarioSpec spec = default_scenario(kAllVariants[i % 7], rng.uniform(50, 900), static_cast<std::uint64_t>(i));
    spec.weights.p = rng.uniform(0.01, 0.5);
    spec.weights.t2 = rng.uniform(0.5, 2.0);
    spec.r_thresh = rng.uniform(0.01, 0.9);
    spec.sink_speed = rng.uniform(0, 30);
    spec.sink_boundary = i % 2 ? SinkBoundary::Wrap : SinkBoundary::Reflect;
    spec.member_join = i % 3 ? MemberJoin::NearestChOrRn : MemberJoin::NearestCh;
    spec.energy.packet_bits = 1000 + static_cast<std::uint64_t>(i);
    const json doc = json::parse(to_json(spec).dump());
    CHECK(spec_from_json(doc) == spec);
  }
}

TEST_CASE("partial documents overlay defaults") {
  ScenarioSpec spec = default_scenario(Variant::MS4, 250, 3);
  apply_json(spec, json::parse(R"({"weights": {"p": 0.1}, "max_rounds": 500})"));
  CHECK(spec.weights.p == 0.1);
  CHECK(spec.weights.a1 == 0.25);
  CHECK(spec.max_rounds == 500);
  CHECK(spec.variant == Variant::MS4);
  CHECK(spec.field.xm == 250);
}

TEST_CASE("spec_from_json derives the sink speed from the field width") {
  const auto spec = spec_from_json(json::parse(R"({"variant": "pms2", "field": {"xm": 400, "ym": 400}})"));
  CHECK(spec.variant == Variant::PMS2);
  CHECK(spec.sink_speed == 8.0);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"variant": "ms1"})")), std::invalid_argument);
}

TEST_CASE("bad documents are rejected") {
  ScenarioSpec spec = default_scenario(Variant::MS1, 200, 1);
  CHECK_THROWS_WITH_AS(apply_json(spec, json::parse(R"({"nodes": 5})")), doctest::Contains("nodes"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_json(spec, json::parse(R"({"weights": {"a5": 0.1}})")),
                       doctest::Contains("weights.a5"), std::invalid_argument);
  CHECK_THROWS_AS(apply_json(spec, json::parse(R"({"num_nodes": "many"})")), std::invalid_argument);
  CHECK_THROWS_AS(apply_json(spec, json::parse(R"({"variant": "ms9"})")), std::invalid_argument);
  CHECK_THROWS_AS(apply_json(spec, json::parse(R"([1, 2])")), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"field": {"xm": 200}, "weights": {"a1": 0.9}})")),
                  std::invalid_argument);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path() / "lmrnach_config_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  std::ofstream(good) << R"({"variant": "ms3", "field": {"xm": 300, "ym": 300}})";
  CHECK(spec_from_json(load_json_file(good)).variant == Variant::MS3);

  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{ not json";
  CHECK_THROWS_WITH_AS(load_json_file(broken), doctest::Contains("broken.json"), std::runtime_error);
  CHECK_THROWS_AS(load_json_file(dir / "missing.json"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
