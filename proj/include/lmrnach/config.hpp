#pragma once

// ScenarioSpec <-> JSON. Keys mirror the struct field names:
//
//   {
//     "variant": "pms2",
//     "field": {"xm": 450, "ym": 450},
//     "energy": {"e0": 0.3, "e_elec_tx": 5e-8, "e_elec_rx": 5e-8, "e_da": 5e-9,
//                "e_fs": 1e-11, "e_amp": 1.3e-15, "packet_bits": 4000},
//     "num_nodes": 100, "max_rounds": 3000, "r_thresh": 0.16,
//     "weights": {"p": 0.05, "a1": 0.25, "a2": 0.25, "a3": 0.25, "a4": 0.25,
//                 "t1": 1, "t2": 1, "t3": 1},
//     "sink_speed": 9, "sink_boundary": "reflect",
//     "member_join": "nearest_ch_or_rn", "rng_seed": 7
//   }
//
// Every key is optional when overlaying onto an existing spec; unknown keys
// are rejected.

#include <filesystem>

#include "json.hpp"

#include "lmrnach/model.hpp"

namespace lmrnach {

nlohmann::json to_json(const ScenarioSpec& spec);

/// Overwrites the fields of `spec` present in `doc`. Throws
/// std::invalid_argument on unknown keys or mistyped values. Does not
/// validate the result.
void apply_json(ScenarioSpec& spec, const nlohmann::json& doc);

/// Full parse: defaults for the document's variant and field width, then
/// the document's overrides, then validation.
ScenarioSpec spec_from_json(const nlohmann::json& doc);

/// Reads a JSON file. Throws std::runtime_error naming the path on I/O or parse failure.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace lmrnach
