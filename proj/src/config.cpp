#include "lmrnach/config.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace lmrnach {

using nlohmann::json;

json to_json(const ScenarioSpec& spec) {
  const auto& e = spec.energy;
  const auto& w = spec.weights;
  return {
      {"variant", std::string(to_string(spec.variant))},
      {"field", {{"xm", spec.field.xm}, {"ym", spec.field.ym}}},
      {"energy",
       {{"e0", e.e0},
        {"e_elec_tx", e.e_elec_tx},
        {"e_elec_rx", e.e_elec_rx},
        {"e_da", e.e_da},
        {"e_fs", e.e_fs},
        {"e_amp", e.e_amp},
        {"packet_bits", e.packet_bits}}},
      {"num_nodes", spec.num_nodes},
      {"max_rounds", spec.max_rounds},
      {"r_thresh", spec.r_thresh},
      {"weights",
       {{"p", w.p}, {"a1", w.a1}, {"a2", w.a2}, {"a3", w.a3}, {"a4", w.a4}, {"t1", w.t1}, {"t2", w.t2}, {"t3", w.t3}}},
      {"sink_speed", spec.sink_speed},
      {"sink_boundary", std::string(to_string(spec.sink_boundary))},
      {"member_join", std::string(to_string(spec.member_join))},
      {"rng_seed", spec.rng_seed},
  };
}

namespace {

template <typename T>
void read(const json& obj, const std::string& key, T& out, const std::string& where) {
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw std::invalid_argument("config key '" + where + key + "': " + ex.what());
  }
}

void require_object(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw std::invalid_argument("config '" + where + "' must be a JSON object");
}

template <typename Fn>
void for_each_key(const json& obj, const std::string& where, Fn&& fn) {
  require_object(obj, where.empty() ? "<root>" : where);
  for (const auto& [key, value] : obj.items()) {
    if (!fn(key, value)) throw std::invalid_argument("unknown config key '" + where + key + "'");
  }
}

}  // namespace

void apply_json(ScenarioSpec& spec, const json& doc) {
  for_each_key(doc, "", [&](const std::string& key, const json& value) {
    if (key == "variant") {
      if (!value.is_string()) throw std::invalid_argument("config key 'variant' must be a string");
      spec.variant = parse_variant(value.get<std::string>());
    } else if (key == "field") {
      for_each_key(value, "field.", [&](const std::string& k, const json&) {
        if (k == "xm") read(value, k, spec.field.xm, "field.");
        else if (k == "ym") read(value, k, spec.field.ym, "field.");
        else return false;
        return true;
      });
    } else if (key == "energy") {
      auto& e = spec.energy;
      for_each_key(value, "energy.", [&](const std::string& k, const json&) {
        if (k == "e0") read(value, k, e.e0, "energy.");
        else if (k == "e_elec_tx") read(value, k, e.e_elec_tx, "energy.");
        else if (k == "e_elec_rx") read(value, k, e.e_elec_rx, "energy.");
        else if (k == "e_da") read(value, k, e.e_da, "energy.");
        else if (k == "e_fs") read(value, k, e.e_fs, "energy.");
        else if (k == "e_amp") read(value, k, e.e_amp, "energy.");
        else if (k == "packet_bits") read(value, k, e.packet_bits, "energy.");
        else return false;
        return true;
      });
    } else if (key == "weights") {
      auto& w = spec.weights;
      for_each_key(value, "weights.", [&](const std::string& k, const json&) {
        if (k == "p") read(value, k, w.p, "weights.");
        else if (k == "a1") read(value, k, w.a1, "weights.");
        else if (k == "a2") read(value, k, w.a2, "weights.");
        else if (k == "a3") read(value, k, w.a3, "weights.");
        else if (k == "a4") read(value, k, w.a4, "weights.");
        else if (k == "t1") read(value, k, w.t1, "weights.");
        else if (k == "t2") read(value, k, w.t2, "weights.");
        else if (k == "t3") read(value, k, w.t3, "weights.");
        else return false;
        return true;
      });
    } else if (key == "num_nodes") {
      read(doc, key, spec.num_nodes, "");
    } else if (key == "max_rounds") {
      read(doc, key, spec.max_rounds, "");
    } else if (key == "r_thresh") {
      read(doc, key, spec.r_thresh, "");
    } else if (key == "sink_speed") {
      read(doc, key, spec.sink_speed, "");
    } else if (key == "sink_boundary") {
      if (!value.is_string()) throw std::invalid_argument("config key 'sink_boundary' must be a string");
      spec.sink_boundary = parse_sink_boundary(value.get<std::string>());
    } else if (key == "member_join") {
      if (!value.is_string()) throw std::invalid_argument("config key 'member_join' must be a string");
      spec.member_join = parse_member_join(value.get<std::string>());
    } else if (key == "rng_seed") {
      read(doc, key, spec.rng_seed, "");
    } else {
      return false;
    }
    return true;
  });
}

ScenarioSpec spec_from_json(const json& doc) {
  require_object(doc, "<root>");
  Variant variant = Variant::Static;
  if (doc.contains("variant") && doc["variant"].is_string()) variant = parse_variant(doc["variant"].get<std::string>());
  double dim = 0.0;
  if (doc.contains("field") && doc["field"].is_object() && doc["field"].contains("xm") &&
      doc["field"]["xm"].is_number()) {
    dim = doc["field"]["xm"].get<double>();
  }
  if (dim <= 0.0) throw std::invalid_argument("config needs a positive field.xm");
  ScenarioSpec spec = default_scenario(variant, dim, 1);
  apply_json(spec, doc);
  spec.validate();
  return spec;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw std::runtime_error("cannot parse config " + path.string() + ": " + ex.what());
  }
}

}  // namespace lmrnach
