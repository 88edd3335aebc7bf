#include "lmrnach/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"

#include "lmrnach/config.hpp"
#include "lmrnach/energy.hpp"
#include "lmrnach/engine.hpp"

namespace lmrnach::cli {

namespace fs = std::filesystem;

namespace {

// Raised for configuration mistakes; mapped to kExitUsage.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunOptions {
  std::optional<std::string> scenario;
  std::optional<double> dim;
  std::optional<std::uint64_t> seed;
  std::optional<int> rounds;
  std::optional<int> nodes;
  std::optional<std::string> config;
  std::string out = ".";
};

struct SweepOptions {
  std::string dims = "200,250,350,450";
  std::string scenarios = "all";
  int seeds = 21;
  std::optional<int> rounds;
  std::optional<int> nodes;
  std::optional<std::string> config;
  std::string out = "sweep_out";
  unsigned jobs = 0;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_dim(const std::string& text) {
  double dim = 0.0;
  try {
    std::size_t used = 0;
    dim = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("invalid dim '" + text + "'");
  }
  if (!(dim > 0.0) || !std::isfinite(dim)) throw UsageError("dim must be positive, got '" + text + "'");
  return dim;
}

Variant parse_scenario(const std::string& text) {
  try {
    return parse_variant(text);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
}

/// Defaults for (variant, dim), then the config document, then explicit flags.
ScenarioSpec build_spec(Variant variant, double dim, std::uint64_t seed, const nlohmann::json* config,
                        std::optional<int> rounds, std::optional<int> nodes) {
  ScenarioSpec spec = default_scenario(variant, dim, seed);
  if (config) {
    try {
      apply_json(spec, *config);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
  spec.variant = variant;
  spec.field = {dim, dim};
  spec.rng_seed = seed;
  if (!is_mobile(variant)) spec.sink_speed = 0.0;
  if (rounds) spec.max_rounds = *rounds;
  if (nodes) spec.num_nodes = *nodes;
  try {
    spec.validate();
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  return spec;
}

std::optional<nlohmann::json> load_config(const std::optional<std::string>& path) {
  if (!path) return std::nullopt;
  try {
    auto doc = load_json_file(*path);
    if (!doc.is_object()) throw UsageError("config " + *path + " must hold a JSON object");
    return doc;
  } catch (const std::runtime_error& ex) {
    throw UsageError(ex.what());
  }
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             (ec ? ": " + ec.message() : std::string()));
  }
}

int do_run(const RunOptions& opt, std::ostream& out) {
  const auto config = load_config(opt.config);
  const nlohmann::json* cfg = config ? &*config : nullptr;

  std::optional<Variant> variant;
  if (opt.scenario) variant = parse_scenario(*opt.scenario);
  else if (cfg && cfg->contains("variant") && (*cfg)["variant"].is_string())
    variant = parse_scenario((*cfg)["variant"].get<std::string>());
  if (!variant) throw UsageError("run needs --scenario (or \"variant\" in --config)");

  std::optional<double> dim = opt.dim;
  if (!dim && cfg && cfg->contains("field") && (*cfg)["field"].is_object() && (*cfg)["field"].contains("xm") &&
      (*cfg)["field"]["xm"].is_number()) {
    dim = (*cfg)["field"]["xm"].get<double>();
  }
  if (!dim) throw UsageError("run needs --dim (or \"field.xm\" in --config)");
  if (!(*dim > 0.0) || !std::isfinite(*dim)) throw UsageError("dim must be positive, got " + format_real(*dim));

  std::uint64_t seed = 1;
  if (opt.seed) seed = *opt.seed;
  else if (cfg && cfg->contains("rng_seed") && (*cfg)["rng_seed"].is_number_unsigned())
    seed = (*cfg)["rng_seed"].get<std::uint64_t>();

  const ScenarioSpec spec = build_spec(*variant, *dim, seed, cfg, opt.rounds, opt.nodes);
  ensure_out_dir(opt.out);
  const auto records = run_simulation(spec);
  const fs::path csv = run_csv_path(opt.out, spec);
  write_round_csv(records, csv);
  out << summary_line(summarize_run(records, spec), static_cast<int>(records.size())) << " csv=" << csv.string()
      << '\n';
  return kExitOk;
}

int do_sweep(const SweepOptions& opt, std::ostream& out) {
  const auto config = load_config(opt.config);
  const nlohmann::json* cfg = config ? &*config : nullptr;

  std::vector<double> dims;
  for (const auto& d : split_csv(opt.dims)) dims.push_back(parse_dim(d));
  if (dims.empty()) throw UsageError("--dims is empty");

  std::vector<Variant> variants;
  if (opt.scenarios == "all") {
    variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
  } else {
    for (const auto& s : split_csv(opt.scenarios)) variants.push_back(parse_scenario(s));
  }
  if (variants.empty()) throw UsageError("--scenarios is empty");
  if (opt.seeds < 1) throw UsageError("--seeds must be at least 1");

  std::vector<ScenarioSpec> specs;
  for (Variant v : variants) {
    for (double dim : dims) {
      for (int s = 1; s <= opt.seeds; ++s) {
        specs.push_back(build_spec(v, dim, static_cast<std::uint64_t>(s), cfg, opt.rounds, opt.nodes));
      }
    }
  }
  ensure_out_dir(opt.out);

  std::vector<LifetimeSummary> summaries(specs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
      try {
        const auto records = run_simulation(specs[i]);
        write_round_csv(records, run_csv_path(opt.out, specs[i]));
        summaries[i] = summarize_run(records, specs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = specs.size();
      }
    }
  };
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(opt.jobs ? opt.jobs : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(specs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ReplicateAggregate> cells;
  const auto per_cell = static_cast<std::size_t>(opt.seeds);
  for (std::size_t start = 0; start < summaries.size(); start += per_cell) {
    cells.push_back(summarize_replicates(std::span(summaries).subspan(start, per_cell)));
  }
  const fs::path summary_path = fs::path(opt.out) / "summary.json";
  {
    std::ofstream f(summary_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + summary_path.string() + " for writing");
    f << summary_json(cells).dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed for " + summary_path.string());
  }

  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const auto& c : cells) {
    out << to_string(c.scenario) << " dim=" << dim_label(c.dim) << " runs=" << c.runs
        << " first_dead_median=" << show(c.first_dead.median)
        << " quarter_dead_median=" << show(c.quarter_dead.median)
        << " last_alive_median=" << show(c.last_alive.median) << '\n';
  }
  out << "wrote " << specs.size() << " run CSVs and " << summary_path.string() << '\n';
  return kExitOk;
}

}  // namespace

fs::path run_csv_path(const fs::path& out_dir, const ScenarioSpec& spec) {
  return out_dir / (std::string(to_string(spec.variant)) + "_" + dim_label(spec.field.xm) + "_" +
                    std::to_string(spec.rng_seed) + ".csv");
}

std::string summary_line(const LifetimeSummary& s, int rounds_simulated) {
  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  std::ostringstream line;
  line << "scenario=" << to_string(s.scenario) << " dim=" << dim_label(s.dim) << " seed=" << s.seed
       << " rounds=" << rounds_simulated << " first_dead=" << show(s.first_dead_round)
       << " quarter_dead=" << show(s.quarter_dead_round) << " last_alive=" << s.last_alive_round;
  return line.str();
}

bool run_invariant_checks(std::ostream& out) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << " (" << detail << ')';
    out << '\n';
    all_ok = all_ok && ok;
  };

  const EnergyParams ep;
  const double d0 = energy::threshold_distance(ep);
  report("threshold_distance", std::abs(d0 - 87.7058) <= 1e-3, "d0=" + format_real(d0));

  double worst = 0.0;
  for (std::uint64_t bits : {std::uint64_t{1}, std::uint64_t{4000}, std::uint64_t{1000000}}) {
    const double a = energy::tx_free_space(ep, bits, d0);
    const double b = energy::tx_multipath(ep, bits, d0);
    worst = std::max(worst, std::abs(a - b) / std::max(a, b));
  }
  report("regime_continuity", worst <= 1e-15, "max_rel=" + format_real(worst));

  for (double dim : {200.0, 450.0}) {
    for (Variant v : kAllVariants) {
      SimulationState state = init_simulation(default_scenario(v, dim, 1));
      double max_err = 0.0;
      bool monotone = true;
      while (state.round < state.spec.max_rounds) {
        const RoundRecord& rec = run_round(state);
        max_err = std::max(max_err, energy_balance_error(state));
        if (state.records.size() >= 2) {
          const auto& prev = state.records[state.records.size() - 2];
          monotone = monotone && rec.alive <= prev.alive && rec.total_residual_j <= prev.total_residual_j;
        }
        if (rec.alive == 0) break;
      }
      const std::string cell = std::string(to_string(v)) + "@" + dim_label(dim);
      report("energy_conservation " + cell, max_err <= 1e-9, "max_rel=" + format_real(max_err));
      report("monotone_alive_and_residual " + cell, monotone);
      const auto s = summarize_run(state.records, state.spec);
      report("first_dead_before_quarter " + cell,
             !(s.first_dead_round && s.quarter_dead_round) || *s.first_dead_round <= *s.quarter_dead_round);
    }
  }

  const ScenarioSpec det = default_scenario(Variant::PMS2, 450, 7);
  std::ostringstream first, second;
  write_round_csv(run_simulation(det), first);
  write_round_csv(run_simulation(det), second);
  report("determinism pms2@450 seed 7", first.str() == second.str());
  return all_ok;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wireless sensor network lifetime simulator (LEACH, mobile sink, rendezvous nodes)", "lmrnach"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Simulate one scenario and write its per-round CSV");
  run->add_option("--scenario", run_opt.scenario, "static|ms1|ms2|ms3|ms4|pms2|pms4");
  run->add_option("--dim", run_opt.dim, "Square field side in meters");
  run->add_option("--seed", run_opt.seed, "RNG seed");
  run->add_option("--rounds", run_opt.rounds, "Maximum rounds");
  run->add_option("--nodes", run_opt.nodes, "Number of nodes");
  run->add_option("--config", run_opt.config, "JSON scenario overrides");
  run->add_option("--out", run_opt.out, "Output directory")->capture_default_str();

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Run the scenario x dimension matrix over seeds 1..k");
  sweep->add_option("--dims", sweep_opt.dims, "Comma-separated field sides")->capture_default_str();
  sweep->add_option("--scenarios", sweep_opt.scenarios, "Comma-separated scenarios or 'all'")->capture_default_str();
  sweep->add_option("--seeds", sweep_opt.seeds, "Seeds per cell (1..k)")->capture_default_str();
  sweep->add_option("--rounds", sweep_opt.rounds, "Maximum rounds");
  sweep->add_option("--nodes", sweep_opt.nodes, "Number of nodes");
  sweep->add_option("--config", sweep_opt.config, "JSON scenario overrides applied to every run");
  sweep->add_option("--out", sweep_opt.out, "Output directory")->capture_default_str();
  sweep->add_option("--jobs", sweep_opt.jobs, "Worker threads (0 = hardware concurrency)");

  auto* check = app.add_subcommand("check", "Run the built-in invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(run_opt, out);
    if (sweep->parsed()) return do_sweep(sweep_opt, out);
    if (check->parsed()) return run_invariant_checks(out) ? kExitOk : kExitRuntime;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace lmrnach::cli
