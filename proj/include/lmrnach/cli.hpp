#pragma once

// Command-line front end: `run`, `sweep` and `check` subcommands.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmrnach/metrics.hpp"
#include "lmrnach/model.hpp"

namespace lmrnach::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Parses `args` (without the program name) and executes the subcommand.
/// Diagnostics go to `err` as a single line prefixed "error: ".
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `<out>/<scenario>_<dim>_<seed>.csv`
std::filesystem::path run_csv_path(const std::filesystem::path& out_dir, const ScenarioSpec& spec);

/// One-line human summary of a run.
std::string summary_line(const LifetimeSummary& s, int rounds_simulated);

/// Built-in invariant suite behind `check`: threshold distance, regime
/// continuity, energy conservation, determinism and monotonicity. Prints
/// one PASS/FAIL line per check and returns whether all passed.
bool run_invariant_checks(std::ostream& out);

}  // namespace lmrnach::cli
