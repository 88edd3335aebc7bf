#pragma once

// First-order radio energy model. All results in Joules.

#include <cstdint>

#include "lmrnach/model.hpp"

namespace lmrnach::energy {

/// Crossover distance sqrt(e_fs / e_amp) between the d^2 and d^4 regimes.
double threshold_distance(const EnergyParams& params);

/// Electronics plus free-space amplifier cost, valid for any distance.
double tx_free_space(const EnergyParams& params, std::uint64_t bits, double distance);

/// Electronics plus multipath amplifier cost, valid for any distance.
double tx_multipath(const EnergyParams& params, std::uint64_t bits, double distance);

/// Piecewise transmit cost: free-space up to and including the threshold
/// distance, multipath beyond it.
double tx_energy(const EnergyParams& params, std::uint64_t bits, double distance);

double rx_energy(const EnergyParams& params, std::uint64_t bits);

/// bits_per_signal * e_da * signals.
double aggregation_energy(const EnergyParams& params, std::uint64_t bits_per_signal, std::uint64_t signals);

}  // namespace lmrnach::energy
