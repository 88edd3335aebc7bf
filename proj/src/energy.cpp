#include "lmrnach/energy.hpp"

#include <cmath>

namespace lmrnach::energy {

double threshold_distance(const EnergyParams& params) { return std::sqrt(params.e_fs / params.e_amp); }

double tx_free_space(const EnergyParams& params, std::uint64_t bits, double distance) {
  const auto l = static_cast<double>(bits);
  return l * params.e_elec_tx + l * params.e_fs * distance * distance;
}

double tx_multipath(const EnergyParams& params, std::uint64_t bits, double distance) {
  const auto l = static_cast<double>(bits);
  const double d2 = distance * distance;
  return l * params.e_elec_tx + l * params.e_amp * d2 * d2;
}

double tx_energy(const EnergyParams& params, std::uint64_t bits, double distance) {
  if (distance <= threshold_distance(params)) return tx_free_space(params, bits, distance);
  return tx_multipath(params, bits, distance);
}

double rx_energy(const EnergyParams& params, std::uint64_t bits) {
  return static_cast<double>(bits) * params.e_elec_rx;
}

double aggregation_energy(const EnergyParams& params, std::uint64_t bits_per_signal, std::uint64_t signals) {
  return static_cast<double>(bits_per_signal) * params.e_da * static_cast<double>(signals);
}

}  // namespace lmrnach::energy
