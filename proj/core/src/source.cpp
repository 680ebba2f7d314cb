#include "mcfsim/source.hpp"

#include <cmath>

namespace mcfsim {

TwoPhotonState ideal_state() {
  Vector16c amps = Vector16c::Zero();
  for (int j = 0; j < kCores; ++j) {
    amps(kCores * j + j) = 0.5;
  }
  return TwoPhotonState::pure(amps);
}

TwoPhotonState weighted_state(const std::array<double, kCores>& pump_weights,
                              const PhaseVector& core_phases) {
  double total = 0.0;
  for (double w : pump_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("pump weights must be finite and nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("pump weights must not all be zero");
  }
  Vector16c amps = Vector16c::Zero();
  for (int j = 0; j < kCores; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    amps(kCores * j + j) =
        std::sqrt(pump_weights[sj] / total) * std::exp(Complex(0.0, core_phases[sj]));
  }
  return TwoPhotonState::pure(amps);
}

TwoPhotonState werner_state(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("visibility v = " + std::to_string(v) + " outside [0,1]");
  }
  if (v == 1.0) {
    return ideal_state();
  }
  const Matrix16c rho = v * ideal_state().density_matrix() +
                        (1.0 - v) / kPairDim * Matrix16c::Identity();
  return TwoPhotonState::mixed(rho);
}

TwoPhotonState source_state(const SourceConfig& config) {
  const TwoPhotonState coherent = weighted_state(config.pump_weights, config.core_phases);
  const double v = config.visibility;
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("visibility v = " + std::to_string(v) + " outside [0,1]");
  }
  if (v == 1.0) {
    return coherent;
  }
  const Matrix16c rho =
      v * coherent.density_matrix() + (1.0 - v) / kPairDim * Matrix16c::Identity();
  return TwoPhotonState::mixed(rho);
}

double emitted_pair_rate(const SourceConfig& config) {
  if (config.pair_rate < 0 || config.pump_power_mw < 0 || config.bandwidth_nm < 0) {
    throw std::invalid_argument("source rates and powers must be nonnegative");
  }
  return config.pair_rate * config.pump_power_mw * config.bandwidth_nm;
}

}  // namespace mcfsim
