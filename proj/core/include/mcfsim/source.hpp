#pragma once

#include "mcfsim/state.hpp"
#include "mcfsim/types.hpp"

namespace mcfsim {

/// Photon-pair source parameters. Defaults describe the nominal device:
/// uniform pump split, zero pair-generation phases, no white-noise
/// admixture, spectral brightness 350000 pairs/(s mW nm) at 1 mW per core
/// over a 1 nm band.
struct SourceConfig {
  std::array<double, kCores> pump_weights{0.25, 0.25, 0.25, 0.25};
  PhaseVector core_phases{0.0, 0.0, 0.0, 0.0};
  double visibility = 1.0;  // weight of the coherent part, in [0,1]
  double pair_rate = 350000.0;  // pairs / (s mW nm)
  double pump_power_mw = 1.0;   // per core
  double bandwidth_nm = 1.0;
};

/// The maximally entangled target state (|00> + |11> + |22> + |33>) / 2.
TwoPhotonState ideal_state();

/// Pure state sum_j sqrt(w_j) e^{i theta_j} |jj> with weights normalized to
/// unit sum. Rejects all-zero or negative weights.
TwoPhotonState weighted_state(const std::array<double, kCores>& pump_weights,
                              const PhaseVector& core_phases = {0, 0, 0, 0});

/// Isotropic-noise state v |Psi><Psi| + (1 - v) I/16; pure for v = 1.
TwoPhotonState werner_state(double v);

/// Full configured state: visibility-weighted mixture of the weighted pure
/// state with the maximally mixed background.
TwoPhotonState source_state(const SourceConfig& config);

/// Emitted pair rate in pairs/s before detection losses.
double emitted_pair_rate(const SourceConfig& config);

}  // namespace mcfsim
