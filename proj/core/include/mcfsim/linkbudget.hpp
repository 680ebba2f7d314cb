#pragma once

namespace mcfsim {

/// Source brightness and fiber-loss budget for entanglement distribution.
struct LinkBudget {
  double brightness = 350000.0;  // pairs / (s mW nm)
  double pump_power_mw = 1.0;
  double bandwidth_nm = 1.0;
  double attenuation_db_per_km = 0.4;
  int arms = 2;  // fiber arms carrying loss: 1 (source at one party) or 2
  double coincidence_efficiency = 1.0;
  double min_rate_hz = 0.0;  // detectable-rate threshold for distance queries
};

/// Detected pair rate at fiber length km per arm:
/// brightness * power * bandwidth * efficiency * 10^(-arms * alpha * L / 10).
double rate_at_distance(const LinkBudget& budget, double km);

struct MaxDistanceResult {
  double km = 0.0;
  /// Set when min_rate exceeds the unattenuated source rate (distance 0).
  bool threshold_above_source = false;
};

/// Largest distance with rate_at_distance >= min_rate, by closed-form
/// inversion. Requires attenuation > 0 and min_rate > 0.
MaxDistanceResult max_distance(const LinkBudget& budget);

}  // namespace mcfsim
