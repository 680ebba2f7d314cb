#pragma once

#include <cstdint>
#include <vector>

#include "mcfsim/types.hpp"

namespace mcfsim {

/// One slow sinusoidal phase oscillation on a single core.
struct SinusoidalDrift {
  int core = 0;
  double period_s = 300.0;
  double amplitude_rad = 0.2;
  double phase_offset_rad = 0.0;
};

/// Interferometric phase drift model: a few slow sinusoids plus a Gaussian
/// random walk on every core.
struct DriftModel {
  std::vector<SinusoidalDrift> sinusoids;
  double walk_rate_rad2_per_s = 0.0;  // variance growth rate of the walk
  PhaseVector initial_phases{0.0, 0.0, 0.0, 0.0};

  /// The default laboratory model: three sinusoids with periods drawn from
  /// [260 s, 390 s], amplitudes from [0.1, 0.3] rad, random offsets, and a
  /// 3e-7 rad^2/s random walk. Calibrated so the resulting coincidence
  /// spectra stay below 0.008 Hz; note the coincidence signal responds at
  /// e^{i 2 phi}, so a phase period T contributes at 1/T and 2/T.
  static DriftModel typical(std::uint64_t seed);
};

/// Sampled phase trajectory, one PhaseVector per time step.
struct DriftTrace {
  double dt_s = 0.0;
  std::vector<PhaseVector> phases;
};

/// Samples the model at steps t = 0, dt, ..., < duration. Deterministic for
/// a fixed seed. Requires dt > 0 and duration >= dt.
DriftTrace simulate_drift(const DriftModel& model, double duration_s, double dt_s,
                          std::uint64_t seed);

/// Coincidence probability of detector pair (j, k) over the trace, evaluated
/// through the co-propagation model. Values lie in [0, 1/4].
std::vector<double> coincidence_series(const DriftTrace& trace, int j, int k);

/// Rectangular keeps the raw transform (folded non-DC power equals the
/// series variance exactly); Hann trades that identity for sidelobe
/// suppression and is the right estimator for band-power fractions.
enum class SpectrumWindow { Rectangular, Hann };

/// One-sided magnitude spectrum of a real series. Bin k sits at frequency
/// k / (n dt); magnitudes are |X_k| / n. The DC bin is reported separately.
struct SpectrumResult {
  std::vector<double> frequency_hz;  // bins 1 .. n/2
  std::vector<double> magnitude;     // arbitrary units, |X_k| / n
  double dc = 0.0;                   // series mean magnitude
  int samples = 0;
  SpectrumWindow window = SpectrumWindow::Rectangular;

  /// Sum of folded non-DC power (the series variance for Rectangular).
  double total_power() const;
  /// Folded non-DC power at frequencies strictly below f_hz.
  double power_below(double f_hz) const;
  /// Frequency of the largest non-DC magnitude.
  double dominant_frequency_hz() const;
};

/// Discrete transform of the series; requires at least 16 samples and dt > 0.
SpectrumResult spectrum(const std::vector<double>& series, double dt_s,
                        SpectrumWindow window = SpectrumWindow::Rectangular);

}  // namespace mcfsim
