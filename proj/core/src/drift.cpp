#include "mcfsim/drift.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mcfsim/counting.hpp"

namespace mcfsim {

DriftModel DriftModel::typical(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> period(260.0, 390.0);
  std::uniform_real_distribution<double> amplitude(0.1, 0.3);
  std::uniform_real_distribution<double> offset(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> core(0, kCores - 1);

  DriftModel model;
  for (int i = 0; i < 3; ++i) {
    model.sinusoids.push_back({core(rng), period(rng), amplitude(rng), offset(rng)});
  }
  model.walk_rate_rad2_per_s = 3.0e-7;
  return model;
}

DriftTrace simulate_drift(const DriftModel& model, double duration_s, double dt_s,
                          std::uint64_t seed) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("drift dt must be positive");
  }
  if (duration_s < dt_s) {
    throw std::invalid_argument("drift duration must be at least one step");
  }
  for (const auto& s : model.sinusoids) {
    CoreLabel::checked(s.core);
    if (!(s.period_s > 0.0)) {
      throw std::invalid_argument("sinusoid period must be positive");
    }
  }

  const auto steps = static_cast<std::size_t>(std::llround(duration_s / dt_s));
  DriftTrace trace;
  trace.dt_s = dt_s;
  trace.phases.reserve(steps);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, std::sqrt(model.walk_rate_rad2_per_s * dt_s));
  PhaseVector walk{0.0, 0.0, 0.0, 0.0};

  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt_s;
    PhaseVector phi = model.initial_phases;
    for (const auto& s : model.sinusoids) {
      phi[static_cast<std::size_t>(s.core)] +=
          s.amplitude_rad * std::sin(2.0 * M_PI * t / s.period_s + s.phase_offset_rad);
    }
    if (model.walk_rate_rad2_per_s > 0.0 && n > 0) {
      for (auto& w : walk) w += step(rng);
    }
    for (int c = 0; c < kCores; ++c) {
      phi[static_cast<std::size_t>(c)] += walk[static_cast<std::size_t>(c)];
    }
    trace.phases.push_back(phi);
  }
  return trace;
}

std::vector<double> coincidence_series(const DriftTrace& trace, int j, int k) {
  CoreLabel::checked(j);
  CoreLabel::checked(k);
  std::vector<double> series;
  series.reserve(trace.phases.size());
  for (const auto& phi : trace.phases) {
    series.push_back(copropagation_distribution(phi).p(j, k));
  }
  return series;
}

SpectrumResult spectrum(const std::vector<double>& series, double dt_s,
                        SpectrumWindow window) {
  if (series.size() < 16) {
    throw DataError("spectrum needs at least 16 samples, got " +
                    std::to_string(series.size()));
  }
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("spectrum dt must be positive");
  }
  const auto n = series.size();
  const auto half = n / 2;

  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);

  // Hann tapers the demeaned series so slow off-grid components do not
  // smear sinc sidelobes across the band edge.
  std::vector<double> data(series);
  if (window == SpectrumWindow::Hann) {
    for (std::size_t m = 0; m < n; ++m) {
      const double taper =
          0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(m) /
                                static_cast<double>(n - 1)));
      data[m] = (series[m] - mean) * taper;
    }
  }

  SpectrumResult result;
  result.samples = static_cast<int>(n);
  result.window = window;
  result.dc = std::abs(mean);
  result.frequency_hz.reserve(half);
  result.magnitude.reserve(half);
  for (std::size_t k = 1; k <= half; ++k) {
    Complex acc = 0.0;
    const double w = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
      acc += data[m] * std::exp(Complex(0.0, w * static_cast<double>(m)));
    }
    result.frequency_hz.push_back(static_cast<double>(k) / (static_cast<double>(n) * dt_s));
    result.magnitude.push_back(std::abs(acc) / static_cast<double>(n));
  }
  return result;
}

double SpectrumResult::total_power() const {
  return power_below(std::numeric_limits<double>::infinity());
}

double SpectrumResult::power_below(double f_hz) const {
  const auto n = static_cast<std::size_t>(samples);
  double power = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    if (frequency_hz[i] >= f_hz) continue;
    // fold the conjugate half; the Nyquist bin of an even-length series is unpaired
    const std::size_t k = i + 1;
    const double fold = (n % 2 == 0 && k == n / 2) ? 1.0 : 2.0;
    power += fold * magnitude[i] * magnitude[i];
  }
  return power;
}

double SpectrumResult::dominant_frequency_hz() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < magnitude.size(); ++i) {
    if (magnitude[i] > magnitude[best]) best = i;
  }
  return frequency_hz.empty() ? 0.0 : frequency_hz[best];
}

}  // namespace mcfsim
