#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mcfsim/counting.hpp"
#include "mcfsim/devices.hpp"
#include "mcfsim/drift.hpp"
#include "mcfsim/linkbudget.hpp"
#include "mcfsim/source.hpp"

namespace mcfsim {

/// Which model produces the splitter-basis probability tables in a
/// simulation: the general tensor-product Born rule, or the co-propagation
/// interference formula (ideal source only; the two agree there).
enum class XBasisModel { Tensor, Copropagation };

struct MeasurementConfig {
  std::vector<std::string> bases{"Z", "X0", "X1", "X2", "X3"};
  std::optional<PhaseVector> custom_phases;  // required when bases include "custom"
  double integration_time_s = 5.0;
  double coincidence_efficiency = 0.04;
  double accidental_rate_hz = 0.0;
  /// Row-major (j,k) per-pair background override of the uniform rate.
  std::optional<std::array<double, 16>> accidental_rates_hz;
  std::array<double, kCores> transmittance{1.0, 1.0, 1.0, 1.0};
  XBasisModel model = XBasisModel::Tensor;
  std::uint64_t seed = 1;
};

struct DriftConfig {
  bool use_typical = true;  // explicit sinusoid lists override below
  std::vector<double> periods_s;
  std::vector<double> amplitudes_rad;
  std::vector<int> cores;
  std::vector<double> offsets_rad;
  double walk_rate_rad2_per_s = 1.0e-5;
  double duration_s = 4800.0;
  double dt_s = 5.0;
  int pair_j = 0;
  int pair_k = 0;

  DriftModel build_model(std::uint64_t seed) const;
};

/// Full experiment description parsed from the sectioned key=value file.
struct ExperimentConfig {
  SourceConfig source;
  MeasurementConfig measurement;
  DriftConfig drift;
  LinkBudget linkbudget;
  double linkbudget_distance_km = 75.0;
  std::string output_dir = "out";
};

/// Parses a config file. Unknown sections or keys are rejected with
/// file:line diagnostics (ConfigError).
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(std::istream& in, const std::string& name);

}  // namespace mcfsim
