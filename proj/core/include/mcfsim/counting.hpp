#pragma once

#include <cstdint>
#include <optional>

#include "mcfsim/devices.hpp"
#include "mcfsim/distribution.hpp"
#include "mcfsim/types.hpp"

namespace mcfsim {

/// Raw coincidence counts C_{jk}, the accidental estimates a_{jk} subtracted
/// before normalization, and the integration time that produced them.
struct CountRecord {
  Eigen::Matrix<std::int64_t, 4, 4> counts = Eigen::Matrix<std::int64_t, 4, 4>::Zero();
  Eigen::Matrix4d accidentals = Eigen::Matrix4d::Zero();
  double integration_time_s = 0.0;

  /// Accidental-corrected counts, clamped at zero.
  Eigen::Matrix4d corrected() const;

  /// True when any corrected entry was negative before clamping.
  bool any_clamped() const;

  std::int64_t total_counts() const { return counts.sum(); }
};

/// Coincidence probabilities for the ideal source state when both photons
/// co-propagate through the measurement splitter with core phases phi:
/// P_{jk} = |(1/8) sum_m u_{mj} u_{mk} e^{i 2 phi_m}|^2. The factor of two
/// on the phase reflects both photons acquiring it in the same core. The
/// table is symmetric and sums to one.
JointDistribution copropagation_distribution(const PhaseVector& phases);

/// Detection-stage parameters used when sampling counts.
struct DetectionConfig {
  double pair_rate_hz = 0.0;          // detected pairs/s before demux loss
  double integration_time_s = 0.0;
  double accidental_rate_hz = 0.0;    // uniform background per detector pair
  /// Per-pair background override; entry (j,k) replaces the uniform rate.
  std::optional<Eigen::Matrix4d> accidental_rate_table_hz;
  double coincidence_efficiency = 1.0;
  std::array<double, kCores> transmittance{1.0, 1.0, 1.0, 1.0};
};

/// Draws Poisson counts with mean
///   P_{jk} * rate * efficiency * t_j * t_k * time + accidental_rate * time
/// per entry. Deterministic for a fixed seed; disjoint seeds give
/// independent streams, so replicates can be sampled concurrently.
CountRecord sample_counts(const JointDistribution& p, const DetectionConfig& det,
                          std::uint64_t seed);

CountRecord sample_counts(const JointDistribution& p, double pair_rate_hz,
                          double integration_time_s, double accidental_rate_hz,
                          std::uint64_t seed);

/// Normalizes corrected counts into a probability table with standard errors
/// from first-order propagation of Poisson (sqrt C) count noise through the
/// subtraction and normalization. The first-order errors assume corrected
/// counts stay away from the clamp at zero; any_clamped() flags records
/// where that fails. Throws DataError when no corrected counts remain.
JointDistribution estimate_distribution(const CountRecord& record);

/// splitmix64 of (seed, stream); used to derive independent per-table and
/// per-replicate seeds from one experiment seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mcfsim
