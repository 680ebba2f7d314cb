#include "mcfsim/counting.hpp"

#include <cmath>
#include <random>

namespace mcfsim {

Eigen::Matrix4d CountRecord::corrected() const {
  Eigen::Matrix4d out;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      out(j, k) = std::max(0.0, static_cast<double>(counts(j, k)) - accidentals(j, k));
    }
  }
  return out;
}

bool CountRecord::any_clamped() const {
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      if (static_cast<double>(counts(j, k)) - accidentals(j, k) < 0.0) {
        return true;
      }
    }
  }
  return false;
}

JointDistribution copropagation_distribution(const PhaseVector& phases) {
  for (double phi : phases) {
    if (!std::isfinite(phi)) {
      throw std::invalid_argument("phases must be finite");
    }
  }
  Complex twophase[kCores];
  for (int m = 0; m < kCores; ++m) {
    twophase[m] = std::exp(Complex(0.0, 2.0 * phases[static_cast<std::size_t>(m)]));
  }
  JointDistribution out;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      Complex amp = 0.0;
      for (int m = 0; m < kCores; ++m) {
        amp += SplitterMatrix::sign(m, j) * SplitterMatrix::sign(m, k) * twophase[m];
      }
      out.p(j, k) = std::norm(amp / 8.0);
    }
  }
  return out;
}

CountRecord sample_counts(const JointDistribution& p, const DetectionConfig& det,
                          std::uint64_t seed) {
  if (det.pair_rate_hz < 0 || det.integration_time_s < 0 || det.accidental_rate_hz < 0) {
    throw std::invalid_argument("rates and integration time must be nonnegative");
  }
  const DemuxLoss loss(det.transmittance);
  const Eigen::Matrix4d pair_rates =
      loss.apply(p.p * det.pair_rate_hz * det.coincidence_efficiency);

  CountRecord rec;
  rec.integration_time_s = det.integration_time_s;
  std::mt19937_64 rng(seed);
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      const double accidental_rate = det.accidental_rate_table_hz
                                         ? (*det.accidental_rate_table_hz)(j, k)
                                         : det.accidental_rate_hz;
      if (accidental_rate < 0) {
        throw std::invalid_argument("accidental rates must be nonnegative");
      }
      const double mean = (pair_rates(j, k) + accidental_rate) * det.integration_time_s;
      rec.accidentals(j, k) = accidental_rate * det.integration_time_s;
      if (mean > 0.0) {
        std::poisson_distribution<std::int64_t> poisson(mean);
        rec.counts(j, k) = poisson(rng);
      }
    }
  }
  return rec;
}

CountRecord sample_counts(const JointDistribution& p, double pair_rate_hz,
                          double integration_time_s, double accidental_rate_hz,
                          std::uint64_t seed) {
  DetectionConfig det;
  det.pair_rate_hz = pair_rate_hz;
  det.integration_time_s = integration_time_s;
  det.accidental_rate_hz = accidental_rate_hz;
  return sample_counts(p, det, seed);
}

JointDistribution estimate_distribution(const CountRecord& record) {
  const Eigen::Matrix4d corrected = record.corrected();
  const double total = corrected.sum();
  if (!(total > 0.0)) {
    throw DataError("no corrected coincidence counts to normalize "
                    "(all entries zero after accidental subtraction)");
  }
  JointDistribution out;
  out.p = corrected / total;
  // Var(P_jk) from independent Poisson raw counts through subtraction and
  // normalization, first order: sum_mn [(delta - P_jk)/N]^2 * C_mn.
  const double raw_total = static_cast<double>(record.total_counts());
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      const double pjk = out.p(j, k);
      const double cjk = static_cast<double>(record.counts(j, k));
      const double var =
          ((1.0 - pjk) * (1.0 - pjk) * cjk + pjk * pjk * (raw_total - cjk)) / (total * total);
      out.sigma(j, k) = std::sqrt(std::max(0.0, var));
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mcfsim
