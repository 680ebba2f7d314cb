#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mcfsim {

/// Number of fiber cores; the qudit dimension of each photon.
inline constexpr int kCores = 4;
/// Dimension of the two-photon space.
inline constexpr int kPairDim = kCores * kCores;

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<Complex, kPairDim, kPairDim>;
using Vector16c = Eigen::Matrix<Complex, kPairDim, 1>;

/// Relative phase per core, radians. Stored unwrapped; only e^{i*phi} matters.
using PhaseVector = std::array<double, kCores>;

/// A core index in [0, kCores).
struct CoreLabel {
  int index;

  static CoreLabel checked(int i) {
    if (i < 0 || i >= kCores) {
      throw std::invalid_argument("core index " + std::to_string(i) +
                                  " outside [0," + std::to_string(kCores - 1) + "]");
    }
    return CoreLabel{i};
  }
};

/// Raised for malformed configuration input. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or unusable data (count tables, series). Exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar plus its one-sigma standard error (0 for exact quantities).
struct ValueWithError {
  double value = 0.0;
  double sigma = 0.0;
};

}  // namespace mcfsim
