#pragma once

#include <string>
#include <string_view>

#include "mcfsim/state.hpp"
#include "mcfsim/types.hpp"

namespace mcfsim {

/// The 4x4 multiport fiber beam splitter. The nominal device couples all
/// four cores with equal 25% power splitting; its transfer matrix is
/// (1/2) * u with sign pattern u_{kj} = +-1, real, symmetric and self-inverse.
class SplitterMatrix {
 public:
  static SplitterMatrix ideal();

  const Matrix4c& matrix() const { return m_.matrix(); }
  const LocalUnitary& unitary() const { return m_; }

  /// Sign of entry (k, j), i.e. 2 * Re(matrix()(k, j)) for the ideal device.
  static double sign(int k, int j);

 private:
  explicit SplitterMatrix(LocalUnitary m) : m_(std::move(m)) {}
  LocalUnitary m_;
};

enum class BasisId { Z, X0, X1, X2, X3, Custom };

/// Core phase assignment defining each superposition basis.
PhaseVector basis_phases(BasisId id);

/// Parses "Z", "X0".."X3"; throws ConfigError otherwise.
BasisId basis_id_from_name(std::string_view name);
std::string basis_name(BasisId id);

/// A single-photon measurement basis: outcome m has amplitude
/// (matrix() * psi)_m. Z is the bare core basis; the Xj bases route the
/// photon through the splitter after per-core phases, matrix
/// U_BS * diag(e^{i phi}). Z and X0..X3 are mutually unbiased.
class MeasurementBasis {
 public:
  /// One of the five named bases.
  static MeasurementBasis named(std::string_view name);
  static MeasurementBasis named(BasisId id);

  /// Splitter basis with a caller-supplied phase vector.
  static MeasurementBasis custom(const PhaseVector& phases);

  const std::string& name() const { return name_; }
  BasisId id() const { return id_; }
  const LocalUnitary& matrix() const { return matrix_; }
  const PhaseVector& phases() const { return phases_; }

 private:
  MeasurementBasis(BasisId id, std::string name, PhaseVector phases, LocalUnitary m)
      : id_(id), name_(std::move(name)), phases_(phases), matrix_(std::move(m)) {}

  BasisId id_;
  std::string name_;
  PhaseVector phases_;
  LocalUnitary matrix_;
};

/// Per-core transmittance of the demultiplexer stage. Applied to expected
/// count rates (coincidence (j,k) scales by t_j * t_k); probabilities are
/// renormalized only when distributions are estimated from counts.
class DemuxLoss {
 public:
  explicit DemuxLoss(const std::array<double, kCores>& transmittance);

  static DemuxLoss lossless() { return DemuxLoss({1.0, 1.0, 1.0, 1.0}); }

  const std::array<double, kCores>& transmittance() const { return t_; }

  /// Scales a table of expected coincidence rates.
  Eigen::Matrix4d apply(const Eigen::Matrix4d& rates) const;

 private:
  std::array<double, kCores> t_;
};

}  // namespace mcfsim
