#pragma once

#include "mcfsim/distribution.hpp"
#include "mcfsim/types.hpp"

namespace mcfsim {

/// One-photon (single qudit) unitary over the core basis.
/// Construction enforces U^dag U = I to within 1e-10 per entry.
class LocalUnitary {
 public:
  explicit LocalUnitary(const Matrix4c& m);

  static LocalUnitary identity() { return LocalUnitary(Matrix4c::Identity()); }

  const Matrix4c& matrix() const { return m_; }

  static constexpr double kUnitarityTol = 1e-10;

 private:
  Matrix4c m_;
};

/// Two-photon state over the 16-dimensional pair space, either a pure
/// amplitude vector c_{jk} (row-major over (j,k)) or a density matrix.
///
/// Invariants enforced at construction:
///   pure:  sum |c|^2 = 1 within 1e-12
///   mixed: Hermitian within 1e-12, trace 1 within 1e-12,
///          eigenvalues >= -1e-10
class TwoPhotonState {
 public:
  static TwoPhotonState pure(const Vector16c& amplitudes);
  static TwoPhotonState mixed(const Matrix16c& rho);

  bool is_pure() const { return pure_; }

  /// Pure amplitudes; throws std::logic_error for mixed states.
  const Vector16c& amplitudes() const;

  /// Amplitude c_{jk} of the pure state.
  Complex amplitude(int j, int k) const { return amplitudes()(kCores * j + k); }

  /// Density matrix representation (|psi><psi| for pure states).
  Matrix16c density_matrix() const;

 private:
  TwoPhotonState() = default;

  bool pure_ = true;
  Vector16c amps_ = Vector16c::Zero();
  Matrix16c rho_ = Matrix16c::Zero();
};

/// Applies U_A (x) U_B to the state. Pure stays pure, mixed stays mixed.
TwoPhotonState tensor_apply(const LocalUnitary& u_a, const LocalUnitary& u_b,
                            const TwoPhotonState& state);

/// Born-rule joint outcome probabilities when party A measures in basis_a and
/// party B in basis_b: P_{jk} = |<jk| (basis_a (x) basis_b) |psi>|^2, or the
/// trace equivalent for mixed states. Entries are exact (sigma = 0).
JointDistribution born_distribution(const TwoPhotonState& state,
                                    const LocalUnitary& basis_a,
                                    const LocalUnitary& basis_b);

/// Overlap <target|rho|target> with a pure, normalized target state.
double fidelity(const TwoPhotonState& state, const TwoPhotonState& target);

}  // namespace mcfsim
