#include "mcfsim/state.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace mcfsim {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenFloor = -1e-10;

}  // namespace

LocalUnitary::LocalUnitary(const Matrix4c& m) : m_(m) {
  const double dev = (m.adjoint() * m - Matrix4c::Identity()).cwiseAbs().maxCoeff();
  if (!(dev < kUnitarityTol)) {
    throw std::invalid_argument("matrix is not unitary: max |U^dag U - I| = " +
                                std::to_string(dev));
  }
}

TwoPhotonState TwoPhotonState::pure(const Vector16c& amplitudes) {
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("pure state not normalized: sum |c|^2 = " +
                                std::to_string(norm2));
  }
  TwoPhotonState s;
  s.pure_ = true;
  s.amps_ = amplitudes;
  return s;
}

TwoPhotonState TwoPhotonState::mixed(const Matrix16c& rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    throw std::invalid_argument("density matrix not Hermitian: max |rho - rho^dag| = " +
                                std::to_string(herm));
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("density matrix trace = " + std::to_string(tr));
  }
  Eigen::SelfAdjointEigenSolver<Matrix16c> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenFloor) {
    throw std::invalid_argument("density matrix not positive semidefinite: min eigenvalue = " +
                                std::to_string(min_eig));
  }
  TwoPhotonState s;
  s.pure_ = false;
  s.rho_ = rho;
  return s;
}

const Vector16c& TwoPhotonState::amplitudes() const {
  if (!pure_) {
    throw std::logic_error("amplitudes() requested on a mixed state");
  }
  return amps_;
}

Matrix16c TwoPhotonState::density_matrix() const {
  if (pure_) {
    return amps_ * amps_.adjoint();
  }
  return rho_;
}

TwoPhotonState tensor_apply(const LocalUnitary& u_a, const LocalUnitary& u_b,
                            const TwoPhotonState& state) {
  const Matrix16c u = Eigen::kroneckerProduct(u_a.matrix(), u_b.matrix());
  if (state.is_pure()) {
    return TwoPhotonState::pure(u * state.amplitudes());
  }
  return TwoPhotonState::mixed(u * state.density_matrix() * u.adjoint());
}

JointDistribution born_distribution(const TwoPhotonState& state, const LocalUnitary& basis_a,
                                    const LocalUnitary& basis_b) {
  JointDistribution out;
  if (state.is_pure()) {
    const Vector16c rotated =
        Eigen::kroneckerProduct(basis_a.matrix(), basis_b.matrix()) * state.amplitudes();
    for (int j = 0; j < kCores; ++j) {
      for (int k = 0; k < kCores; ++k) {
        out.p(j, k) = std::norm(rotated(kCores * j + k));
      }
    }
    return out;
  }
  const Matrix16c u = Eigen::kroneckerProduct(basis_a.matrix(), basis_b.matrix());
  const Matrix16c rotated = u * state.density_matrix() * u.adjoint();
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      // rounding can leave tiny negatives on the diagonal
      out.p(j, k) = std::max(0.0, rotated(kCores * j + k, kCores * j + k).real());
    }
  }
  return out;
}

double fidelity(const TwoPhotonState& state, const TwoPhotonState& target) {
  if (!target.is_pure()) {
    throw std::invalid_argument("fidelity target must be a pure state");
  }
  const Vector16c& t = target.amplitudes();
  if (state.is_pure()) {
    return std::norm(t.dot(state.amplitudes()));
  }
  return (t.adjoint() * state.density_matrix() * t)(0).real();
}

}  // namespace mcfsim
