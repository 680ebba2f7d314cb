#include "mcfsim/devices.hpp"

#include <cmath>

namespace mcfsim {

namespace {

// Sign pattern of the nominal splitter transfer matrix.
constexpr int kSigns[kCores][kCores] = {
    {1, 1, 1, 1},
    {1, 1, -1, -1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
};

Matrix4c splitter_times_phases(const PhaseVector& phases) {
  Matrix4c m;
  for (int k = 0; k < kCores; ++k) {
    for (int j = 0; j < kCores; ++j) {
      m(k, j) = 0.5 * static_cast<double>(kSigns[k][j]) *
                std::exp(Complex(0.0, phases[static_cast<std::size_t>(j)]));
    }
  }
  return m;
}

}  // namespace

SplitterMatrix SplitterMatrix::ideal() {
  return SplitterMatrix(LocalUnitary(splitter_times_phases({0, 0, 0, 0})));
}

double SplitterMatrix::sign(int k, int j) {
  return static_cast<double>(kSigns[CoreLabel::checked(k).index][CoreLabel::checked(j).index]);
}

PhaseVector basis_phases(BasisId id) {
  constexpr double h = M_PI / 2.0;
  switch (id) {
    case BasisId::Z:
    case BasisId::X0:
      return {0, 0, 0, 0};
    case BasisId::X1:
      return {0, M_PI, h, h};
    case BasisId::X2:
      return {0, h, M_PI, h};
    case BasisId::X3:
      return {0, h, h, M_PI};
    case BasisId::Custom:
      break;
  }
  throw std::invalid_argument("basis_phases: no fixed phase table for this basis");
}

BasisId basis_id_from_name(std::string_view name) {
  if (name == "Z") return BasisId::Z;
  if (name == "X0") return BasisId::X0;
  if (name == "X1") return BasisId::X1;
  if (name == "X2") return BasisId::X2;
  if (name == "X3") return BasisId::X3;
  throw ConfigError("unknown basis name '" + std::string(name) +
                    "' (expected Z, X0, X1, X2 or X3)");
}

std::string basis_name(BasisId id) {
  switch (id) {
    case BasisId::Z: return "Z";
    case BasisId::X0: return "X0";
    case BasisId::X1: return "X1";
    case BasisId::X2: return "X2";
    case BasisId::X3: return "X3";
    case BasisId::Custom: return "custom";
  }
  return "?";
}

MeasurementBasis MeasurementBasis::named(std::string_view name) {
  return named(basis_id_from_name(name));
}

MeasurementBasis MeasurementBasis::named(BasisId id) {
  if (id == BasisId::Custom) {
    throw std::invalid_argument("custom bases need an explicit phase vector");
  }
  if (id == BasisId::Z) {
    return MeasurementBasis(id, "Z", {0, 0, 0, 0}, LocalUnitary::identity());
  }
  const PhaseVector phases = basis_phases(id);
  return MeasurementBasis(id, basis_name(id), phases,
                          LocalUnitary(splitter_times_phases(phases)));
}

MeasurementBasis MeasurementBasis::custom(const PhaseVector& phases) {
  for (double phi : phases) {
    if (!std::isfinite(phi)) {
      throw std::invalid_argument("custom basis phases must be finite");
    }
  }
  return MeasurementBasis(BasisId::Custom, "custom", phases,
                          LocalUnitary(splitter_times_phases(phases)));
}

DemuxLoss::DemuxLoss(const std::array<double, kCores>& transmittance) : t_(transmittance) {
  for (double t : t_) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("demux transmittance " + std::to_string(t) +
                                  " outside [0,1]");
    }
  }
}

Eigen::Matrix4d DemuxLoss::apply(const Eigen::Matrix4d& rates) const {
  Eigen::Matrix4d out;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      out(j, k) = rates(j, k) * t_[static_cast<std::size_t>(j)] * t_[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

}  // namespace mcfsim
