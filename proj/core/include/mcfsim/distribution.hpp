#pragma once

#include <Eigen/Dense>

#include "mcfsim/types.hpp"

namespace mcfsim {

/// Joint coincidence probability table P_{jk} over detector pairs, with
/// per-entry standard errors (all zero for exact, model-derived tables).
/// Index j is the idler-side (A) outcome, k the signal-side (B) outcome.
struct JointDistribution {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();

  static JointDistribution exact(const Eigen::Matrix4d& probs) {
    JointDistribution d;
    d.p = probs;
    return d;
  }

  double sum() const { return p.sum(); }

  /// Marginal of party A (sum over the signal index k).
  Eigen::Vector4d marginal_a() const { return p.rowwise().sum(); }
  /// Marginal of party B (sum over the idler index j).
  Eigen::Vector4d marginal_b() const { return p.colwise().sum().transpose(); }
};

}  // namespace mcfsim
