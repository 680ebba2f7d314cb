#include "mcfsim/certify.hpp"

#include <algorithm>
#include <cmath>

namespace mcfsim {

namespace {

// Groupings of the three coherence combinations: cores {perm[0],perm[1]}
// against {perm[2],perm[3]}.
constexpr std::array<std::array<int, 4>, 3> kGroupings = {{
    {0, 1, 2, 3},
    {0, 2, 1, 3},
    {0, 3, 1, 2},
}};

// Basis signs in combination g: the X0 and X(g+1) tables enter with +1, the
// other two with -1 (each splitter basis preserves exactly its own pairing).
double combination_sign(int grouping, int basis) {
  return (basis == 0 || basis == grouping + 1) ? 1.0 : -1.0;
}

double group_sign(const std::array<int, 4>& grouping, int outcome) {
  return (outcome == grouping[0] || outcome == grouping[1]) ? 1.0 : -1.0;
}

void check_grouping(const std::array<int, 4>& grouping) {
  std::array<bool, 4> seen{};
  for (int g : grouping) {
    if (g < 0 || g >= kCores || seen[static_cast<std::size_t>(g)]) {
      throw std::invalid_argument("grouping must be a permutation of {0,1,2,3}");
    }
    seen[static_cast<std::size_t>(g)] = true;
  }
}

constexpr double kLog2D = 2.0;  // log2(4)

double entropy_bits(const Eigen::Vector4d& p) {
  double h = 0.0;
  for (int i = 0; i < kCores; ++i) {
    if (p(i) > 0.0) h -= p(i) * std::log2(p(i));
  }
  return h;
}

double joint_entropy_bits(const Eigen::Matrix4d& p) {
  double h = 0.0;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      if (p(j, k) > 0.0) h -= p(j, k) * std::log2(p(j, k));
    }
  }
  return h;
}

// Gradient of H(J|K) = H(joint) - H(marginal of K) wrt the joint entries:
// -log2(p_jk / m_k). Zero bins follow the 0 log 0 convention; their raw
// count weight is zero in the variance sum, so they are skipped there too.
Eigen::Matrix4d conditional_entropy_gradient(const Eigen::Matrix4d& p, Conditioned cond) {
  const Eigen::Vector4d marg =
      (cond == Conditioned::B) ? Eigen::Vector4d(p.colwise().sum().transpose())
                               : Eigen::Vector4d(p.rowwise().sum());
  Eigen::Matrix4d grad = Eigen::Matrix4d::Zero();
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      const double m = (cond == Conditioned::B) ? marg(k) : marg(j);
      if (p(j, k) > 0.0 && m > 0.0) {
        grad(j, k) = -std::log2(p(j, k) / m);
      }
    }
  }
  return grad;
}

double conditional_entropy_bits(const Eigen::Matrix4d& p, Conditioned cond) {
  const Eigen::Vector4d marg =
      (cond == Conditioned::B) ? Eigen::Vector4d(p.colwise().sum().transpose())
                               : Eigen::Vector4d(p.rowwise().sum());
  return joint_entropy_bits(p) - entropy_bits(marg);
}

double table_variance(const MeasuredTable& table, const Eigen::Matrix4d& gradient) {
  if (!table.counts) return 0.0;
  return propagated_variance(*table.counts, gradient, table.dist);
}

}  // namespace

double propagated_variance(const CountRecord& record, const Eigen::Matrix4d& gradient,
                           const JointDistribution& p) {
  const double total = record.corrected().sum();
  if (!(total > 0.0)) return 0.0;
  const double mean_grad = (gradient.array() * p.p.array()).sum();
  double var = 0.0;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      const double d = (gradient(j, k) - mean_grad) / total;
      var += d * d * static_cast<double>(record.counts(j, k));
    }
  }
  return var;
}

double group_correlation(const JointDistribution& p, const std::array<int, 4>& grouping) {
  check_grouping(grouping);
  double c = 0.0;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      c += group_sign(grouping, j) * group_sign(grouping, k) * p.p(j, k);
    }
  }
  return c;
}

std::array<double, 3> coherence_sums(const std::array<JointDistribution, 4>& x_tables) {
  std::array<double, 3> sums{};
  for (int g = 0; g < 3; ++g) {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) {
      acc += combination_sign(g, b) *
             group_correlation(x_tables[static_cast<std::size_t>(b)],
                               kGroupings[static_cast<std::size_t>(g)]);
    }
    sums[static_cast<std::size_t>(g)] = acc / 8.0;
  }
  return sums;
}

ValueWithError mub_fidelity(const MeasurementSet& set) {
  std::array<JointDistribution, 4> x_dists;
  for (int b = 0; b < 4; ++b) {
    x_dists[static_cast<std::size_t>(b)] = set.x[static_cast<std::size_t>(b)].dist;
  }
  const std::array<double, 3> sums = coherence_sums(x_dists);

  ValueWithError f;
  f.value = 0.25 * set.z.dist.p.diagonal().sum() + 0.5 * (sums[0] + sums[1] + sums[2]);

  // Gradients wrt table entries, for count-noise propagation.
  Eigen::Matrix4d grad_z = Eigen::Matrix4d::Zero();
  grad_z.diagonal().setConstant(0.25);
  double var = table_variance(set.z, grad_z);

  for (int b = 0; b < 4; ++b) {
    Eigen::Matrix4d grad = Eigen::Matrix4d::Zero();
    for (int g = 0; g < 3; ++g) {
      const auto& grouping = kGroupings[static_cast<std::size_t>(g)];
      for (int j = 0; j < kCores; ++j) {
        for (int k = 0; k < kCores; ++k) {
          grad(j, k) += (0.5 / 8.0) * combination_sign(g, b) * group_sign(grouping, j) *
                        group_sign(grouping, k);
        }
      }
    }
    var += table_variance(set.x[static_cast<std::size_t>(b)], grad);
  }
  f.sigma = std::sqrt(var);
  return f;
}

SchmidtCertificate schmidt_witness(double fidelity_value) {
  if (!(fidelity_value >= 0.0 && fidelity_value <= 1.0)) {
    throw std::invalid_argument("fidelity outside [0,1]");
  }
  SchmidtCertificate cert;
  cert.fidelity = fidelity_value;
  cert.margin = fidelity_value - cert.threshold;
  cert.certified = fidelity_value > cert.threshold;
  cert.certified_dimension = cert.certified ? 4 : 0;
  return cert;
}

ValueWithError steering_value(const MeasuredTable& p_table, const MeasuredTable& q_table,
                              Conditioned conditioned) {
  ValueWithError s;
  s.value = conditional_entropy_bits(p_table.dist.p, conditioned) +
            conditional_entropy_bits(q_table.dist.p, conditioned) - kLog2D;
  const double var =
      table_variance(p_table, conditional_entropy_gradient(p_table.dist.p, conditioned)) +
      table_variance(q_table, conditional_entropy_gradient(q_table.dist.p, conditioned));
  s.sigma = std::sqrt(var);
  return s;
}

double bhattacharyya(const JointDistribution& p, const JointDistribution& q) {
  double b = 0.0;
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      b += std::sqrt(p.p(j, k) * q.p(j, k));
    }
  }
  return b;
}

ValueWithError bhattacharyya_similarity(const MeasuredTable& measured,
                                        const Eigen::Matrix4d& reference) {
  ValueWithError out;
  out.value = bhattacharyya(measured.dist, JointDistribution::exact(reference));
  Eigen::Matrix4d grad = Eigen::Matrix4d::Zero();
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      if (measured.dist.p(j, k) > 0.0 && reference(j, k) > 0.0) {
        grad(j, k) = 0.5 * std::sqrt(reference(j, k) / measured.dist.p(j, k));
      }
    }
  }
  out.sigma = std::sqrt(table_variance(measured, grad));
  return out;
}

std::array<double, 2> marginal_entropies(const JointDistribution& p) {
  return {entropy_bits(p.marginal_a()), entropy_bits(p.marginal_b())};
}

MarginalEntropies marginal_entropies(const MeasuredTable& table) {
  const std::array<double, 2> h = marginal_entropies(table.dist);
  MarginalEntropies out;
  out.party_a.value = h[0];
  out.party_b.value = h[1];

  const Eigen::Vector4d ma = table.dist.marginal_a();
  const Eigen::Vector4d mb = table.dist.marginal_b();
  Eigen::Matrix4d grad_a = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d grad_b = Eigen::Matrix4d::Zero();
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      if (ma(j) > 0.0) grad_a(j, k) = -(std::log2(ma(j)) + 1.0 / std::log(2.0));
      if (mb(k) > 0.0) grad_b(j, k) = -(std::log2(mb(k)) + 1.0 / std::log(2.0));
    }
  }
  out.party_a.sigma = std::sqrt(table_variance(table, grad_a));
  out.party_b.sigma = std::sqrt(table_variance(table, grad_b));
  return out;
}

Eigen::Matrix4d ideal_pattern(BasisId id) {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  switch (id) {
    case BasisId::Z:
    case BasisId::X0:
      p.diagonal().setConstant(0.25);
      return p;
    case BasisId::X1:
      p(0, 1) = p(1, 0) = p(2, 3) = p(3, 2) = 0.25;
      return p;
    case BasisId::X2:
      p(0, 2) = p(2, 0) = p(1, 3) = p(3, 1) = 0.25;
      return p;
    case BasisId::X3:
      p(0, 3) = p(3, 0) = p(1, 2) = p(2, 1) = 0.25;
      return p;
    case BasisId::Custom:
      break;
  }
  throw std::invalid_argument("no ideal pattern for custom bases");
}

CertificationReport certify(const MeasurementSet& set) {
  const std::array<const MeasuredTable*, 5> all = {&set.z, &set.x[0], &set.x[1], &set.x[2],
                                                   &set.x[3]};
  static const char* kNames[5] = {"Z", "X0", "X1", "X2", "X3"};
  for (int i = 0; i < 5; ++i) {
    const double sum = all[static_cast<std::size_t>(i)]->dist.sum();
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DataError(std::string("table ") + kNames[i] +
                      " is not a normalized distribution (sum = " + std::to_string(sum) +
                      "); no usable counts?");
    }
  }

  CertificationReport report;
  report.fidelity = mub_fidelity(set);
  report.schmidt = schmidt_witness(std::clamp(report.fidelity.value, 0.0, 1.0));

  // The Z table is shared by all four (Z, Xj) pairs, so its count noise
  // enters the mean steering value at full weight.
  double mean_ab = 0.0, mean_ba = 0.0;
  double var_ab =
      table_variance(set.z, conditional_entropy_gradient(set.z.dist.p, Conditioned::B));
  double var_ba =
      table_variance(set.z, conditional_entropy_gradient(set.z.dist.p, Conditioned::A));
  for (int b = 0; b < 4; ++b) {
    const auto& x = set.x[static_cast<std::size_t>(b)];
    SteeringEntry entry;
    entry.pair = "Z," + basis_name(static_cast<BasisId>(static_cast<int>(BasisId::X0) + b));
    entry.a_given_b = steering_value(set.z, x, Conditioned::B);
    entry.b_given_a = steering_value(set.z, x, Conditioned::A);
    mean_ab += entry.a_given_b.value / 4.0;
    mean_ba += entry.b_given_a.value / 4.0;
    var_ab += table_variance(x, conditional_entropy_gradient(x.dist.p, Conditioned::B)) / 16.0;
    var_ba += table_variance(x, conditional_entropy_gradient(x.dist.p, Conditioned::A)) / 16.0;
    report.steering.push_back(entry);
  }
  report.steering_mean_a_given_b = {mean_ab, std::sqrt(var_ab)};
  report.steering_mean_b_given_a = {mean_ba, std::sqrt(var_ba)};

  const std::array<const MeasuredTable*, 5> tables = {&set.z, &set.x[0], &set.x[1],
                                                      &set.x[2], &set.x[3]};
  const std::array<BasisId, 5> ids = {BasisId::Z, BasisId::X0, BasisId::X1, BasisId::X2,
                                      BasisId::X3};
  double cb_mean = 0.0, cb_var = 0.0, h_mean = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto si = static_cast<std::size_t>(i);
    report.bhattacharyya_per_basis[si] =
        bhattacharyya_similarity(*tables[si], ideal_pattern(ids[si]));
    cb_mean += report.bhattacharyya_per_basis[si].value / 5.0;
    cb_var += report.bhattacharyya_per_basis[si].sigma *
              report.bhattacharyya_per_basis[si].sigma / 25.0;
    report.entropies[si] = marginal_entropies(*tables[si]);
    h_mean += (report.entropies[si].party_a.value + report.entropies[si].party_b.value) / 10.0;

    TableProvenance prov;
    prov.basis = basis_name(ids[si]);
    prov.source = tables[si]->source;
    prov.model = tables[si]->model;
    prov.file = tables[si]->file;
    if (tables[si]->counts) {
      prov.total_counts = tables[si]->counts->total_counts();
      prov.clamped = tables[si]->counts->any_clamped();
    }
    report.provenance.push_back(prov);
  }
  report.bhattacharyya_mean = {cb_mean, std::sqrt(cb_var)};
  report.entropy_mean_bits = h_mean;
  return report;
}

}  // namespace mcfsim
