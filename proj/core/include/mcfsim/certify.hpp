#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcfsim/counting.hpp"
#include "mcfsim/devices.hpp"
#include "mcfsim/distribution.hpp"
#include "mcfsim/types.hpp"

namespace mcfsim {

/// One measured probability table plus everything needed for error
/// propagation and provenance: the raw counts it was estimated from (absent
/// for exact model tables) and a record of which model produced it.
struct MeasuredTable {
  JointDistribution dist;
  std::optional<CountRecord> counts;
  std::string source = "exact";   // "exact", "sampled", "external"
  std::string model = "tensor";   // "tensor", "copropagation", "unspecified"
  std::string file;               // backing file, when loaded from disk
};

/// The five mutually unbiased measurements feeding certification.
struct MeasurementSet {
  MeasuredTable z;
  std::array<MeasuredTable, 4> x;
};

/// Correlation of a joint table under a two-group partition of the outcomes:
/// the (alpha,beta,gamma,delta) permutation groups {alpha,beta} against
/// {gamma,delta}, and C = sum of same-group probabilities minus sum of
/// cross-group probabilities (the symmetric eight-cross-term form).
double group_correlation(const JointDistribution& p, const std::array<int, 4>& grouping);

/// The three pairwise-coherence combinations recovered from the four
/// splitter-basis tables:
///   sums[0] = Re<00|rho|11> + Re<22|rho|33>
///   sums[1] = Re<00|rho|22> + Re<11|rho|33>
///   sums[2] = Re<00|rho|33> + Re<11|rho|22>
std::array<double, 3> coherence_sums(const std::array<JointDistribution, 4>& x_tables);

/// Fidelity to the maximally entangled target reconstructed from the five
/// mutually unbiased measurements:
///   F = (1/4) sum_j P^Z_{jj} + (1/2) (sums[0] + sums[1] + sums[2]).
/// Equals <Psi|rho|Psi> exactly for any state. Sigma propagates Poisson
/// count noise for tables that carry counts and is zero otherwise.
ValueWithError mub_fidelity(const MeasurementSet& set);

/// Dimensionality certificate from the fidelity: F > 3/4 is incompatible
/// with Schmidt number <= 3.
struct SchmidtCertificate {
  double fidelity = 0.0;
  double threshold = 0.75;
  double margin = 0.0;  // fidelity - threshold
  bool certified = false;
  int certified_dimension = 0;  // 4 when certified
};
SchmidtCertificate schmidt_witness(double fidelity_value);

/// Which party's outcome is conditioned on in the entropic criterion.
enum class Conditioned { A, B };

/// Entropic steering value for a mutually unbiased pair of measurements
/// (p_table in the first basis, q_table in the second):
///   S = H(P_J | P_K) + H(Q_J | Q_K) - log2(4),
/// where K is the conditioned party. S < 0 certifies steering from K to J.
ValueWithError steering_value(const MeasuredTable& p_table, const MeasuredTable& q_table,
                              Conditioned conditioned);

/// Bhattacharyya coefficient sum_i sqrt(p_i q_i) between two normalized
/// tables; 1 iff identical, 0 for disjoint support.
double bhattacharyya(const JointDistribution& p, const JointDistribution& q);

/// Bhattacharyya similarity of a measured table to a fixed reference, with
/// count-noise error bar on the measured side.
ValueWithError bhattacharyya_similarity(const MeasuredTable& measured,
                                        const Eigen::Matrix4d& reference);

/// Shannon entropies (bits) of the two single-party marginals.
struct MarginalEntropies {
  ValueWithError party_a;
  ValueWithError party_b;
};
MarginalEntropies marginal_entropies(const MeasuredTable& table);
std::array<double, 2> marginal_entropies(const JointDistribution& p);

/// The ideal-state probability pattern for a named basis (the reference
/// distributions used for Bhattacharyya similarity).
Eigen::Matrix4d ideal_pattern(BasisId id);

/// Variance of a statistic T(P) under Poisson count noise, first order:
/// the gradient is d T / d P_{jk} evaluated at the estimated table.
double propagated_variance(const CountRecord& record, const Eigen::Matrix4d& gradient,
                           const JointDistribution& p);

struct SteeringEntry {
  std::string pair;  // e.g. "Z,X1"
  ValueWithError a_given_b;  // conditioned on B
  ValueWithError b_given_a;  // conditioned on A
};

struct TableProvenance {
  std::string basis;
  std::string source;
  std::string model;
  std::int64_t total_counts = 0;
  bool clamped = false;
  std::string file;  // empty when not file-backed
};

/// Full certification output of one experiment.
struct CertificationReport {
  ValueWithError fidelity;
  SchmidtCertificate schmidt;
  std::vector<SteeringEntry> steering;        // one per (Z, Xj) pair
  ValueWithError steering_mean_a_given_b;
  ValueWithError steering_mean_b_given_a;
  std::array<ValueWithError, 5> bhattacharyya_per_basis;  // Z, X0..X3
  ValueWithError bhattacharyya_mean;
  std::string bhattacharyya_aggregation = "mean over the five measured bases";
  std::array<MarginalEntropies, 5> entropies;  // Z, X0..X3
  double entropy_mean_bits = 0.0;
  std::vector<TableProvenance> provenance;
};

/// Runs the full certification pipeline on a measurement set.
CertificationReport certify(const MeasurementSet& set);

/// JSON document / human-readable summary of a report.
std::string report_to_json(const CertificationReport& report);
std::string report_to_text(const CertificationReport& report);

}  // namespace mcfsim
