#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mcfsim/certify.hpp"

namespace mcfsim {

namespace {

using nlohmann::json;

json to_json(const ValueWithError& v) { return json{{"value", v.value}, {"sigma", v.sigma}}; }

}  // namespace

std::string report_to_json(const CertificationReport& report) {
  json doc;
  doc["fidelity"] = to_json(report.fidelity);
  doc["schmidt_witness"] = {
      {"threshold", report.schmidt.threshold},
      {"margin", report.schmidt.margin},
      {"certified", report.schmidt.certified},
      {"certified_dimension", report.schmidt.certified_dimension},
  };

  json steering = json::array();
  for (const auto& s : report.steering) {
    steering.push_back({{"pair", s.pair},
                        {"S_A_given_B", to_json(s.a_given_b)},
                        {"S_B_given_A", to_json(s.b_given_a)}});
  }
  doc["steering"] = {
      {"criterion", "S = H(P_J|P_K) + H(Q_J|Q_K) - log2(4); S < 0 certifies steering"},
      {"pairs", steering},
      {"mean_A_given_B", to_json(report.steering_mean_a_given_b)},
      {"mean_B_given_A", to_json(report.steering_mean_b_given_a)},
  };

  static const char* kBasisNames[5] = {"Z", "X0", "X1", "X2", "X3"};
  json cb;
  for (int i = 0; i < 5; ++i) {
    cb[kBasisNames[i]] = to_json(report.bhattacharyya_per_basis[static_cast<std::size_t>(i)]);
  }
  doc["bhattacharyya"] = {
      {"per_basis", cb},
      {"mean", to_json(report.bhattacharyya_mean)},
      {"aggregation", report.bhattacharyya_aggregation},
  };

  json entropies;
  for (int i = 0; i < 5; ++i) {
    const auto& e = report.entropies[static_cast<std::size_t>(i)];
    entropies[kBasisNames[i]] = {{"party_A_bits", to_json(e.party_a)},
                                 {"party_B_bits", to_json(e.party_b)}};
  }
  doc["marginal_entropies"] = {
      {"per_basis", entropies},
      {"mean_bits", report.entropy_mean_bits},
      {"max_bits", 2.0},
  };

  json prov = json::array();
  for (const auto& p : report.provenance) {
    json entry = {{"basis", p.basis},  {"source", p.source},
                  {"model", p.model},  {"total_counts", p.total_counts},
                  {"clamped", p.clamped}};
    if (!p.file.empty()) entry["file"] = p.file;
    prov.push_back(entry);
  }
  doc["tables"] = prov;
  return doc.dump(2) + "\n";
}

std::string report_to_text(const CertificationReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "entanglement certification\n";
  out << "--------------------------\n";
  out << "fidelity to target   F = " << report.fidelity.value << " +- "
      << report.fidelity.sigma << "\n";
  out << "Schmidt witness      " << (report.schmidt.certified ? "PASS" : "FAIL")
      << "  (F - 3/4 = " << report.schmidt.margin;
  if (report.schmidt.certified) {
    out << ", dimension-4 entanglement certified";
  }
  out << ")\n\n";

  out << "entropic steering (negative = steering)\n";
  for (const auto& s : report.steering) {
    out << "  " << s.pair << "  S(A|B) = " << s.a_given_b.value << " +- " << s.a_given_b.sigma
        << "   S(B|A) = " << s.b_given_a.value << " +- " << s.b_given_a.sigma << "\n";
  }
  out << "  mean    S(A|B) = " << report.steering_mean_a_given_b.value << " +- "
      << report.steering_mean_a_given_b.sigma
      << "   S(B|A) = " << report.steering_mean_b_given_a.value << " +- "
      << report.steering_mean_b_given_a.sigma << "\n\n";

  static const char* kBasisNames[5] = {"Z", "X0", "X1", "X2", "X3"};
  out << "Bhattacharyya similarity to ideal patterns ("
      << report.bhattacharyya_aggregation << ")\n  ";
  for (int i = 0; i < 5; ++i) {
    out << kBasisNames[i] << " = "
        << report.bhattacharyya_per_basis[static_cast<std::size_t>(i)].value << "  ";
  }
  out << "\n  C_B = " << report.bhattacharyya_mean.value << " +- "
      << report.bhattacharyya_mean.sigma << "\n\n";

  out << "marginal entropies (bits, max 2)\n";
  for (int i = 0; i < 5; ++i) {
    const auto& e = report.entropies[static_cast<std::size_t>(i)];
    out << "  " << kBasisNames[i] << "  H_A = " << e.party_a.value
        << "  H_B = " << e.party_b.value << "\n";
  }
  out << "  mean = " << report.entropy_mean_bits << "\n\n";

  out << "tables\n";
  for (const auto& p : report.provenance) {
    out << "  " << p.basis << ": source=" << p.source << " model=" << p.model
        << " counts=" << p.total_counts << (p.clamped ? " [clamped negatives]" : "");
    if (!p.file.empty()) out << " file=" << p.file;
    out << "\n";
  }
  return out.str();
}

}  // namespace mcfsim
