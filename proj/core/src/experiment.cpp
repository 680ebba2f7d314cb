#include "mcfsim/experiment.hpp"

#include <fstream>

#include <json.hpp>

#include "mcfsim/csv.hpp"

namespace mcfsim {

namespace {

using nlohmann::json;

struct BasisRun {
  MeasurementBasis basis;
  JointDistribution exact;
  CountRecord counts;
  std::string model;
};

JointDistribution exact_distribution(const TwoPhotonState& state, const MeasurementBasis& basis,
                                     XBasisModel model) {
  if (basis.id() != BasisId::Z && model == XBasisModel::Copropagation) {
    return copropagation_distribution(basis.phases());
  }
  return born_distribution(state, basis.matrix(), basis.matrix());
}

std::string model_label(const MeasurementBasis& basis, XBasisModel model) {
  if (basis.id() == BasisId::Z) return "tensor";
  return model == XBasisModel::Copropagation ? "copropagation" : "tensor";
}

}  // namespace

std::string count_table_filename(const std::string& basis_name) {
  return "counts_" + basis_name + ".csv";
}

SimulationArtifacts run_simulate(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir, std::uint64_t seed) {
  std::filesystem::create_directories(out_dir);
  const TwoPhotonState state = source_state(config.source);

  DetectionConfig det;
  det.pair_rate_hz = emitted_pair_rate(config.source);
  det.integration_time_s = config.measurement.integration_time_s;
  det.accidental_rate_hz = config.measurement.accidental_rate_hz;
  if (config.measurement.accidental_rates_hz) {
    Eigen::Matrix4d table;
    for (int j = 0; j < kCores; ++j) {
      for (int k = 0; k < kCores; ++k) {
        table(j, k) =
            (*config.measurement.accidental_rates_hz)[static_cast<std::size_t>(kCores * j + k)];
      }
    }
    det.accidental_rate_table_hz = table;
  }
  det.coincidence_efficiency = config.measurement.coincidence_efficiency;
  det.transmittance = config.measurement.transmittance;

  SimulationArtifacts artifacts;
  artifacts.dir = out_dir;

  json manifest;
  manifest["seed"] = seed;
  manifest["tables"] = json::object();

  std::uint64_t stream = 0;
  for (const auto& name : config.measurement.bases) {
    const MeasurementBasis basis = (name == "custom")
                                       ? MeasurementBasis::custom(*config.measurement.custom_phases)
                                       : MeasurementBasis::named(name);
    BasisRun run{basis, exact_distribution(state, basis, config.measurement.model),
                 CountRecord{}, model_label(basis, config.measurement.model)};
    run.counts = sample_counts(run.exact, det, derive_seed(seed, stream));

    const std::string counts_file = count_table_filename(name);
    const std::string probs_file = "probs_" + name + ".csv";
    write_count_table(out_dir / counts_file, run.counts);
    write_distribution(out_dir / probs_file, run.exact);
    artifacts.files.push_back(counts_file);
    artifacts.files.push_back(probs_file);

    manifest["tables"][name] = {
        {"counts_file", counts_file},
        {"probs_file", probs_file},
        {"model", run.model},
        {"source", "sampled"},
        {"stream", stream},
    };

    // keep the five standard tables for in-process certification
    MeasuredTable table;
    table.counts = run.counts;
    try {
      table.dist = estimate_distribution(run.counts);
    } catch (const DataError&) {
      table.dist = JointDistribution{};  // unnormalized; certify() refuses it
    }
    table.source = "sampled";
    table.model = run.model;
    if (basis.id() == BasisId::Z) {
      artifacts.set.z = table;
    } else if (basis.id() != BasisId::Custom) {
      artifacts.set.x[static_cast<std::size_t>(static_cast<int>(basis.id()) -
                                               static_cast<int>(BasisId::X0))] = table;
    }
    ++stream;
  }

  std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";
  artifacts.files.push_back("manifest.json");
  return artifacts;
}

MeasurementSet load_measurement_set(const std::filesystem::path& counts_dir) {
  json manifest;
  {
    std::ifstream mf(counts_dir / "manifest.json");
    if (mf) {
      try {
        mf >> manifest;
      } catch (const json::exception&) {
        manifest = json::object();  // manifest is advisory; tables decide
      }
    }
  }
  auto table_meta = [&](const std::string& name, const char* field,
                        const std::string& fallback) -> std::string {
    if (manifest.contains("tables") && manifest["tables"].contains(name) &&
        manifest["tables"][name].contains(field)) {
      return manifest["tables"][name][field].get<std::string>();
    }
    return fallback;
  };

  MeasurementSet set;
  const std::array<std::string, 5> names = {"Z", "X0", "X1", "X2", "X3"};
  for (int i = 0; i < 5; ++i) {
    const auto& name = names[static_cast<std::size_t>(i)];
    const auto path = counts_dir / count_table_filename(name);
    if (!std::filesystem::exists(path)) {
      throw DataError("missing count table '" + path.string() +
                      "' (certification needs Z and X0..X3)");
    }
    MeasuredTable table;
    table.counts = read_count_table(path);
    table.dist = estimate_distribution(*table.counts);
    table.source = table_meta(name, "source", "external");
    table.model = table_meta(name, "model", "unspecified");
    table.file = path.string();
    if (i == 0) {
      set.z = table;
    } else {
      set.x[static_cast<std::size_t>(i - 1)] = table;
    }
  }
  return set;
}

CertificationReport run_certify(const MeasurementSet& set) { return certify(set); }

}  // namespace mcfsim
