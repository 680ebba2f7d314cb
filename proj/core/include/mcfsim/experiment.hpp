#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcfsim/certify.hpp"
#include "mcfsim/config.hpp"

namespace mcfsim {

struct SimulationArtifacts {
  std::filesystem::path dir;
  std::vector<std::string> files;  // relative file names written
  MeasurementSet set;              // sampled tables for the five standard bases
};

/// Runs the five-basis experiment: exact probability tables and sampled
/// count tables per configured basis, written to out_dir along with a
/// manifest recording seeds and models. Deterministic for a fixed seed.
SimulationArtifacts run_simulate(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir,
                                 std::uint64_t seed);

/// Loads the five standard count tables (counts_Z.csv, counts_X0.csv ...)
/// from a directory, estimates distributions, and picks up provenance from
/// manifest.json when present. Throws DataError on missing/malformed input.
MeasurementSet load_measurement_set(const std::filesystem::path& counts_dir);

/// Certification over a loaded measurement set (see certify()).
CertificationReport run_certify(const MeasurementSet& set);

/// Conventional file name for a basis count table.
std::string count_table_filename(const std::string& basis_name);

}  // namespace mcfsim
