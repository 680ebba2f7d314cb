#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcfsim/counting.hpp"
#include "mcfsim/distribution.hpp"

namespace mcfsim {

// Count tables interchange format: header "j,k,C,a", then one row per
// detector pair in row-major order. The same format is accepted for
// externally recorded data.

void write_count_table(std::ostream& out, const CountRecord& record);
void write_count_table(const std::filesystem::path& path, const CountRecord& record);

/// Strict parse; throws DataError naming the offending line and field.
CountRecord read_count_table(std::istream& in, const std::string& name = "<stream>");
CountRecord read_count_table(const std::filesystem::path& path);

// Probability tables: header "j,k,P,sigma", rows in row-major order.
void write_distribution(std::ostream& out, const JointDistribution& dist);
void write_distribution(const std::filesystem::path& path, const JointDistribution& dist);

// Two-column series files (e.g. "t_s,value" or "frequency_hz,magnitude").
void write_series(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mcfsim
