#include "mcfsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcfsim {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(trimmed(field));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
  throw DataError(name + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& name, int line, const std::string& field,
                  const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(name, line, std::string("cannot parse ") + what + " from '" + field + "'");
  }
}

std::int64_t parse_count(const std::string& name, int line, const std::string& field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(name, line, "cannot parse count from '" + field + "'");
  }
  if (v < 0) fail(name, line, "count must be nonnegative");
  return v;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical output everywhere
  if (!out) {
    throw DataError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path.string() + "'");
  }
  return in;
}

}  // namespace

void write_count_table(std::ostream& out, const CountRecord& record) {
  out << "j,k,C,a\n";
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      out << j << ',' << k << ',' << record.counts(j, k) << ','
          << format_real(record.accidentals(j, k)) << '\n';
    }
  }
}

void write_count_table(const std::filesystem::path& path, const CountRecord& record) {
  auto out = open_out(path);
  write_count_table(out, record);
}

CountRecord read_count_table(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) fail(name, 1, "empty file");
  ++lineno;
  if (trimmed(line) != "j,k,C,a") {
    fail(name, lineno, "expected header 'j,k,C,a', got '" + trimmed(line) + "'");
  }

  CountRecord record;
  std::array<std::array<bool, kCores>, kCores> seen{};
  int rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trimmed(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      fail(name, lineno,
           "expected 4 fields (j,k,C,a), got " + std::to_string(fields.size()));
    }
    const auto j = static_cast<int>(parse_count(name, lineno, fields[0]));
    const auto k = static_cast<int>(parse_count(name, lineno, fields[1]));
    if (j >= kCores || k >= kCores) {
      fail(name, lineno, "detector indices must lie in [0,3]");
    }
    if (seen[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) {
      fail(name, lineno,
           "duplicate entry for pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
    seen[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = true;
    record.counts(j, k) = parse_count(name, lineno, fields[2]);
    const double a = parse_real(name, lineno, fields[3], "accidentals");
    if (a < 0) fail(name, lineno, "accidentals must be nonnegative");
    record.accidentals(j, k) = a;
    ++rows;
  }
  if (rows != kCores * kCores) {
    throw DataError(name + ": expected 16 rows, got " + std::to_string(rows));
  }
  return record;
}

CountRecord read_count_table(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_count_table(in, path.string());
}

void write_distribution(std::ostream& out, const JointDistribution& dist) {
  out << "j,k,P,sigma\n";
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      out << j << ',' << k << ',' << format_real(dist.p(j, k)) << ','
          << format_real(dist.sigma(j, k)) << '\n';
    }
  }
}

void write_distribution(const std::filesystem::path& path, const JointDistribution& dist) {
  auto out = open_out(path);
  write_distribution(out, dist);
}

void write_series(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("series columns differ in length");
  }
  auto out = open_out(path);
  out << header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_real(x[i]) << ',' << format_real(y[i]) << '\n';
  }
}

}  // namespace mcfsim
