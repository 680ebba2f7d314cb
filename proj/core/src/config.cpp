#include "mcfsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mcfsim {

namespace {

struct Cursor {
  std::string name;
  int line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + what);
  }
};

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const Cursor& at, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    at.fail("cannot parse number from '" + v + "'");
  }
}

std::uint64_t to_u64(const Cursor& at, const std::string& v) {
  try {
    if (v.empty() || v[0] == '-') throw std::invalid_argument("");
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    at.fail("cannot parse unsigned integer from '" + v + "'");
  }
}

int to_int(const Cursor& at, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    at.fail("cannot parse integer from '" + v + "'");
  }
}

std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    const std::string t = trimmed(item);
    if (!t.empty()) items.push_back(t);
  }
  return items;
}

std::vector<double> to_doubles(const Cursor& at, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : to_list(v)) out.push_back(to_double(at, item));
  return out;
}

template <std::size_t N>
std::array<double, N> to_fixed(const Cursor& at, const std::string& v) {
  const auto items = to_doubles(at, v);
  if (items.size() != N) {
    at.fail("expected " + std::to_string(N) + " comma-separated values, got " +
            std::to_string(items.size()));
  }
  std::array<double, N> out{};
  std::copy(items.begin(), items.end(), out.begin());
  return out;
}

using KeyHandler = std::function<void(const Cursor&, const std::string&)>;
using SectionSchema = std::map<std::string, KeyHandler>;

}  // namespace

DriftModel DriftConfig::build_model(std::uint64_t seed) const {
  if (use_typical) {
    return DriftModel::typical(seed);
  }
  DriftModel model;
  model.walk_rate_rad2_per_s = walk_rate_rad2_per_s;
  const std::size_t n = periods_s.size();
  if (amplitudes_rad.size() != n || (!cores.empty() && cores.size() != n) ||
      (!offsets_rad.empty() && offsets_rad.size() != n)) {
    throw ConfigError("[drift] sinusoid lists must have matching lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    SinusoidalDrift s;
    s.period_s = periods_s[i];
    s.amplitude_rad = amplitudes_rad[i];
    s.core = cores.empty() ? static_cast<int>(i % kCores) : cores[i];
    s.phase_offset_rad = offsets_rad.empty() ? 0.0 : offsets_rad[i];
    model.sinusoids.push_back(s);
  }
  return model;
}

ExperimentConfig parse_experiment_config(std::istream& in, const std::string& name) {
  ExperimentConfig cfg;

  const SectionSchema source_schema = {
      {"pump_weights", [&](const Cursor& at, const std::string& v) {
         cfg.source.pump_weights = to_fixed<4>(at, v);
       }},
      {"core_phases", [&](const Cursor& at, const std::string& v) {
         cfg.source.core_phases = to_fixed<4>(at, v);
       }},
      {"visibility", [&](const Cursor& at, const std::string& v) {
         cfg.source.visibility = to_double(at, v);
       }},
      {"pair_rate", [&](const Cursor& at, const std::string& v) {
         cfg.source.pair_rate = to_double(at, v);
       }},
      {"pump_power_mw", [&](const Cursor& at, const std::string& v) {
         cfg.source.pump_power_mw = to_double(at, v);
       }},
      {"bandwidth_nm", [&](const Cursor& at, const std::string& v) {
         cfg.source.bandwidth_nm = to_double(at, v);
       }},
  };

  const SectionSchema measurement_schema = {
      {"bases", [&](const Cursor&, const std::string& v) {
         cfg.measurement.bases = to_list(v);
       }},
      {"custom_phases", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.custom_phases = to_fixed<4>(at, v);
       }},
      {"integration_time_s", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.integration_time_s = to_double(at, v);
       }},
      {"coincidence_efficiency", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.coincidence_efficiency = to_double(at, v);
       }},
      {"accidental_rate_hz", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.accidental_rate_hz = to_double(at, v);
       }},
      {"accidental_rates_hz", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.accidental_rates_hz = to_fixed<16>(at, v);
       }},
      {"transmittance", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.transmittance = to_fixed<4>(at, v);
       }},
      {"model", [&](const Cursor& at, const std::string& v) {
         if (v == "tensor") {
           cfg.measurement.model = XBasisModel::Tensor;
         } else if (v == "copropagation") {
           cfg.measurement.model = XBasisModel::Copropagation;
         } else {
           at.fail("model must be 'tensor' or 'copropagation', got '" + v + "'");
         }
       }},
      {"seed", [&](const Cursor& at, const std::string& v) {
         cfg.measurement.seed = to_u64(at, v);
       }},
  };

  const SectionSchema drift_schema = {
      {"model", [&](const Cursor& at, const std::string& v) {
         if (v == "typical") {
           cfg.drift.use_typical = true;
         } else if (v == "explicit") {
           cfg.drift.use_typical = false;
         } else {
           at.fail("drift model must be 'typical' or 'explicit'");
         }
       }},
      {"periods_s", [&](const Cursor& at, const std::string& v) {
         cfg.drift.periods_s = to_doubles(at, v);
       }},
      {"amplitudes_rad", [&](const Cursor& at, const std::string& v) {
         cfg.drift.amplitudes_rad = to_doubles(at, v);
       }},
      {"cores", [&](const Cursor& at, const std::string& v) {
         cfg.drift.cores.clear();
         for (const auto& item : to_list(v)) cfg.drift.cores.push_back(to_int(at, item));
       }},
      {"offsets_rad", [&](const Cursor& at, const std::string& v) {
         cfg.drift.offsets_rad = to_doubles(at, v);
       }},
      {"walk_rate_rad2_per_s", [&](const Cursor& at, const std::string& v) {
         cfg.drift.walk_rate_rad2_per_s = to_double(at, v);
       }},
      {"duration_s", [&](const Cursor& at, const std::string& v) {
         cfg.drift.duration_s = to_double(at, v);
       }},
      {"dt_s", [&](const Cursor& at, const std::string& v) {
         cfg.drift.dt_s = to_double(at, v);
       }},
      {"pair", [&](const Cursor& at, const std::string& v) {
         const auto items = to_list(v);
         if (items.size() != 2) at.fail("pair expects two core indices");
         cfg.drift.pair_j = to_int(at, items[0]);
         cfg.drift.pair_k = to_int(at, items[1]);
       }},
  };

  const SectionSchema linkbudget_schema = {
      {"brightness", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.brightness = to_double(at, v);
       }},
      {"pump_power_mw", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.pump_power_mw = to_double(at, v);
       }},
      {"bandwidth_nm", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.bandwidth_nm = to_double(at, v);
       }},
      {"attenuation_db_per_km", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.attenuation_db_per_km = to_double(at, v);
       }},
      {"arms", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.arms = to_int(at, v);
       }},
      {"coincidence_efficiency", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.coincidence_efficiency = to_double(at, v);
       }},
      {"min_rate_hz", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget.min_rate_hz = to_double(at, v);
       }},
      {"distance_km", [&](const Cursor& at, const std::string& v) {
         cfg.linkbudget_distance_km = to_double(at, v);
       }},
  };

  const SectionSchema output_schema = {
      {"dir", [&](const Cursor&, const std::string& v) { cfg.output_dir = v; }},
  };

  const std::map<std::string, const SectionSchema*> sections = {
      {"source", &source_schema},         {"measurement", &measurement_schema},
      {"drift", &drift_schema},           {"linkbudget", &linkbudget_schema},
      {"output", &output_schema},
  };

  Cursor at{name, 0};
  const SectionSchema* current = nullptr;
  std::string current_name;
  std::string line;
  while (std::getline(in, line)) {
    ++at.line;
    std::string text = trimmed(line);
    const auto comment = text.find('#');
    if (comment != std::string::npos) text = trimmed(text.substr(0, comment));
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') at.fail("unterminated section header");
      current_name = trimmed(text.substr(1, text.size() - 2));
      const auto it = sections.find(current_name);
      if (it == sections.end()) at.fail("unknown section [" + current_name + "]");
      current = it->second;
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value'");
    if (current == nullptr) at.fail("key outside any section");
    const std::string key = trimmed(text.substr(0, eq));
    const std::string value = trimmed(text.substr(eq + 1));
    const auto it = current->find(key);
    if (it == current->end()) {
      at.fail("unknown key '" + key + "' in [" + current_name + "]");
    }
    it->second(at, value);
  }

  // cross-key checks
  for (const auto& b : cfg.measurement.bases) {
    if (b == "custom") {
      if (!cfg.measurement.custom_phases) {
        throw ConfigError(name + ": bases include 'custom' but no custom_phases given");
      }
    } else {
      basis_id_from_name(b);  // throws ConfigError on bad names
    }
  }
  if (!(cfg.source.visibility >= 0.0 && cfg.source.visibility <= 1.0)) {
    throw ConfigError(name + ": [source] visibility must lie in [0,1]");
  }
  for (double t : cfg.measurement.transmittance) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError(name + ": [measurement] transmittance must lie in [0,1]");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  return parse_experiment_config(in, path.string());
}

}  // namespace mcfsim
