// mcfsim: simulate a multi-core-fiber entangled photon-pair experiment and
// certify its output.
//
// Subcommands: simulate, certify, drift, linkbudget, report.
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mcfsim/certify.hpp"
#include "mcfsim/config.hpp"
#include "mcfsim/csv.hpp"
#include "mcfsim/drift.hpp"
#include "mcfsim/experiment.hpp"
#include "mcfsim/linkbudget.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

mcfsim::ExperimentConfig load_config(const CommonArgs& args) {
  if (args.config_path.empty()) {
    return mcfsim::ExperimentConfig{};  // defaults
  }
  return mcfsim::load_experiment_config(args.config_path);
}

std::uint64_t effective_seed(const CommonArgs& args, const mcfsim::ExperimentConfig& cfg) {
  return args.seed.value_or(cfg.measurement.seed);
}

fs::path effective_out(const CommonArgs& args, const mcfsim::ExperimentConfig& cfg) {
  return args.out_dir.value_or(cfg.output_dir);
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw mcfsim::DataError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
}

int do_simulate(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto seed = effective_seed(args, cfg);
  const auto out = effective_out(args, cfg);
  const auto artifacts = mcfsim::run_simulate(cfg, out, seed);
  std::cout << "simulate: seed " << seed << ", wrote " << artifacts.files.size()
            << " files to " << artifacts.dir.string() << "\n";
  return 0;
}

int do_certify(const std::string& counts_dir, const CommonArgs& args) {
  const auto set = mcfsim::load_measurement_set(counts_dir);
  const auto report = mcfsim::run_certify(set);
  const fs::path out = args.out_dir.value_or(counts_dir);
  fs::create_directories(out);
  write_text_file(out / "report.json", mcfsim::report_to_json(report));
  write_text_file(out / "report.txt", mcfsim::report_to_text(report));
  std::cout << mcfsim::report_to_text(report);
  std::cout << "report written to " << (out / "report.json").string() << "\n";
  return 0;
}

int do_drift(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto seed = effective_seed(args, cfg);
  const auto out = effective_out(args, cfg);
  fs::create_directories(out);

  const auto model = cfg.drift.build_model(seed);
  const auto trace = mcfsim::simulate_drift(model, cfg.drift.duration_s, cfg.drift.dt_s, seed);
  const auto series = mcfsim::coincidence_series(trace, cfg.drift.pair_j, cfg.drift.pair_k);
  const auto spec = mcfsim::spectrum(series, cfg.drift.dt_s);
  const auto windowed =
      mcfsim::spectrum(series, cfg.drift.dt_s, mcfsim::SpectrumWindow::Hann);

  std::vector<double> times(series.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = static_cast<double>(i) * cfg.drift.dt_s;
  }
  mcfsim::write_series(out / "drift_series.csv", "t_s,coincidence_probability", times, series);
  mcfsim::write_series(out / "drift_spectrum.csv", "frequency_hz,magnitude",
                       spec.frequency_hz, spec.magnitude);

  std::printf("drift: pair (%d,%d), %zu samples at dt = %g s\n", cfg.drift.pair_j,
              cfg.drift.pair_k, series.size(), cfg.drift.dt_s);
  std::printf("  dc (mean probability)      %.6f\n", spec.dc);
  std::printf("  dominant component         %.6f Hz\n", spec.dominant_frequency_hz());
  std::printf("  power below 8 mHz          %.2f %%  (Hann windowed; magnitudes arbitrary)\n",
              windowed.total_power() > 0
                  ? 100.0 * windowed.power_below(0.008) / windowed.total_power()
                  : 100.0);
  std::cout << "wrote " << (out / "drift_series.csv").string() << ", "
            << (out / "drift_spectrum.csv").string() << "\n";
  return 0;
}

int do_linkbudget(const mcfsim::LinkBudget& budget, double distance_km) {
  std::printf("link budget: %g pairs/(s mW nm), %g mW, %g nm, efficiency %g\n",
              budget.brightness, budget.pump_power_mw, budget.bandwidth_nm,
              budget.coincidence_efficiency);
  std::printf("  attenuation %g dB/km over %d arm(s)\n", budget.attenuation_db_per_km,
              budget.arms);
  std::printf("  rate at %.3f km: %.9g pairs/s\n", distance_km,
              mcfsim::rate_at_distance(budget, distance_km));
  if (budget.min_rate_hz > 0.0) {
    const auto result = mcfsim::max_distance(budget);
    if (result.threshold_above_source) {
      std::printf("  max distance at threshold %g pairs/s: 0 km (threshold above source rate)\n",
                  budget.min_rate_hz);
    } else {
      std::printf("  max distance at threshold %g pairs/s: %.6f km\n", budget.min_rate_hz,
                  result.km);
    }
  }
  return 0;
}

int do_report(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto seed = effective_seed(args, cfg);
  const auto out = effective_out(args, cfg);

  const auto artifacts = mcfsim::run_simulate(cfg, out, seed);
  const auto set = mcfsim::load_measurement_set(out);
  const auto report = mcfsim::run_certify(set);
  write_text_file(out / "report.json", mcfsim::report_to_json(report));
  write_text_file(out / "report.txt", mcfsim::report_to_text(report));

  CommonArgs drift_args = args;
  drift_args.out_dir = out.string();
  do_drift(drift_args);

  std::cout << mcfsim::report_to_text(report);
  do_linkbudget(cfg.linkbudget, cfg.linkbudget_distance_km);
  std::cout << "full run written to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-core-fiber entangled photon-pair simulator and certifier"};
  app.require_subcommand(1);

  CommonArgs args;

  auto add_common = [&](CLI::App* sub, bool with_config = true) {
    if (with_config) {
      sub->add_option("--config", args.config_path, "experiment config file")
          ->check(CLI::ExistingFile);
    }
    sub->add_option("--seed", [&args](const CLI::results_t& res) {
      try {
        if (res[0].empty() || res[0][0] == '-') return false;
        std::size_t used = 0;
        args.seed = std::stoull(res[0], &used);
        return used == res[0].size();
      } catch (const std::exception&) {
        return false;
      }
    }, "seed override");
    sub->add_option("--out", [&args](const CLI::results_t& res) {
      args.out_dir = res[0];
      return true;
    }, "output directory override");
  };

  auto* simulate = app.add_subcommand(
      "simulate", "sample count tables for the five mutually unbiased bases");
  add_common(simulate);

  std::string counts_dir;
  auto* certifycmd =
      app.add_subcommand("certify", "run entanglement certification on count tables");
  certifycmd->add_option("--counts", counts_dir, "directory with counts_Z.csv .. counts_X3.csv")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_common(certifycmd);

  auto* drift = app.add_subcommand("drift", "simulate slow phase drift and its spectrum");
  add_common(drift);

  auto* linkbudget =
      app.add_subcommand("linkbudget", "distributable-entanglement distance from brightness");
  mcfsim::LinkBudget budget;
  double distance_km = 75.0;
  linkbudget->add_option("--brightness", budget.brightness, "pairs/(s mW nm)")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--pump-power-mw", budget.pump_power_mw, "pump power per core, mW")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--bandwidth-nm", budget.bandwidth_nm, "filter bandwidth, nm")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--attenuation-db-km", budget.attenuation_db_per_km, "fiber loss")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--arms", budget.arms, "fiber arms carrying loss (1 or 2)")
      ->check(CLI::Range(1, 2));
  linkbudget->add_option("--efficiency", budget.coincidence_efficiency,
                         "coincidence detection efficiency")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--min-rate", budget.min_rate_hz,
                         "detectable-rate threshold, pairs/s")
      ->check(CLI::NonNegativeNumber);
  linkbudget->add_option("--distance", distance_km, "distance for the rate query, km")
      ->check(CLI::NonNegativeNumber);

  auto* report = app.add_subcommand("report", "simulate + certify + drift + link budget");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return do_simulate(args);
    if (certifycmd->parsed()) return do_certify(counts_dir, args);
    if (drift->parsed()) return do_drift(args);
    if (linkbudget->parsed()) return do_linkbudget(budget, distance_km);
    if (report->parsed()) return do_report(args);
  } catch (const mcfsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mcfsim::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
