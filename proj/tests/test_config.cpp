#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mcfsim/config.hpp"

using namespace mcfsim;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment_config(in, "test.ini");
}

}  // namespace

TEST_CASE("defaults survive an empty config") {
  const auto cfg = parse("");
  CHECK(cfg.source.pair_rate == 350000.0);
  CHECK(cfg.source.pump_power_mw == 1.0);
  CHECK(cfg.source.visibility == 1.0);
  CHECK(cfg.measurement.bases.size() == 5);
  CHECK(cfg.measurement.integration_time_s == 5.0);
  CHECK(cfg.measurement.coincidence_efficiency == 0.04);
  CHECK(cfg.drift.dt_s == 5.0);
  CHECK(cfg.linkbudget.attenuation_db_per_km == 0.4);
  CHECK(cfg.output_dir == "out");
}

TEST_CASE("a full config parses") {
  const auto cfg = parse(R"(
# experiment description
[source]
pump_weights = 0.2379, 0.2488, 0.2719, 0.2414
core_phases = 0, 0, 0.1, 0
visibility = 0.775
pair_rate = 350000
pump_power_mw = 1.0
bandwidth_nm = 1.0

[measurement]
bases = Z, X0, X1, X2, X3
integration_time_s = 10
coincidence_efficiency = 0.04
accidental_rate_hz = 2.5
transmittance = 0.97, 0.97, 0.95, 0.97
model = tensor
seed = 99

[drift]
model = explicit
periods_s = 300, 260
amplitudes_rad = 0.3, 0.2
cores = 1, 2
offsets_rad = 0.0, 1.2
walk_rate_rad2_per_s = 1e-5
duration_s = 2400
dt_s = 5
pair = 0, 1

[linkbudget]
brightness = 350000
attenuation_db_per_km = 0.4
arms = 2
min_rate_hz = 0.35
distance_km = 75

[output]
dir = results
)");
  CHECK(cfg.source.pump_weights[2] == doctest::Approx(0.2719));
  CHECK(cfg.source.visibility == doctest::Approx(0.775));
  CHECK(cfg.measurement.seed == 99);
  CHECK(cfg.measurement.accidental_rate_hz == doctest::Approx(2.5));
  CHECK_FALSE(cfg.measurement.accidental_rates_hz.has_value());
  CHECK(cfg.measurement.transmittance[2] == doctest::Approx(0.95));
  CHECK_FALSE(cfg.drift.use_typical);
  CHECK(cfg.drift.periods_s.size() == 2);
  CHECK(cfg.drift.pair_k == 1);
  CHECK(cfg.linkbudget.min_rate_hz == doctest::Approx(0.35));
  CHECK(cfg.linkbudget_distance_km == 75.0);
  CHECK(cfg.output_dir == "results");

  const auto model = cfg.drift.build_model(1);
  REQUIRE(model.sinusoids.size() == 2);
  CHECK(model.sinusoids[1].core == 2);
  CHECK(model.sinusoids[1].phase_offset_rad == doctest::Approx(1.2));
}

TEST_CASE("unknown keys are rejected with file and line") {
  try {
    parse("[source]\nvisibility = 0.9\ntypo_key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("test.ini:3") != std::string::npos);
    CHECK(msg.find("typo_key") != std::string::npos);
    CHECK(msg.find("[source]") != std::string::npos);
  }
}

TEST_CASE("unknown sections are rejected") {
  CHECK_THROWS_AS(parse("[detector]\nx = 1\n"), ConfigError);
}

TEST_CASE("keys outside a section are rejected") {
  CHECK_THROWS_AS(parse("visibility = 0.9\n"), ConfigError);
}

TEST_CASE("malformed values carry location info") {
  try {
    parse("[source]\nvisibility = high\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.ini:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("[source]\npump_weights = 0.5, 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[measurement]\nmodel = magic\n"), ConfigError);
  CHECK_THROWS_AS(parse("[measurement]\nseed = -4\n"), ConfigError);
}

TEST_CASE("semantic validation") {
  CHECK_THROWS_AS(parse("[source]\nvisibility = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[measurement]\ntransmittance = 1, 1, 2, 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[measurement]\nbases = Z, Q1\n"), ConfigError);
  // custom basis requires phases
  CHECK_THROWS_AS(parse("[measurement]\nbases = Z, custom\n"), ConfigError);
  CHECK_NOTHROW(parse("[measurement]\nbases = Z, custom\ncustom_phases = 0, 1.2, 0, 0\n"));
}

TEST_CASE("per-pair accidental rates parse as a 16-entry table") {
  const auto cfg = parse(
      "[measurement]\n"
      "accidental_rates_hz = 1,2,3,4, 5,6,7,8, 9,10,11,12, 13,14,15,16\n");
  REQUIRE(cfg.measurement.accidental_rates_hz.has_value());
  CHECK((*cfg.measurement.accidental_rates_hz)[0] == 1.0);
  CHECK((*cfg.measurement.accidental_rates_hz)[15] == 16.0);
  CHECK_THROWS_AS(parse("[measurement]\naccidental_rates_hz = 1,2,3\n"), ConfigError);
}

TEST_CASE("drift lists must align") {
  const auto cfg = parse("[drift]\nmodel = explicit\nperiods_s = 300\namplitudes_rad = 0.1, 0.2\n");
  CHECK_THROWS_AS(cfg.drift.build_model(1), ConfigError);
}

TEST_CASE("load_experiment_config reports missing files") {
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/config.ini"), ConfigError);
}
