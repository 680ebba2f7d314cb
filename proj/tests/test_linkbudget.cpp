#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcfsim/linkbudget.hpp"

using namespace mcfsim;

TEST_CASE("rate at zero distance is the full source rate") {
  LinkBudget b;  // 350000 pairs/(s mW nm), 1 mW, 1 nm, efficiency 1
  CHECK(rate_at_distance(b, 0.0) == doctest::Approx(350000.0).epsilon(1e-12));
}

TEST_CASE("75 km over both arms at 0.4 dB/km leaves 0.35 pairs/s") {
  LinkBudget b;
  const double rate = rate_at_distance(b, 75.0);
  CHECK(rate == doctest::Approx(0.35).epsilon(1e-9));  // 60 dB total loss
}

TEST_CASE("zero attenuation makes the rate distance-independent") {
  LinkBudget b;
  b.attenuation_db_per_km = 0.0;
  CHECK(rate_at_distance(b, 1000.0) == rate_at_distance(b, 0.0));
}

TEST_CASE("max_distance inverts the 75 km example") {
  LinkBudget b;
  b.min_rate_hz = 0.35;
  const auto result = max_distance(b);
  CHECK_FALSE(result.threshold_above_source);
  CHECK(result.km == doctest::Approx(75.0).epsilon(1e-9));
}

TEST_CASE("threshold at the source rate gives zero distance") {
  LinkBudget b;
  b.min_rate_hz = 350000.0;
  const auto result = max_distance(b);
  CHECK(result.km == 0.0);
  CHECK_FALSE(result.threshold_above_source);

  b.min_rate_hz = 400000.0;
  const auto above = max_distance(b);
  CHECK(above.km == 0.0);
  CHECK(above.threshold_above_source);
}

TEST_CASE("single-arm deployment doubles the reach at equal threshold") {
  LinkBudget two;
  two.min_rate_hz = 0.35;
  LinkBudget one = two;
  one.arms = 1;
  CHECK(max_distance(one).km == doctest::Approx(2.0 * max_distance(two).km).epsilon(1e-12));
}

TEST_CASE("rate is strictly decreasing and max_distance is its exact inverse") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    LinkBudget b;
    b.brightness = 1e3 + 1e6 * un(rng);
    b.pump_power_mw = 0.1 + 5.0 * un(rng);
    b.bandwidth_nm = 0.1 + 3.0 * un(rng);
    b.attenuation_db_per_km = 0.05 + un(rng);
    b.arms = (trial % 2) + 1;
    b.coincidence_efficiency = 0.01 + 0.99 * un(rng);

    const double l1 = 200.0 * un(rng);
    const double l2 = l1 + 1.0 + 100.0 * un(rng);
    CHECK(rate_at_distance(b, l2) < rate_at_distance(b, l1));

    b.min_rate_hz = rate_at_distance(b, l2);
    CHECK(max_distance(b).km == doctest::Approx(l2).epsilon(1e-9));
  }
}

TEST_CASE("budget validation") {
  LinkBudget b;
  b.arms = 3;
  CHECK_THROWS_AS(rate_at_distance(b, 1.0), std::invalid_argument);
  b.arms = 2;
  b.brightness = -1.0;
  CHECK_THROWS_AS(rate_at_distance(b, 1.0), std::invalid_argument);
  b.brightness = 350000.0;
  CHECK_THROWS_AS(rate_at_distance(b, -1.0), std::invalid_argument);

  LinkBudget c;
  CHECK_THROWS_AS(max_distance(c), std::invalid_argument);  // min_rate unset
  c.min_rate_hz = 1.0;
  c.attenuation_db_per_km = 0.0;
  CHECK_THROWS_AS(max_distance(c), std::invalid_argument);
}
