#include "mcfsim/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

namespace mcfsim {

namespace {

void check_budget(const LinkBudget& b) {
  if (b.brightness < 0 || b.pump_power_mw < 0 || b.bandwidth_nm < 0 ||
      b.attenuation_db_per_km < 0 || b.coincidence_efficiency < 0 || b.min_rate_hz < 0) {
    throw std::invalid_argument("link budget fields must be nonnegative");
  }
  if (b.arms != 1 && b.arms != 2) {
    throw std::invalid_argument("link budget arms must be 1 or 2");
  }
}

double source_rate(const LinkBudget& b) {
  return b.brightness * b.pump_power_mw * b.bandwidth_nm * b.coincidence_efficiency;
}

}  // namespace

double rate_at_distance(const LinkBudget& budget, double km) {
  check_budget(budget);
  if (km < 0) {
    throw std::invalid_argument("distance must be nonnegative");
  }
  const double loss_db = static_cast<double>(budget.arms) * budget.attenuation_db_per_km * km;
  return source_rate(budget) * std::pow(10.0, -loss_db / 10.0);
}

MaxDistanceResult max_distance(const LinkBudget& budget) {
  check_budget(budget);
  if (!(budget.attenuation_db_per_km > 0.0)) {
    throw std::invalid_argument("max_distance needs positive attenuation");
  }
  if (!(budget.min_rate_hz > 0.0)) {
    throw std::invalid_argument("max_distance needs a positive min_rate threshold");
  }
  MaxDistanceResult result;
  const double r0 = source_rate(budget);
  if (budget.min_rate_hz >= r0) {
    result.km = 0.0;
    result.threshold_above_source = budget.min_rate_hz > r0;
    return result;
  }
  result.km = 10.0 * std::log10(r0 / budget.min_rate_hz) /
              (static_cast<double>(budget.arms) * budget.attenuation_db_per_km);
  return result;
}

}  // namespace mcfsim
