#include <benchmark/benchmark.h>

#include <random>

#include "mcfsim/certify.hpp"
#include "mcfsim/counting.hpp"
#include "mcfsim/drift.hpp"
#include "mcfsim/source.hpp"
#include "mcfsim/state.hpp"

using namespace mcfsim;

namespace {

PhaseVector bench_phases(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> un(0.0, 2.0 * M_PI);
  return {un(rng), un(rng), un(rng), un(rng)};
}

MeasurementSet exact_set(const TwoPhotonState& state) {
  MeasurementSet set;
  const auto z = MeasurementBasis::named("Z");
  set.z.dist = born_distribution(state, z.matrix(), z.matrix());
  for (int b = 0; b < 4; ++b) {
    const auto basis = MeasurementBasis::named("X" + std::to_string(b));
    set.x[std::size_t(b)].dist = born_distribution(state, basis.matrix(), basis.matrix());
  }
  return set;
}

void BM_CopropagationDistribution(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto phases = bench_phases(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(copropagation_distribution(phases));
  }
}
BENCHMARK(BM_CopropagationDistribution);

void BM_BornDistributionPure(benchmark::State& state) {
  const auto psi = ideal_state();
  const auto basis = MeasurementBasis::named("X1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(born_distribution(psi, basis.matrix(), basis.matrix()));
  }
}
BENCHMARK(BM_BornDistributionPure);

void BM_BornDistributionMixed(benchmark::State& state) {
  const auto rho = werner_state(0.775);
  const auto basis = MeasurementBasis::named("X1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(born_distribution(rho, basis.matrix(), basis.matrix()));
  }
}
BENCHMARK(BM_BornDistributionMixed);

void BM_SampleCounts(benchmark::State& state) {
  const auto d = copropagation_distribution({0, 0, 0, 0});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_counts(d, 14000.0, 10.0, 1.0, ++seed));
  }
}
BENCHMARK(BM_SampleCounts);

void BM_EstimateDistribution(benchmark::State& state) {
  const auto rec = sample_counts(copropagation_distribution({0, 0, 0, 0}), 14000.0, 10.0, 1.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_distribution(rec));
  }
}
BENCHMARK(BM_EstimateDistribution);

void BM_MubFidelity(benchmark::State& state) {
  const auto set = exact_set(werner_state(0.775));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mub_fidelity(set));
  }
}
BENCHMARK(BM_MubFidelity);

void BM_SteeringValue(benchmark::State& state) {
  const auto set = exact_set(werner_state(0.775));
  for (auto _ : state) {
    benchmark::DoNotOptimize(steering_value(set.z, set.x[0], Conditioned::B));
  }
}
BENCHMARK(BM_SteeringValue);

void BM_FullCertification(benchmark::State& state) {
  const auto set = exact_set(werner_state(0.775));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(set));
  }
}
BENCHMARK(BM_FullCertification);

void BM_DriftTrace(benchmark::State& state) {
  const auto model = DriftModel::typical(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_drift(model, 4800.0, 5.0, 11));
  }
}
BENCHMARK(BM_DriftTrace);

void BM_Spectrum(benchmark::State& state) {
  const auto model = DriftModel::typical(3);
  const auto trace = simulate_drift(model, 4800.0, 5.0, 11);
  const auto series = coincidence_series(trace, 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(series, 5.0));
  }
  state.SetComplexityN(static_cast<std::int64_t>(series.size()));
}
BENCHMARK(BM_Spectrum);

}  // namespace

BENCHMARK_MAIN();
