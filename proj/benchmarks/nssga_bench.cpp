#include <benchmark/benchmark.h>

#include "nssga/calibration.hpp"
#include "nssga/data_ingest.hpp"
#include "nssga/sobol.hpp"

namespace {

using namespace nssga;

const TermStructure& first_ois_day() {
  static const TermStructure market = ois_to_term_structures(
      parse_ois_csv(read_text_file(std::string(NSSGA_DATA_DIR) + "/eur_ois_2011-09.csv")))[0];
  return market;
}

void BM_SpotRate(benchmark::State& state) {
  const CurveParams p = CurveParams::nss(0.0214, -0.0126, -0.0361, 0.0225, 1.54, 8.15);
  double tau = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spot_rate(p, Tenor(tau)));
    tau = tau > 50.0 ? 0.05 : tau + 0.37;
  }
}
BENCHMARK(BM_SpotRate);

void BM_CurveObjective(benchmark::State& state) {
  const CurveObjective objective(ModelKind::NSS, first_ois_day());
  const std::vector<double> gene{0.0214, -0.0126, -0.0361, 0.0225, 1.54, 8.15};
  for (auto _ : state) benchmark::DoNotOptimize(objective(gene));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(first_ois_day().size()));
}
BENCHMARK(BM_CurveObjective);

void BM_SobolNext(benchmark::State& state) {
  SobolSequence sobol(6);
  for (auto _ : state) benchmark::DoNotOptimize(sobol.next().data());
}
BENCHMARK(BM_SobolNext);

// Cost per generation of a full calibration at the given population size.
void BM_Generations(benchmark::State& state) {
  GaConfig config;
  config.population_size = static_cast<std::size_t>(state.range(0));
  config.max_generations = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(calibrate(first_ois_day(), ModelKind::NSS, presets::ois_nss(), config));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Generations)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
