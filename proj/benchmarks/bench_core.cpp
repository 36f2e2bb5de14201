#include <benchmark/benchmark.h>

#include "udn/critical_density.hpp"
#include "udn/interference_field.hpp"
#include "udn/linklevel.hpp"
#include "udn/mitigation.hpp"
#include "udn/random.hpp"

namespace {

const udn::PathlossModel kBpmDual =
    udn::PathlossModel::make(udn::PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
const udn::PathlossModel kUpmDual =
    udn::PathlossModel::make(udn::PathlossFamily::UnboundedMultiSlope, {1.0}, {2.0, 4.0});

void BM_GainBounded(benchmark::State& state) {
  double d = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kBpmDual.gain(d));
    d = d < 1e4 ? d * 1.1 : 0.01;
  }
}
BENCHMARK(BM_GainBounded);

void BM_GainUnbounded(benchmark::State& state) {
  double d = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kUpmDual.gain(d));
    d = d < 1e4 ? d * 1.1 : 0.01;
  }
}
BENCHMARK(BM_GainUnbounded);

void BM_PoissonDraw(benchmark::State& state) {
  udn::RandomStream stream(1, "bench.poisson", 0);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stream.poisson(mean));
}
BENCHMARK(BM_PoissonDraw)->Arg(50)->Arg(500)->Arg(2000);

void BM_SinrTrial(benchmark::State& state) {
  udn::SimConfig config;
  config.model = kBpmDual;
  config.density_per_km2 = static_cast<double>(state.range(0));
  std::uint64_t t = 0;
  for (auto _ : state) {
    udn::RandomStream stream(config.seed, udn::kTrialStreamTag, t++);
    benchmark::DoNotOptimize(udn::sinr_trial(config, stream));
  }
}
BENCHMARK(BM_SinrTrial)->Arg(10000)->Arg(316000)->Arg(1000000);

void BM_SicDecode(benchmark::State& state) {
  udn::RandomStream stream(7, "bench.profile", 0);
  udn::SignalProfile profile{1.0, {}};
  for (int i = 0; i < state.range(0); ++i)
    profile.interferers.push_back(std::exp(stream.uniform(-4.0, 4.0)));
  for (auto _ : state) benchmark::DoNotOptimize(udn::sic_decode(profile, 1.0));
}
BENCHMARK(BM_SicDecode)->Arg(16)->Arg(128);

void BM_IcaDecode(benchmark::State& state) {
  udn::RandomStream stream(7, "bench.profile", 1);
  udn::SignalProfile profile{1.0, {}};
  for (int i = 0; i < state.range(0); ++i)
    profile.interferers.push_back(std::exp(stream.uniform(-4.0, 4.0)));
  for (auto _ : state) benchmark::DoNotOptimize(udn::ica_decode(profile, 1.0, 2));
}
BENCHMARK(BM_IcaDecode)->Arg(16)->Arg(128);

void BM_RasterRow(benchmark::State& state) {
  udn::HeatmapConfig config;
  config.tx_density_per_km2 = 2.5e5;
  config.resolution = static_cast<int>(state.range(0));
  config.model = udn::PathlossModel::make(udn::PathlossFamily::BoundedMultiSlope, {12.5},
                                          {2.0, 4.0});
  for (auto _ : state) {
    const udn::Raster raster = udn::interference_field(config, 1);
    benchmark::DoNotOptimize(raster.values_dbm.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RasterRow)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
