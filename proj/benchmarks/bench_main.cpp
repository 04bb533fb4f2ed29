#include <benchmark/benchmark.h>

#include "tacbench/baseline_model.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/rng.hpp"
#include "tacbench/simulator.hpp"
#include "tacbench/spatial.hpp"
#include "tacbench/split.hpp"

namespace tb = tacbench;

namespace {

const tb::SensorDataset& calibration() {
  static const tb::SensorDataset ds = [] {
    tb::VirtualSensor sensor(tb::SimSensorSpec{});
    return tb::run_calibration_protocol(sensor, {}, 1);
  }();
  return ds;
}

void BM_Metrics(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  tb::Rng rng(1);
  std::vector<double> y(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rng.uniform(-1.0, 1.0);
    p[i] = y[i] + 0.1 * rng.normal();
  }
  tb::MetricSeries s(y, p);
  for (auto _ : state) benchmark::DoNotOptimize(tb::score(s));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Metrics)->Arg(1000)->Arg(100000);

void BM_KnnPredict(benchmark::State& state) {
  const auto& ds = calibration();
  auto split = tb::split_dataset(ds, {}, 2);
  auto norm = tb::fit_minmax(ds, split);
  auto model = tb::BaselineModel::fit(ds, split, norm);
  auto test = ds.subset(split.ids(tb::Split::Test));
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(test));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * test.size()));
}
BENCHMARK(BM_KnnPredict)->Unit(benchmark::kMillisecond);

void BM_BinnedErrors(benchmark::State& state) {
  const auto& ds = calibration();
  tb::PredictionSet preds;
  tb::Rng rng(3);
  for (const auto& s : ds.samples()) {
    auto p = s.label;
    for (auto& v : p) v += 0.01 * rng.normal();
    preds.insert(s.sample_id, p);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(tb::spatial_report(ds.samples(), preds, ds.manifest(), std::nullopt));
  }
}
BENCHMARK(BM_BinnedErrors)->Unit(benchmark::kMillisecond);

void BM_CalibrationProtocol(benchmark::State& state) {
  for (auto _ : state) {
    tb::VirtualSensor sensor(tb::SimSensorSpec{});
    benchmark::DoNotOptimize(tb::run_calibration_protocol(sensor, {}, 4));
  }
}
BENCHMARK(BM_CalibrationProtocol)->Unit(benchmark::kMillisecond);

void BM_GratingProtocol(benchmark::State& state) {
  for (auto _ : state) {
    tb::VirtualSensor sensor(tb::SimSensorSpec{});
    benchmark::DoNotOptimize(tb::run_grating_protocol(sensor, {}, 5));
  }
}
BENCHMARK(BM_GratingProtocol)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
