// Serial reference vs OpenMP kernels on identical inputs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "foldquad/gap.hpp"
#include "foldquad/metrics.hpp"
#include "foldquad/run.hpp"

using namespace foldquad;

namespace {

Trace noisy_trace(double seconds) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n(0.0, 0.04);
  Trace tr;
  const long steps = std::lround(seconds * 1000.0);
  for (long k = 0; k <= steps; ++k) {
    TraceRow r;
    r.t = 1e-3 * k;
    r.p_des = Eigen::Vector3d(std::sin(r.t), std::cos(0.5 * r.t), -1.2);
    r.p = r.p_des + Eigen::Vector3d(n(rng), n(rng), n(rng));
    tr.push_back(r);
  }
  return tr;
}

std::vector<PoseSample> course_path(int samples) {
  std::vector<PoseSample> path;
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / samples;
    path.push_back({22.0 * s, 6.0 * s, std::sin(6.0 * s), 0.0, kHalfPi * s});
  }
  return path;
}

std::vector<Scenario> batch() {
  std::vector<Scenario> list;
  for (int i = 0; i < 8; ++i) {
    Scenario s = builtin_scenario(i % 2 ? "hover_alpha90" : "hover_alpha0");
    s.duration_s = 2.0;
    s.noise.position_m = 0.02;
    s.seed = 10 + i;
    list.push_back(s);
  }
  return list;
}

void BM_WindowedRmseSerial(benchmark::State& st) {
  const Trace tr = noisy_trace(120.0);
  const MetricsConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(windowed_xy_rmse_serial(tr, cfg));
}
void BM_WindowedRmseParallel(benchmark::State& st) {
  const Trace tr = noisy_trace(120.0);
  const MetricsConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(windowed_xy_rmse(tr, cfg));
}

void BM_ClearanceSerial(benchmark::State& st) {
  const Scenario sc = builtin_scenario("narrow_gap");
  const auto path = course_path(200000);
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        check_gap_clearance_serial(sc.obstacles, path, sc.params));
  }
}
void BM_ClearanceParallel(benchmark::State& st) {
  const Scenario sc = builtin_scenario("narrow_gap");
  const auto path = course_path(200000);
  for (auto _ : st) {
    benchmark::DoNotOptimize(check_gap_clearance(sc.obstacles, path, sc.params));
  }
}

void BM_BatchSerial(benchmark::State& st) {
  const auto list = batch();
  for (auto _ : st) benchmark::DoNotOptimize(run_batch_serial(list));
}
void BM_BatchParallel(benchmark::State& st) {
  const auto list = batch();
  for (auto _ : st) benchmark::DoNotOptimize(run_batch(list));
}

}  // namespace

BENCHMARK(BM_WindowedRmseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowedRmseParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClearanceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClearanceParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
