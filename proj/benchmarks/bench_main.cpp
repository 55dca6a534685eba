#include <benchmark/benchmark.h>

#include <filesystem>

#include "scaleinv/convolve.hpp"
#include "scaleinv/image_io.hpp"
#include "scaleinv/invariant.hpp"
#include "scaleinv/kernels.hpp"
#include "scaleinv/resample.hpp"
#include "scaleinv/simulation.hpp"

namespace {

using namespace scaleinv;

const GrayImage& camera() {
  static const GrayImage img = load_pgm(std::filesystem::path(SCALEINV_BENCH_DATA_DIR) / "camera256.pgm");
  return img;
}

void BM_ConvolveGaussian(benchmark::State& state) {
  const Kernel k = gaussian(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(camera(), k));
}
BENCHMARK(BM_ConvolveGaussian)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OperatorTriple(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(invariant_map(camera(), 3.0));
}
BENCHMARK(BM_OperatorTriple)->Unit(benchmark::kMillisecond);

void BM_Downscale(benchmark::State& state) {
  const ScaleFactor sf(256, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(downscale_spline(camera(), sf));
}
BENCHMARK(BM_Downscale)->Arg(200)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SimulationStep(benchmark::State& state) {
  ZoomConfig cfg;
  cfg.alpha = ScaleFactor(256, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compare(run_sf(camera(), cfg), run_so(camera(), cfg), cfg));
}
BENCHMARK(BM_SimulationStep)->Arg(200)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
