#include <benchmark/benchmark.h>

#include "mmspectra/inference.hpp"
#include "mmspectra/mmspace.hpp"
#include "mmspectra/random.hpp"
#include "mmspectra/signatures.hpp"
#include "mmspectra/spectrum.hpp"

using namespace mmspectra;

namespace {

MmSpace planar(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Matrix pts(static_cast<Eigen::Index>(k), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) pts.row(i) << 10 * uniform_unit(rng), 10 * uniform_unit(rng);
  return from_points(pts, MassPolicy::uniform());
}

void BM_Sweep(benchmark::State& state) {
  const auto space = planar(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(space, SweepOptions{false, 0}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sweep)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SingleSpectrum(benchmark::State& state) {
  const auto space = planar(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(eig(laplacian(space, 3.0), false));
}
BENCHMARK(BM_SingleSpectrum)->RangeMultiplier(2)->Range(8, 128);

void BM_Bootstrap(benchmark::State& state) {
  std::vector<MmSpace> a, b, pooled;
  for (std::uint64_t i = 0; i < 20; ++i) {
    a.push_back(planar(12, 100 + i));
    b.push_back(planar(12, 200 + i));
  }
  pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<SpectralCurve> ca, cb;
  for (const auto& s : a) ca.push_back(sweep(s, false));
  for (const auto& s : b) cb.push_back(sweep(s, false));
  const auto grid = build_grid(pooled);
  const auto sa = make_sample(ca, grid, 12), sb = make_sample(cb, grid, 12);
  BootstrapOptions o;
  o.replicates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_test(sa, sb, o));
}
BENCHMARK(BM_Bootstrap)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
