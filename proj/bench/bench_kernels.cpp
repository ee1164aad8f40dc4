// Serial reference vs OpenMP kernels. Args: {jobs}.

#include <benchmark/benchmark.h>

#include "orbifrob/groups.hpp"
#include "orbifrob/kernels.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;

namespace {

const CanonicalIso& iso_s3_3() {
  static const CanonicalIso iso = canonical_iso(make_symmetric(3), 3);
  return iso;
}

OrbitSums sums_of(const CanonicalIso& iso) { return {iso.orbit, iso.key_of}; }

void BM_OrbitProductsSerial(benchmark::State& state) {
  const auto& iso = iso_s3_3();
  const OrbitSums sums = sums_of(iso);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_products_serial(*iso.wreath, sums));
}

void BM_OrbitProductsOmp(benchmark::State& state) {
  const auto& iso = iso_s3_3();
  const OrbitSums sums = sums_of(iso);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbit_products_omp(*iso.wreath, sums, jobs));
}

// two big subsets of Z4 wr S4 (order 6144)
struct ConvInput {
  std::shared_ptr<const WreathProduct> w = wreath_product(make_cyclic(4), 4);
  std::vector<Elt> a, b;
  ConvInput() {
    for (Elt x = 0; x < w->order(); x += 3) a.push_back(x);
    for (Elt x = 1; x < w->order(); x += 5) b.push_back(x);
  }
};

const ConvInput& conv_input() {
  static const ConvInput in;
  return in;
}

void BM_ConvolveSerial(benchmark::State& state) {
  const auto& in = conv_input();
  for (auto _ : state) benchmark::DoNotOptimize(convolve_serial(*in.w, in.a, in.b));
}

void BM_ConvolveOmp(benchmark::State& state) {
  const auto& in = conv_input();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convolve_omp(*in.w, in.a, in.b, jobs));
}

}  // namespace

BENCHMARK(BM_OrbitProductsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitProductsOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
