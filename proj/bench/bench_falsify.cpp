// Serial reference kernel vs OpenMP kernel on full-budget searches, where
// no witness exists and every draw is evaluated.

#include <benchmark/benchmark.h>

#include "conicstab/sampling.hpp"
#include "conicstab/stability.hpp"

using namespace conicstab;

namespace {

const MultiPoly& det3() {
  static const MultiPoly f = parse("z11*z22*z33 + 2*z12*z23*z13 - z11*z23^2 - z22*z13^2 - z33*z12^2",
                                   MatrixVarIndex(3).names());
  return f;
}

void run_falsify(benchmark::State& state, int threads) {
  SamplingOptions o;
  o.samples = static_cast<std::uint64_t>(state.range(0));
  o.threads = threads;
  for (auto _ : state) {
    const auto v = falsify_k_stability(det3(), Cone::psd(3), o);
    benchmark::DoNotOptimize(v.status);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FalsifySerial(benchmark::State& state) { run_falsify(state, 1); }
void BM_FalsifyParallel(benchmark::State& state) { run_falsify(state, 0); }

// Kernel overhead alone: a cheap predicate that never fires.
void run_kernel(benchmark::State& state, bool parallel) {
  const auto count = static_cast<std::uint64_t>(state.range(0));
  const DrawPredicate never = [](std::uint64_t i) { return draw_stream(7, i)() == 0; };
  for (auto _ : state) {
    const auto r = parallel ? first_failing_draw_parallel(count, never) : first_failing_draw_serial(count, never);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KernelSerial(benchmark::State& state) { run_kernel(state, false); }
void BM_KernelParallel(benchmark::State& state) { run_kernel(state, true); }

}  // namespace

BENCHMARK(BM_FalsifySerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FalsifyParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
