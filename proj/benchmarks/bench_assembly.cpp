#include <benchmark/benchmark.h>

#include "ritzlag/problems.hpp"

using namespace ritzlag;

static void BM_AssembleInterval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ConstrainedSystem sys =
        build_problem_system({ProblemId::P2, n, 0, BasisVariant::augmented, 0.3, {}});
    benchmark::DoNotOptimize(sys.K.data());
  }
}
BENCHMARK(BM_AssembleInterval)->Arg(9)->Arg(20)->Arg(40);

static void BM_AssembleDisk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ConstrainedSystem sys =
        build_problem_system({ProblemId::P4, n, 4, BasisVariant::plain, 0.3, {}});
    benchmark::DoNotOptimize(sys.K.data());
  }
}
BENCHMARK(BM_AssembleDisk)->Arg(3)->Arg(5);

static void BM_AssemblePlate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ConstrainedSystem sys =
        build_problem_system({ProblemId::P5, n, 5, BasisVariant::augmented, 0.3, {}});
    benchmark::DoNotOptimize(sys.K.data());
  }
}
BENCHMARK(BM_AssemblePlate)->Arg(6)->Arg(10);
