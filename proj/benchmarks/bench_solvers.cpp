#include <benchmark/benchmark.h>

#include "ritzlag/problems.hpp"

using namespace ritzlag;

static void BM_SolveSaddlePlate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  const ConstrainedSystem sys =
      build_problem_system({ProblemId::P5, n, s, BasisVariant::augmented, 0.3, {}});
  for (auto _ : state) {
    const TrialSolution sol = solve_saddle(sys);
    benchmark::DoNotOptimize(sol.coefficients.data());
  }
}
BENCHMARK(BM_SolveSaddlePlate)->Args({6, 3})->Args({10, 5});

static void BM_ConstrainedGevp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  const ConstrainedSystem sys =
      build_problem_system({ProblemId::P6, n, s, BasisVariant::augmented, 0.3, {}}, true);
  for (auto _ : state) {
    const ModeSet modes = solve_constrained_gevp(sys);
    benchmark::DoNotOptimize(modes.eigenvalues.data());
  }
}
BENCHMARK(BM_ConstrainedGevp)->Args({8, 4})->Args({10, 5});

static void BM_NullspaceBasis(benchmark::State& state) {
  const ConstrainedSystem sys =
      build_problem_system({ProblemId::P6, 10, 5, BasisVariant::augmented, 0.3, {}}, true);
  for (auto _ : state) {
    const Eigen::MatrixXd z = nullspace_basis(sys.L);
    benchmark::DoNotOptimize(z.data());
  }
}
BENCHMARK(BM_NullspaceBasis);

BENCHMARK_MAIN();
