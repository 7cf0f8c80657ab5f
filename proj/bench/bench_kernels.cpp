// Serial reference kernels against their OpenMP counterparts.
// The thread count is the benchmark argument; 0 means omp_get_max_threads().
#include <benchmark/benchmark.h>
#include <omp.h>

#include "polyfock/frames.hpp"
#include "polyfock/gabor.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/lattice.hpp"
#include "polyfock/nyquist.hpp"
#include "polyfock/random.hpp"

using namespace polyfock;

namespace {

int threads_for(const benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  return n > 0 ? n : omp_get_max_threads();
}

struct StftInputs {
  TimeGrid grid = default_time_grid();
  PhaseGrid phase{6.0, 6.0, 96, 96};
  Signal f = Signal::zeros(grid);
  Signal g = Signal::zeros(grid);
  StftInputs() {
    auto rng = stream(1, "bench-stft");
    f = random_hermite_signal(grid, 8, rng);
    g = random_hermite_signal(grid, 8, rng);
  }
};

void BM_StftReference(benchmark::State& state) {
  const StftInputs in;
  for (auto _ : state) benchmark::DoNotOptimize(stft(in.f, in.g, in.phase, StftMethod::reference));
}

void BM_StftDirect(benchmark::State& state) {
  const StftInputs in;
  omp_set_num_threads(threads_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(stft(in.f, in.g, in.phase, StftMethod::direct));
}

void BM_StftChirpZ(benchmark::State& state) {
  const StftInputs in;
  omp_set_num_threads(threads_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(stft(in.f, in.g, in.phase, StftMethod::fft));
}

const GaborSystemSpec& gram_spec() {
  static const GaborSystemSpec spec{SystemKind::super, hermite_windows(2), lattice_with_density(2.5)};
  return spec;
}

void BM_GramReference(benchmark::State& state) {
  const TimeGrid grid = working_grid({4.0});
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix_reference(gram_spec(), 4.0, grid));
}

void BM_GramDifferenceTable(benchmark::State& state) {
  const TimeGrid grid = working_grid({4.0});
  omp_set_num_threads(threads_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(gram_spec(), 4.0, grid));
}

void BM_WeightedEvaluation(benchmark::State& state) {
  const auto points = enumerate_points(lattice_with_density(2.5), 10.0);
  omp_set_num_threads(threads_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_evaluation_matrix(3, points, sampling_band(10.0)));
}

}  // namespace

BENCHMARK(BM_StftReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StftDirect)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StftChirpZ)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramDifferenceTable)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedEvaluation)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
