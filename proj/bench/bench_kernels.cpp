// Serial reference vs OpenMP for the task-parallel kernels. Both policies
// produce bit-identical results; only wall time differs.
#include <benchmark/benchmark.h>

#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/lines.hpp"
#include "gtlab/randmat.hpp"
#include "gtlab/rng.hpp"

namespace {

gtlab::Exec exec_arg(const benchmark::State& state) {
  return state.range(0) == 0 ? gtlab::Exec::serial : gtlab::Exec::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(std::string(gtlab::to_string(exec_arg(state))) + " threads=" +
                 std::to_string(gtlab::worker_count()));
}

void BM_MonteCarloHT(benchmark::State& state) {
  std::vector<gtlab::CMatrix> a_list(2, gtlab::CMatrix::Zero(2, 2));
  a_list[0](0, 0) = 1.0;
  a_list[1](1, 1) = 1.0;
  gtlab::MCOptions opts;
  opts.samples = 16;
  opts.d = 96;
  opts.exec = exec_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(gtlab::mc_ht(a_list, 1.0, 0.5, opts).mean);
  label(state);
}
BENCHMARK(BM_MonteCarloHT)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SeesawRestarts(benchmark::State& state) {
  gtlab::NormalSampler rng(7);
  const auto u = gtlab::FormTensor::random(2, 2, rng);
  gtlab::SeesawOptions opts;
  opts.restarts = 8;
  opts.max_iterations = 100;
  opts.exec = exec_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(gtlab::norm_seesaw(u, 4, opts).value);
  label(state);
}
BENCHMARK(BM_SeesawRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FitConstant(benchmark::State& state) {
  std::vector<gtlab::Slope> slopes;
  for (double t2 : {0.1, 0.5, 2.4, 3.0, 10.0}) slopes.push_back(gtlab::Slope::from_t_squared(t2));
  const std::vector<std::size_t> ds = {64, 128, 256, 512, 1024, 2048};
  for (auto _ : state) benchmark::DoNotOptimize(gtlab::fit_constant(slopes, ds, exec_arg(state)));
  label(state);
}
BENCHMARK(BM_FitConstant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Kron(benchmark::State& state) {
  gtlab::NormalSampler rng(11);
  const auto a = gtlab::random_gaussian_matrix(16, 16, rng);
  const auto b = gtlab::random_gaussian_matrix(32, 32, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gtlab::kron(a, b, exec_arg(state)).data());
  label(state);
}
BENCHMARK(BM_Kron)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
