// Serial versus OpenMP assembly of Gram, Pick and defect matrices.

#include <benchmark/benchmark.h>

#include "nevpick/lifter.hpp"
#include "support.hpp"

using namespace nevpick;
using assembly::Exec;

namespace {

std::vector<BallPoint> nodes_for(int m, int n) {
  nevpick::testing::Rng rng(static_cast<std::uint64_t>(m) * 7919 + static_cast<std::uint64_t>(n));
  std::vector<BallPoint> out;
  for (int i = 0; i < m; ++i) out.emplace_back(nevpick::testing::random_ball_coords(rng, n, 0.9));
  return out;
}

InterpolationProblem problem_for(int m) {
  nevpick::testing::Rng rng(static_cast<std::uint64_t>(m));
  auto nodes = nodes_for(m, 3);
  std::vector<CMatrix> targets;
  for (int i = 0; i < m; ++i) targets.push_back(0.5 * CMatrix::Identity(2, 2) + 0.01 * nevpick::testing::random_matrix(rng, 2, 2));
  return InterpolationProblem(3, DiagonalKernel::power(2.5), std::move(nodes), std::move(targets));
}

void BM_Gram(benchmark::State& state, Exec exec) {
  const auto nodes = nodes_for(static_cast<int>(state.range(0)), 3);
  const auto k = DiagonalKernel::power(2.5);
  for (auto _ : state) benchmark::DoNotOptimize(gram(k, nodes, exec));
}

void BM_Pick(benchmark::State& state, Exec exec) {
  const auto pr = problem_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pick_blocks(pr, exec));
}

// Defect kernel at sample points for a solved small instance.
void BM_Defect(benchmark::State& state, Exec exec) {
  nevpick::testing::Rng rng(5);
  const InterpolationProblem pr(2, DiagonalKernel::power(2.0),
                                {BallPoint({0.0, 0.0}), BallPoint({0.3, 0.1}), BallPoint({-0.2, 0.4})},
                                {CMatrix::Constant(1, 1, 0.2), CMatrix::Constant(1, 1, 0.3), CMatrix::Constant(1, 1, 0.1)});
  const auto rm = solve(pr);
  const auto pts = sample_ball(2, static_cast<int>(state.range(0)), 42, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(defect_matrix(pr, rm, pts, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Gram, serial, Exec::serial)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK_CAPTURE(BM_Gram, parallel, Exec::parallel)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK_CAPTURE(BM_Pick, serial, Exec::serial)->RangeMultiplier(4)->Range(16, 512);
BENCHMARK_CAPTURE(BM_Pick, parallel, Exec::parallel)->RangeMultiplier(4)->Range(16, 512);
BENCHMARK_CAPTURE(BM_Defect, serial, Exec::serial)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK_CAPTURE(BM_Defect, parallel, Exec::parallel)->RangeMultiplier(4)->Range(16, 256);

BENCHMARK_MAIN();
