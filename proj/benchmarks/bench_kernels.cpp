// Microbenchmarks for the three dense kernels at the sizes the solvers
// actually hit: n rods for the n x n solves and estimates, 2n for the
// slice-exponential argument.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "manybeam/kernels.hpp"
#include "manybeam/types.hpp"

using namespace manybeam;

namespace {

ComplexMatrix random_matrix(int n, unsigned seed, double scale) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = scale * Complex(u(rng), u(rng));
  return m;
}

// traceless two-block layout of one slice matrix h*A, ||W|| ~ a few
ComplexMatrix slice_like(int n, unsigned seed, double h) {
  ComplexMatrix a = ComplexMatrix::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = h * ComplexMatrix::Identity(n, n);
  ComplexMatrix w = random_matrix(n, seed, 0.3);
  for (int i = 0; i < n; ++i) w(i, i) += Complex(4.0 * (i % 3) - 2.0, -0.1);
  a.bottomLeftCorner(n, n) = -h * w;
  return a;
}

void bm_matrix_exponential(benchmark::State& state) {
  const int n = (int)state.range(0);
  const ComplexMatrix a = slice_like(n / 2, 17u, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}

void bm_solve_right(benchmark::State& state) {
  const int n = (int)state.range(0);
  ComplexMatrix a = random_matrix(n, 29u, 1.0);
  a += 4.0 * ComplexMatrix::Identity(n, n);  // keep it comfortably regular
  const ComplexMatrix b = random_matrix(n, 31u, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_right(b, a));
}

void bm_gershgorin_cond(benchmark::State& state) {
  const int n = (int)state.range(0);
  // keep every disk away from zero at both sizes or the estimate
  // degenerates to the infinite early-out
  ComplexMatrix q = random_matrix(n, 43u, 1.5 / n);
  q += 3.0 * ComplexMatrix::Identity(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(gershgorin_cond(q));
}

}  // namespace

BENCHMARK(bm_matrix_exponential)->Arg(22)->Arg(46);
BENCHMARK(bm_solve_right)->Arg(11)->Arg(23);
BENCHMARK(bm_gershgorin_cond)->Arg(11)->Arg(23);
