// Per-slice cost of the four propagation schemes on a real rod problem,
// with the potential pre-tabulated the way the production sweep does it.
// The time-at-equal-error contest lives in the CLI bench command; this is
// the raw per-step linear-algebra cost.

#include <benchmark/benchmark.h>

#include <vector>

#include "manybeam/conventional.hpp"
#include "manybeam/geometry.hpp"
#include "manybeam/potential.hpp"
#include "manybeam/proposed.hpp"
#include "manybeam/rods.hpp"

using namespace manybeam;

namespace {

struct Problem {
  RodSet rods;
  GammaMatrix gamma;
  BoundPotential bound;
  Problem(double cutoff)
      : rods(RodSet::build(lattice(), cutoff)),
        gamma(GammaMatrix::build(rods, BeamGeometry(2.5, 30.0, 0.0))),
        bound(field(), rods) {}
  static Lattice2D lattice() {
    Lattice2D lat;
    lat.a1 = Vec2(2.0, 0.0);
    lat.a2 = Vec2(0.0, 2.6);
    return lat;
  }
  static PotentialField field() {
    std::vector<GaussianLayer> layers;
    layers.push_back({-2.4, -0.22, 2.2, 1.6, 0.08});
    layers.push_back({-6.0, -0.18, 2.2, 1.9, 0.08});
    return PotentialField::gaussian_layers(-10.0, std::move(layers));
  }
};

constexpr double kH = 0.05;
constexpr double kZ = -5.0;

// cutoff -> rod count on this lattice: 5.0 -> 11, 7.4 -> 23
double cutoff_for(int n) { return n == 11 ? 5.0 : 7.4; }

void bm_conventional_slice(benchmark::State& state) {
  const Problem p(cutoff_for((int)state.range(0)));
  state.SetLabel("n=" + std::to_string(p.rods.size()));
  const ComplexMatrix u_mid = p.bound.eval(kZ + 0.5 * kH);
  const int n = (int)p.rods.size();
  const ComplexMatrix r0 = 0.1 * ComplexMatrix::Identity(n, n);
  for (auto _ : state) {
    const TransferBlocks blocks = slice_transfer(u_mid, p.gamma, kH);
    benchmark::DoNotOptimize(reflect_update(blocks, r0));
  }
}

void bm_rk4_slice(benchmark::State& state) {
  const Problem p(cutoff_for((int)state.range(0)));
  state.SetLabel("n=" + std::to_string(p.rods.size()));
  const ComplexMatrix u0 = p.bound.eval(kZ);
  const ComplexMatrix um = p.bound.eval(kZ + 0.5 * kH);
  const ComplexMatrix u1 = p.bound.eval(kZ + kH);
  const PropagationState seed = initial_state(p.gamma, {}, kZ);
  for (auto _ : state) {
    PropagationState st = seed;
    rk4_step(st, kH, u0, um, u1, p.gamma.gamma2());
    benchmark::DoNotOptimize(st.Q);
  }
}

void bm_splitting_slice(benchmark::State& state, const StepperSpec& spec) {
  const Problem p(cutoff_for((int)state.range(0)));
  state.SetLabel("n=" + std::to_string(p.rods.size()) + " stages=" + std::to_string(spec.stages()));
  const KickSchedule ks = kick_schedule(spec);
  std::vector<ComplexMatrix> u_nodes;
  for (const double f : ks.nodes.frac) u_nodes.push_back(p.bound.eval(kZ + f * kH));
  std::vector<const ComplexMatrix*> u_at_kicks;
  for (const int slot : ks.occ2node) u_at_kicks.push_back(&u_nodes[slot]);
  const PropagationState seed = initial_state(p.gamma, {}, kZ);
  for (auto _ : state) {
    PropagationState st = seed;
    splitting_step(st, kH, spec, u_at_kicks, p.gamma.gamma2());
    benchmark::DoNotOptimize(st.Q);
  }
}

void bm_sp4_slice(benchmark::State& state) { bm_splitting_slice(state, StepperSpec::sp4()); }
void bm_sp6_slice(benchmark::State& state) { bm_splitting_slice(state, StepperSpec::sp6()); }

}  // namespace

BENCHMARK(bm_conventional_slice)->Arg(11)->Arg(23);
BENCHMARK(bm_rk4_slice)->Arg(11)->Arg(23);
BENCHMARK(bm_sp4_slice)->Arg(11)->Arg(23);
BENCHMARK(bm_sp6_slice)->Arg(11)->Arg(23);

BENCHMARK_MAIN();
