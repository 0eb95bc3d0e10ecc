#include <benchmark/benchmark.h>

#include "suspflow/diff_probe.hpp"
#include "suspflow/rng.hpp"

using namespace suspflow;

namespace {

SuspensionSystem make_system() {
  return SuspensionSystem(HyperbolicToralMap(Mat2i{2, 1, 1, 1}),
                          CeilingFunction::trig(1.0, {TrigTerm{0.1, 1, 0, 0.0}}));
}

EquivalencePair make_pair() {
  return EquivalencePair(make_system(),
                         SuspensionSystem(HyperbolicToralMap(Mat2i{3, -1, 1, 0}),
                                          CeilingFunction::trig(1.0, {TrigTerm{0.1, 1, 0, 0.0}})),
                         BaseConjugacy::linear(Mat2i{1, 1, 0, 1}));
}

void BM_Flow(benchmark::State& state) {
  const auto sys = make_system();
  SplitMix64 rng(1);
  const SuspensionPoint p{{rng.next_dyadic48(), rng.next_dyadic48()}, 0.25};
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.flow(p, t));
  }
}
BENCHMARK(BM_Flow)->Arg(1)->Arg(10)->Arg(100);

void BM_HHat(benchmark::State& state) {
  const auto pair = make_pair();
  const SuspensionPoint p{{0.37, 0.81}, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair.h_hat(p));
  }
}
BENCHMARK(BM_HHat);

void BM_Tau(benchmark::State& state) {
  const auto pair = make_pair();
  const SuspensionPoint p{{0.37, 0.81}, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair.tau(p, 12.5));
  }
}
BENCHMARK(BM_Tau);

void BM_FiberBuild(benchmark::State& state) {
  const SmoothedEquivalence se(make_pair());
  SplitMix64 rng(2);
  for (auto _ : state) {
    // fresh base every iteration so the cache never hits
    const TorusPoint x{rng.next_dyadic48(), rng.next_dyadic48()};
    benchmark::DoNotOptimize(se.fiber(x));
  }
}
BENCHMARK(BM_FiberBuild);

void BM_FiberEvalCached(benchmark::State& state) {
  const SmoothedEquivalence se(make_pair());
  const auto rep = se.fiber({0.37, 0.81});
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t >= rep->domain_top()) t = 0.0;
    benchmark::DoNotOptimize(rep->value(t));
  }
}
BENCHMARK(BM_FiberEvalCached);

void BM_FdJacobian(benchmark::State& state) {
  const auto pair = make_pair();
  const SuspensionPoint p{{0.37, 0.81}, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fd_jacobian(pair.source(), pair.target(),
                    [&pair](const SuspensionPoint& q) { return pair.h_hat(q); }, p, 1e-5));
  }
}
BENCHMARK(BM_FdJacobian);

void BM_CrossSectionCheck(benchmark::State& state) {
  const SmoothedEquivalence se(make_pair());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_section_check(se, {0.37, 0.81}, 1e-4));
  }
}
BENCHMARK(BM_CrossSectionCheck);

}  // namespace

BENCHMARK_MAIN();
