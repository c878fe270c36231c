// Timings of the hot kernels, from a single special function up to the
// state sum with the serial and the OpenMP execution paths.
#include "dmatel/angular.hpp"
#include "dmatel/matel.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/radial.hpp"
#include "dmatel/shift.hpp"
#include <benchmark/benchmark.h>

using namespace dmatel;

namespace {

states::PhysicalConstants hydrogen() {
  states::PhysicalConstants c;
  c.Z = 1;
  return c;
}

void BM_hyp2f1(benchmark::State &st) {
  const std::complex<double> a(0.5, 1.2), b(1.5, -0.3), c(2.25, 0.0), z(-0.8, 0.4);
  for (auto _ : st)
    benchmark::DoNotOptimize(numerics::hyp2f1(a, b, c, z));
}
BENCHMARK(BM_hyp2f1);

void BM_gaunt_uncached(benchmark::State &st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(angular::gaunt_sph_uncached(6, 1, 4, -1, 5, 0));
}
BENCHMARK(BM_gaunt_uncached);

void BM_radial_bound_free(benchmark::State &st) {
  const auto c = hydrogen();
  const auto b = states::bound_decomposition({0, -1, 1}, c);
  const auto f = states::free_decomposition({0.7, 2, 1}, c);
  for (auto _ : st)
    benchmark::DoNotOptimize(
        radial::radial_bound_free(b, radial::Component::large, f, radial::Component::large, 2, 0.3));
}
BENCHMARK(BM_radial_bound_free);

void BM_transition_quadruple(benchmark::State &st) {
  const auto c = hydrogen();
  const auto s1 = matel::make_orbital(states::BoundState{0, -1, 1}, c);
  const auto s2 = matel::make_orbital(states::FreeState{0.7, -3, 1}, c);
  for (auto _ : st)
    benchmark::DoNotOptimize(matel::transition_quadruple(s1, s2, 0.05));
}
BENCHMARK(BM_transition_quadruple);

void BM_contribution(benchmark::State &st) {
  const auto c = hydrogen();
  const auto s1 = matel::make_orbital(states::BoundState{0, -1, 1}, c);
  const auto s2 = matel::make_orbital(states::BoundState{1, 1, 1}, c);
  const shift::RegularizationSpec reg{10.0};
  const auto base = shift::default_policy(s1, reg);
  for (auto _ : st)
    benchmark::DoNotOptimize(shift::contribution(s1, s2, {}, reg, base, c));
}
BENCHMARK(BM_contribution)->Unit(benchmark::kMillisecond);

void BM_state_sum(benchmark::State &st) {
  shift::Truncation t;
  t.n_max = 1;
  t.kappa_max = 2;
  t.p_nodes = 8;
  const auto mode = st.range(0) ? shift::Execution::parallel : shift::Execution::serial;
  for (auto _ : st)
    benchmark::DoNotOptimize(shift::state_sum({0, -1, 1}, hydrogen(), t, {10.0},
                                              shift::DeltaMHook::zero(), std::nullopt, mode));
}
BENCHMARK(BM_state_sum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
