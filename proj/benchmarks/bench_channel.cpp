#include <benchmark/benchmark.h>

#include "mcvd/channel.hpp"
#include "mcvd/detection.hpp"
#include "mcvd/geometry.hpp"
#include "mcvd/link.hpp"

namespace {

mcvd::Scenario pair_scenario() {
  mcvd::Scenario s;
  s.pos1 = {30.0, 0.0, 0.0};
  s.pos2 = {30.0, 15.0, 0.0};
  return s;
}

void bm_p1_hit(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(mcvd::p1_hit(15.0, 5.0, 30.0, 100.0));
}
BENCHMARK(bm_p1_hit);

void bm_p2_hit(benchmark::State& state) {
  const mcvd::FarGeometry g = mcvd::derive_geometry(pair_scenario());
  for (auto _ : state)
    benchmark::DoNotOptimize(mcvd::p2_hit(15.0, g, 1, 5.0, 100.0));
}
BENCHMARK(bm_p2_hit);

void bm_channel_taps(benchmark::State& state) {
  const mcvd::FarGeometry g = mcvd::derive_geometry(pair_scenario());
  const int slots = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mcvd::channel_taps(g, 1, 5.0, 100.0, 5.0, slots));
}
BENCHMARK(bm_channel_taps)->Arg(10)->Arg(100)->Arg(1000);

void bm_auc_numeric(benchmark::State& state) {
  mcvd::HypothesisStats st;
  st.mu0 = 51.9;
  st.var0 = 113.9;
  st.mu1 = 201.3;
  st.var1 = 241.0;
  for (auto _ : state) benchmark::DoNotOptimize(mcvd::auc_numeric(st));
}
BENCHMARK(bm_auc_numeric);

void bm_auc_closed_form(benchmark::State& state) {
  mcvd::HypothesisStats st;
  st.mu0 = 51.9;
  st.var0 = 113.9;
  st.mu1 = 201.3;
  st.var1 = 241.0;
  for (auto _ : state) benchmark::DoNotOptimize(mcvd::auc_closed_form(st));
}
BENCHMARK(bm_auc_closed_form);

}  // namespace

BENCHMARK_MAIN();
