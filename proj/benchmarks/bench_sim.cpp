#include <benchmark/benchmark.h>

#include "mcvd/channel.hpp"
#include "mcvd/link.hpp"
#include "mcvd/particle_sim.hpp"
#include "mcvd/rng.hpp"

namespace {

void bm_normal01(benchmark::State& state) {
  auto g = mcvd::rng::make_stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(mcvd::rng::normal01(g));
}
BENCHMARK(bm_normal01);

void bm_particle_walk(benchmark::State& state) {
  mcvd::Scenario s;
  s.pos1 = {30.0, 0.0, 0.0};
  s.pos2 = {30.0, 15.0, 0.0};
  mcvd::SimConfig cfg;
  cfg.n_particles = state.range(0);
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  cfg.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(mcvd::simulate(s, cfg, 1));
  state.SetItemsProcessed(state.iterations() * cfg.n_particles *
                          static_cast<std::int64_t>(cfg.t_max / cfg.dt));
}
BENCHMARK(bm_particle_walk)->Arg(100)->Arg(1000);

void bm_link_trials(benchmark::State& state) {
  mcvd::Scenario s;
  s.pos1 = {20.0, 5.0, 0.0};
  s.pos2 = {-25.0, -10.0, 0.0};
  s.slot_duration = 5.0;
  s.bit_prior = 0.9;
  s.noise_mean = 5.0;
  s.noise_var = 5.0;
  s.slots = 10;
  const mcvd::FarGeometry g = mcvd::derive_geometry(s);
  const mcvd::TapVector taps = mcvd::channel_taps(
      g, 1, s.far_radius, s.diffusion_coeff, s.slot_duration, s.slots);
  const std::int64_t trials = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mcvd::simulate_link(taps, s, s.slots, trials, 7, 1));
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(bm_link_trials)->Arg(1000)->Arg(10000);

}  // namespace
