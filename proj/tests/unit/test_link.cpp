#include <cmath>
#include <vector>

#include "doctest.h"
#include "mcvd/errors.hpp"
#include "mcvd/link.hpp"

using namespace mcvd;

namespace {

Scenario link_scenario() {
  Scenario s;
  s.diffusion_coeff = 100.0;
  s.far_radius = 5.0;
  s.pos1 = {20.0, 5.0, 0.0};
  s.pos2 = {-25.0, -10.0, 0.0};
  s.slot_duration = 5.0;
  s.molecules_per_bit = 1000.0;
  s.bit_prior = 0.9;
  s.noise_mean = 5.0;
  s.noise_var = 5.0;
  s.slots = 10;
  return s;
}

TapVector taps_for(const Scenario& s, int far_index) {
  return channel_taps(derive_geometry(s), far_index, s.far_radius,
                      s.diffusion_coeff, s.slot_duration, s.slots);
}

}  // namespace

TEST_CASE("moments match an independent evaluation of the same model") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  const auto t2 = taps_for(s, 2);
  CHECK(t1.taps[0] == doctest::Approx(0.1494136420738695760852).epsilon(1e-12));
  CHECK(t1.taps[1] == doctest::Approx(0.02301135522397750969641).epsilon(1e-12));
  CHECK(t2.taps[0] == doctest::Approx(0.08797496679607828512411).epsilon(1e-12));
  CHECK(t2.taps[9] == doctest::Approx(0.001206239608984643848443).epsilon(1e-12));

  const HypothesisStats s1 = hypothesis_stats(t1, s, 10);
  CHECK(s1.mu0 == doctest::Approx(51.90322693233427821736).epsilon(1e-12));
  CHECK(s1.var0 == doctest::Approx(113.9404382270832209964).epsilon(1e-12));
  CHECK(s1.mu1 == doctest::Approx(201.3168690062038543026).epsilon(1e-12));
  CHECK(s1.var1 == doctest::Approx(241.0296438631743882844).epsilon(1e-12));
  CHECK(s1.far_index == 1);
  CHECK(s1.slot_index == 10);

  const HypothesisStats s2 = hypothesis_stats(t2, s, 10);
  CHECK(s2.mu0 == doctest::Approx(49.33218847294949739506).epsilon(1e-12));
  CHECK(s2.var1 == doctest::Approx(183.339878359965667773).epsilon(1e-12));

  const HypothesisStats sj = joint_stats(s1, s2);
  CHECK(sj.mu0 == doctest::Approx(101.2354154052837756124).epsilon(1e-12));
  CHECK(sj.var1 == doctest::Approx(424.3695222231400560574).epsilon(1e-12));
  CHECK(sj.far_index == 0);
}

TEST_CASE("first slot carries no interference") {
  Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  const HypothesisStats st = hypothesis_stats(t1, s, 1);
  CHECK(st.mu0 == s.noise_mean);
  CHECK(st.var0 == s.noise_var);
  CHECK(st.mu1 == s.noise_mean + s.molecules_per_bit * t1.taps[0]);

  s.bit_prior = 0.0;  // silent interferers
  const HypothesisStats quiet = hypothesis_stats(t1, s, 10);
  CHECK(quiet.mu0 == s.noise_mean);
  CHECK(quiet.var0 == s.noise_var);
}

TEST_CASE("signal increments are exact differences of the hypotheses") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  for (int l : {1, 3, 10}) {
    const HypothesisStats st = hypothesis_stats(t1, s, l);
    const double N = s.molecules_per_bit;
    const double h0 = t1.taps[0];
    CHECK(st.mu1 - st.mu0 == doctest::Approx(N * h0).epsilon(1e-15));
    CHECK(st.var1 - st.var0 == doctest::Approx(N * h0 * (1.0 - h0)).epsilon(1e-15));
    CHECK(st.mu1 >= st.mu0);
    CHECK(st.var1 >= st.var0);
    CHECK(st.var0 > 0.0);
  }
}

TEST_CASE("taps shorter than the slot index are refused") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  CHECK_THROWS_AS(hypothesis_stats(t1, s, 11), std::out_of_range);
  CHECK_THROWS_AS(hypothesis_stats(t1, s, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_link(t1, s, 99, 10, 1), std::out_of_range);

  const auto t2 = taps_for(s, 2);
  const auto a = hypothesis_stats(t1, s, 10);
  const auto b = hypothesis_stats(t2, s, 9);
  CHECK_THROWS_AS(joint_stats(a, b), MismatchedSlot);
}

TEST_CASE("link oracle is deterministic and worker independent") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  const auto a = simulate_link(t1, s, 10, 500, 31, 1);
  const auto b = simulate_link(t1, s, 10, 500, 31, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].true_bit == b[i].true_bit);
    CHECK(a[i].y == b[i].y);
  }
}

TEST_CASE("degenerate link collapses to pure noise mean") {
  Scenario s = link_scenario();
  s.molecules_per_bit = 0.0;
  s.noise_var = 0.0;
  const auto t1 = taps_for(s, 1);
  for (const auto& sample : simulate_link(t1, s, 10, 200, 17))
    CHECK(sample.y == s.noise_mean);
}

TEST_CASE("oracle sample moments agree with the analytic hypotheses") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  const HypothesisStats st = hypothesis_stats(t1, s, 10);
  const auto samples = simulate_link(t1, s, 10, 60000, 2718);
  double n[2] = {0, 0}, mean[2] = {0, 0}, m2[2] = {0, 0};
  for (const auto& sm : samples) {
    const int b = sm.true_bit;
    n[b] += 1.0;
    const double d = sm.y - mean[b];
    mean[b] += d / n[b];
    m2[b] += d * (sm.y - mean[b]);
  }
  const double var[2] = {m2[0] / (n[0] - 1.0), m2[1] / (n[1] - 1.0)};
  const double mu[2] = {st.mu0, st.mu1};
  const double va[2] = {st.var0, st.var1};
  for (int b = 0; b < 2; ++b) {
    const double se_mean = std::sqrt(va[b] / n[b]);
    CHECK(std::abs(mean[b] - mu[b]) < 3.5 * se_mean);
    // variance of the sample variance for near-Gaussian sums
    const double se_var = va[b] * std::sqrt(2.0 / (n[b] - 1.0));
    CHECK(std::abs(var[b] - va[b]) < 4.0 * se_var);
  }
}

TEST_CASE("pair oracle couples the receivers physically") {
  const Scenario s = link_scenario();
  const auto t1 = taps_for(s, 1);
  const auto t2 = taps_for(s, 2);
  const auto a = simulate_link_pair(t1, t2, s, 10, 400, 5, 1);
  const auto b = simulate_link_pair(t1, t2, s, 10, 400, 5, 3);
  REQUIRE(a.size() == 400);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].true_bit == b[i].true_bit);
    CHECK(a[i].y1 == b[i].y1);
    CHECK(a[i].y2 == b[i].y2);
  }

  // marginal means still follow the per-receiver hypotheses
  const HypothesisStats s1 = hypothesis_stats(t1, s, 10);
  const HypothesisStats s2 = hypothesis_stats(t2, s, 10);
  const auto samples = simulate_link_pair(t1, t2, s, 10, 60000, 314159);
  double n[2] = {0, 0}, mean1[2] = {0, 0}, mean2[2] = {0, 0};
  for (const auto& sm : samples) {
    const int bit = sm.true_bit;
    n[bit] += 1.0;
    mean1[bit] += sm.y1;
    mean2[bit] += sm.y2;
  }
  for (int bit = 0; bit < 2; ++bit) {
    mean1[bit] /= n[bit];
    mean2[bit] /= n[bit];
  }
  CHECK(std::abs(mean1[0] - s1.mu0) < 3.5 * std::sqrt(s1.var0 / n[0]));
  CHECK(std::abs(mean1[1] - s1.mu1) < 3.5 * std::sqrt(s1.var1 / n[1]));
  CHECK(std::abs(mean2[0] - s2.mu0) < 3.5 * std::sqrt(s2.var0 / n[0]));
  CHECK(std::abs(mean2[1] - s2.mu1) < 3.5 * std::sqrt(s2.var1 / n[1]));

  CHECK_THROWS_AS(simulate_link_pair(t1, t2, s, 11, 10, 1), std::out_of_range);
}
