#pragma once

#include <cstdint>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd/geometry.hpp"

namespace mcvd {

// Gaussian working model for the received count in slot l (1-based), on-off
// keying with i.i.d. bits, ISI from the previous l-1 slots, additive noise.
struct HypothesisStats {
  double mu0 = 0.0;   // bit 0 mean
  double var0 = 0.0;
  double mu1 = 0.0;   // bit 1 mean
  double var1 = 0.0;
  int slot_index = 1;
  int far_index = 0;  // 1, 2, or 0 for the combined pair
};

// Moments implied by the tap vector. Throws std::out_of_range when the taps
// do not cover slot_index slots.
HypothesisStats hypothesis_stats(const TapVector& taps, const Scenario& s,
                                 int slot_index);

// Sum observation across both receivers, treating the per-receiver counts as
// independent (shared-bit and competition cross terms are dropped by
// construction; the MC oracle quantifies what that costs). Throws
// MismatchedSlot when the two sides describe different slots.
HypothesisStats joint_stats(const HypothesisStats& s1, const HypothesisStats& s2);

struct LinkSample {
  std::uint8_t true_bit = 0;
  double y = 0.0;
};

// Monte Carlo oracle for one receiver: exact Bernoulli bits, exact binomial
// counts per slot, Gaussian noise, no Gaussian moment matching anywhere.
// Sample i depends only on (seed, i) so worker count never changes output.
std::vector<LinkSample> simulate_link(const TapVector& taps, const Scenario& s,
                                      int slot_index, std::int64_t n_trials,
                                      std::uint64_t seed, int n_workers = 0);

struct LinkPairSample {
  std::uint8_t true_bit = 0;
  double y1 = 0.0;
  double y2 = 0.0;
};

// Both receivers of one link in a single trial: shared slot bits, per-slot
// counts coupled multinomially (a molecule absorbed by one receiver is gone
// for the other), independent noises. y1 + y2 is the physical joint
// observation the additive joint_stats model approximates.
std::vector<LinkPairSample> simulate_link_pair(const TapVector& taps1,
                                               const TapVector& taps2,
                                               const Scenario& s,
                                               int slot_index,
                                               std::int64_t n_trials,
                                               std::uint64_t seed,
                                               int n_workers = 0);

}  // namespace mcvd
