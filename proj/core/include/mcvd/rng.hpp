#pragma once

#include <cstdint>

namespace mcvd::rng {

// Stafford mix13 finalizer, full avalanche on 64 bits
std::uint64_t mix64(std::uint64_t x);

// advances state and returns the next output
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256++ by Blackman and Vigna. Satisfies UniformRandomBitGenerator
// so it plugs into <random> distributions.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }

  explicit Xoshiro256pp(std::uint64_t seed);

  result_type operator()();

 private:
  std::uint64_t s_[4];
};

// Independent stream for one logical index (particle, trial) under a master
// seed. The index is avalanched before seeding so neighbouring indices do not
// share splitmix windows. Same (seed, index) always yields the same stream,
// which is what makes results independent of worker count.
Xoshiro256pp make_stream(std::uint64_t master_seed, std::uint64_t index);

// uniform double in [0, 1), 53 random bits
double uniform01(Xoshiro256pp& g);

// standard normal via a 256 layer ziggurat, exact tail and wedge handling
double normal01(Xoshiro256pp& g);

}  // namespace mcvd::rng
