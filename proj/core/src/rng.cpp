#include "mcvd/rng.hpp"

#include <bit>
#include <cmath>

namespace mcvd::rng {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  return mix64(state);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64(sm);
  // all-zero state is the one fixed point, nudge away from it
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x9e3779b97f4a7c15ull;
}

Xoshiro256pp::result_type Xoshiro256pp::operator()() {
  const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

Xoshiro256pp make_stream(std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t salted =
      mix64(0x9e3779b97f4a7c15ull * (index + 0x632be59bd9b4e019ull));
  return Xoshiro256pp(master_seed ^ salted);
}

double uniform01(Xoshiro256pp& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

namespace {

// Doornik style ziggurat, 256 layers
constexpr int kLayers = 256;
constexpr double kR = 3.6541528853610088;
constexpr double kV = 0.004928673233974655;

struct ZigguratTables {
  double x[kLayers + 1];
  double f[kLayers + 1];
  double ratio[kLayers];

  ZigguratTables() {
    const double f_r = std::exp(-0.5 * kR * kR);
    x[0] = kV / f_r;
    x[1] = kR;
    for (int i = 2; i < kLayers; ++i) {
      x[i] = std::sqrt(-2.0 *
                       std::log(kV / x[i - 1] + std::exp(-0.5 * x[i - 1] * x[i - 1])));
    }
    x[kLayers] = 0.0;
    for (int i = 0; i <= kLayers; ++i) f[i] = std::exp(-0.5 * x[i] * x[i]);
    for (int i = 0; i < kLayers; ++i) ratio[i] = x[i + 1] / x[i];
  }
};

const ZigguratTables& tables() {
  static const ZigguratTables t;
  return t;
}

double tail_sample(Xoshiro256pp& g, bool negative) {
  // Marsaglia exponential wedge for |z| > R
  for (;;) {
    double u1 = uniform01(g);
    double u2 = uniform01(g);
    if (u1 <= 0.0 || u2 <= 0.0) continue;
    const double x = -std::log(u1) / kR;
    const double y = -std::log(u2);
    if (2.0 * y > x * x) {
      const double z = kR + x;
      return negative ? -z : z;
    }
  }
}

}  // namespace

double normal01(Xoshiro256pp& g) {
  const ZigguratTables& t = tables();
  for (;;) {
    const std::uint64_t bits = g();
    const int i = static_cast<int>(bits & 0xff);
    // signed uniform in [-1, 1) from the top 53 bits
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    if (std::abs(u) < t.ratio[i]) return u * t.x[i];
    if (i == 0) return tail_sample(g, u < 0.0);
    const double z = u * t.x[i];
    const double fz = std::exp(-0.5 * z * z);
    if (t.f[i + 1] + uniform01(g) * (t.f[i] - t.f[i + 1]) < fz) return z;
  }
}

}  // namespace mcvd::rng
