#include "mcvd/link.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "mcvd/errors.hpp"
#include "mcvd/rng.hpp"

namespace mcvd {

namespace {

void check_slot_coverage(const TapVector& taps, int slot_index) {
  if (slot_index < 1) throw std::invalid_argument("slot index is 1-based");
  if (static_cast<int>(taps.taps.size()) < slot_index)
    throw std::out_of_range("tap vector shorter than requested slot index");
}

long long integral_molecule_count(const Scenario& s) {
  if (s.molecules_per_bit < 0.0)
    throw std::invalid_argument("molecules per bit must be nonnegative");
  return std::llround(s.molecules_per_bit);
}

void check_prior(const Scenario& s) {
  if (s.bit_prior < 0.0 || s.bit_prior > 1.0)
    throw std::invalid_argument("bit prior must lie in [0, 1]");
  if (s.noise_var < 0.0)
    throw std::invalid_argument("noise variance must be nonnegative");
}

int resolve_workers(int n_workers, std::int64_t n_items) {
  int w = n_workers > 0 ? n_workers
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  if (n_items < w) w = std::max<std::int64_t>(n_items, 1);
  return w;
}

template <class Fn>
void run_chunked(std::int64_t n_items, int n_workers, Fn&& per_range) {
  const int workers = resolve_workers(n_workers, n_items);
  if (workers == 1) {
    per_range(std::int64_t{0}, n_items);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (n_items + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, n_items);
    if (begin >= end) break;
    pool.emplace_back([&per_range, begin, end] { per_range(begin, end); });
  }
  for (auto& th : pool) th.join();
}

int draw_binomial(rng::Xoshiro256pp& g, long long n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return static_cast<int>(n);
  std::binomial_distribution<int> dist(static_cast<int>(n), p);
  return dist(g);
}

}  // namespace

HypothesisStats hypothesis_stats(const TapVector& taps, const Scenario& s,
                                 int slot_index) {
  check_slot_coverage(taps, slot_index);
  check_prior(s);
  const double N = s.molecules_per_bit;
  const double q1 = s.bit_prior;
  const double q0 = 1.0 - q1;
  double isi_mean = 0.0;
  double isi_var = 0.0;
  for (int j = 1; j < slot_index; ++j) {
    const double h = taps.taps[static_cast<std::size_t>(j)];
    isi_mean += h;
    isi_var += N * q1 * h * (1.0 - h) + q1 * q0 * N * N * h * h;
  }
  const double h0 = taps.taps.front();
  HypothesisStats st;
  st.mu0 = N * q1 * isi_mean + s.noise_mean;
  st.var0 = isi_var + s.noise_var;
  st.mu1 = N * h0 + st.mu0;
  st.var1 = N * h0 * (1.0 - h0) + st.var0;
  st.slot_index = slot_index;
  st.far_index = taps.far_index;
  return st;
}

HypothesisStats joint_stats(const HypothesisStats& s1, const HypothesisStats& s2) {
  if (s1.slot_index != s2.slot_index)
    throw MismatchedSlot("joint statistics need a common slot index");
  HypothesisStats st;
  st.mu0 = s1.mu0 + s2.mu0;
  st.var0 = s1.var0 + s2.var0;
  st.mu1 = s1.mu1 + s2.mu1;
  st.var1 = s1.var1 + s2.var1;
  st.slot_index = s1.slot_index;
  st.far_index = 0;
  return st;
}

std::vector<LinkSample> simulate_link(const TapVector& taps, const Scenario& s,
                                      int slot_index, std::int64_t n_trials,
                                      std::uint64_t seed, int n_workers) {
  check_slot_coverage(taps, slot_index);
  check_prior(s);
  if (n_trials < 0) throw std::invalid_argument("negative trial count");
  const long long N = integral_molecule_count(s);
  const double q1 = s.bit_prior;
  const double noise_sd = std::sqrt(s.noise_var);
  const auto& h = taps.taps;

  std::vector<LinkSample> out(static_cast<std::size_t>(n_trials));
  run_chunked(n_trials, n_workers, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      auto g = rng::make_stream(seed, static_cast<std::uint64_t>(i));
      const bool bit = rng::uniform01(g) < q1;
      double y = 0.0;
      if (bit) y += draw_binomial(g, N, h.front());
      for (int j = 1; j < slot_index; ++j) {
        const bool past = rng::uniform01(g) < q1;
        if (past) y += draw_binomial(g, N, h[static_cast<std::size_t>(j)]);
      }
      y += s.noise_mean + noise_sd * rng::normal01(g);
      out[static_cast<std::size_t>(i)] = {static_cast<std::uint8_t>(bit), y};
    }
  });
  return out;
}

std::vector<LinkPairSample> simulate_link_pair(const TapVector& taps1,
                                               const TapVector& taps2,
                                               const Scenario& s,
                                               int slot_index,
                                               std::int64_t n_trials,
                                               std::uint64_t seed,
                                               int n_workers) {
  check_slot_coverage(taps1, slot_index);
  check_slot_coverage(taps2, slot_index);
  if (taps1.slot_duration != taps2.slot_duration)
    throw std::invalid_argument("tap vectors built for different slot durations");
  check_prior(s);
  if (n_trials < 0) throw std::invalid_argument("negative trial count");
  const long long N = integral_molecule_count(s);
  const double q1 = s.bit_prior;
  const double noise_sd = std::sqrt(s.noise_var);
  const auto& h1 = taps1.taps;
  const auto& h2 = taps2.taps;

  std::vector<LinkPairSample> out(static_cast<std::size_t>(n_trials));
  run_chunked(n_trials, n_workers, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      auto g = rng::make_stream(seed, static_cast<std::uint64_t>(i));
      double y1 = 0.0, y2 = 0.0;
      std::uint8_t current = 0;
      for (int j = 0; j < slot_index; ++j) {
        const bool bit = rng::uniform01(g) < q1;
        if (j == 0) current = static_cast<std::uint8_t>(bit);
        if (!bit) continue;
        const double p1 = h1[static_cast<std::size_t>(j)];
        const double p2 = h2[static_cast<std::size_t>(j)];
        const int c1 = draw_binomial(g, N, p1);
        // remaining molecules can still reach the other receiver
        const double rem = 1.0 - p1;
        const double p2_cond = rem > 0.0 ? std::min(1.0, p2 / rem) : 1.0;
        const int c2 = draw_binomial(g, N - c1, p2_cond);
        y1 += c1;
        y2 += c2;
      }
      y1 += s.noise_mean + noise_sd * rng::normal01(g);
      y2 += s.noise_mean + noise_sd * rng::normal01(g);
      out[static_cast<std::size_t>(i)] = {current, y1, y2};
    }
  });
  return out;
}

}  // namespace mcvd
