#pragma once

#include <cstdint>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd/geometry.hpp"

namespace mcvd {

struct SimConfig {
  std::int64_t n_particles = 10000;
  double dt = 1e-4;
  double t_max = 20.0;
  std::uint64_t seed = 1;
};

enum class Outcome : std::uint8_t { far1, far2, survived };

struct HitRecord {
  Outcome outcome = Outcome::survived;
  double hit_time = 0.0;  // NaN when survived
};

// Brownian walk oracle. Independent particles from the origin, Gaussian steps
// of variance 2 D dt per axis, absorption tested after each full step; a step
// landing inside both spheres books the deeper penetration. Results depend
// only on (seed, particle index), never on worker count. n_workers <= 0 uses
// the hardware count. Throws GeometryError unless the receivers are disjoint
// and exclude the transmitter.
std::vector<HitRecord> simulate(const Scenario& s, const SimConfig& cfg,
                                int n_workers = 0);

struct HitCurves {
  std::vector<double> t;
  std::vector<double> far1;  // fraction absorbed by receiver 1 up to t
  std::vector<double> far2;
};

// Cumulative fractions on a time grid. Hit times are exact step multiples, so
// membership is tested against t + dt/2 to keep grid points that coincide
// with step boundaries stable.
HitCurves empirical_hitting(const std::vector<HitRecord>& records,
                            std::vector<double> t_grid, double dt);

struct ErrorMapCell {
  Vec3 pos2;
  bool skipped = false;       // simulation impossible for this placement
  bool overlap_free = false;
  bool approx_valid = false;
  double ae_far1 = 0.0;       // |series - empirical| at the probe time
  double ae_far2 = 0.0;
};

// Absolute analytic-vs-empirical error with receiver 2 swept over positions.
// Placements the walker cannot simulate are marked skipped, others carry the
// far-field validity annotation.
std::vector<ErrorMapCell> error_map(const Scenario& base,
                                    const std::vector<Vec3>& positions,
                                    double t, const SimConfig& cfg,
                                    int n_workers = 0,
                                    const SeriesConfig& series = {});

}  // namespace mcvd
