#pragma once

#include <vector>

#include "mcvd/geometry.hpp"

namespace mcvd {

struct SeriesConfig {
  double term_floor = 1e-16;  // neglect terms smaller than this
  int max_terms = 200;
};

struct SeriesEval {
  double value = 0.0;
  int terms_used = 0;
  bool converged = true;  // false when max_terms hit before the floor
};

// Probability that a molecule released at t=0 has been absorbed by time t,
// single receiver of radius a at radial distance r, no competitor.
double p1_hit(double t, double a, double r, double D);

// same, t -> infinity
double p1_eventual(double a, double r);

// Absorption probability by time t for receiver far_index (1 or 2) when both
// receivers compete. Reflection series over alternating cross distances,
// truncated at term_floor. Throws GeometryError when a receiver contains the
// transmitter or the series geometry degenerates (R12*R21 <= a^2, receivers
// stacked toward the transmitter).
SeriesEval p2_hit_series(double t, const FarGeometry& g, int far_index,
                         double a, double D, const SeriesConfig& cfg = {});
double p2_hit(double t, const FarGeometry& g, int far_index, double a,
              double D, const SeriesConfig& cfg = {});

// eventual (t -> infinity) absorption probability under competition,
// dedicated closed form, not a large-t series evaluation
double p2_eventual(const FarGeometry& g, int far_index, double a);

// how much the competitor removes from the single receiver eventual value;
// p1_eventual(r_i) - p2_eventual(i) equals this identically
double reduction_eventual(const FarGeometry& g, int far_index, double a);

// combined absorption probability of the pair by time t
double p_total(double t, const FarGeometry& g, double a, double D,
               const SeriesConfig& cfg = {});

// slot-indexed channel taps: taps[n] = p2((n+1) Ts) - p2(n Ts)
struct TapVector {
  int far_index = 0;
  double slot_duration = 0.0;
  std::vector<double> taps;
};

TapVector channel_taps(const FarGeometry& g, int far_index, double a, double D,
                       double slot_duration, int n_slots,
                       const SeriesConfig& cfg = {});

// Area-equivalent comparison of one receiver of radius a against two of
// radius a/sqrt(2) each (same total surface), equidistant at r1. gain is
// combined two-receiver absorption over the single receiver value.
struct GainResult {
  double value = 0.0;          // NaN at t = 0 where both sides vanish
  double p1_single = 0.0;
  double p_total_two = 0.0;
  double bound_small_t = 0.0;  // +inf where the bound expires
  bool bound_valid = false;    // t < (r1-a)^2 / (2 D)
  double gain_infinity = 0.0;  // eventual-ratio limit 2 Rij / (sqrt(2) Rij + a)
};

// geom_two must be derived with receiver radius a/sqrt(2); use
// equal_area_pair_geometry for that. Throws GeometryError unless the two
// receivers are equidistant.
GainResult gain(double t, double a, double r1, const FarGeometry& geom_two,
                double D, const SeriesConfig& cfg = {});

// scenario geometry rebuilt with the split radius far_radius/sqrt(2)
FarGeometry equal_area_pair_geometry(const Scenario& s);

}  // namespace mcvd
