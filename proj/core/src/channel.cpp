#include "mcvd/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mcvd/errors.hpp"
#include "mcvd/numerics.hpp"

namespace mcvd {

namespace {

void check_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
}

void check_diffusion(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("diffusion coefficient must be positive");
}

struct SeriesFrame {
  double ri, rj, Rij, Rji;
};

SeriesFrame frame_for(const FarGeometry& g, int far_index) {
  if (far_index == 1) return {g.r1, g.r2, g.R12, g.R21};
  if (far_index == 2) return {g.r2, g.r1, g.R21, g.R12};
  throw std::invalid_argument("far_index must be 1 or 2");
}

}  // namespace

double p1_hit(double t, double a, double r, double D) {
  check_time(t);
  check_diffusion(D);
  if (!(a > 0.0) || r <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  if (t == 0.0) return 0.0;
  return (a / r) * num::erfc_capped((r - a) / std::sqrt(4.0 * D * t));
}

double p1_eventual(double a, double r) {
  if (!(a > 0.0) || r <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  return a / r;
}

SeriesEval p2_hit_series(double t, const FarGeometry& g, int far_index,
                         double a, double D, const SeriesConfig& cfg) {
  check_time(t);
  check_diffusion(D);
  if (!(cfg.term_floor > 0.0) || cfg.max_terms < 1)
    throw std::invalid_argument("series config needs positive floor and max_terms");
  const auto [ri, rj, Rij, Rji] = frame_for(g, far_index);
  if (!(a > 0.0) || ri <= a || rj <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  if (Rij * Rji <= a * a)
    throw GeometryError("receivers stacked along one ray, interaction series degenerates");
  if (t == 0.0) return {0.0, 0, true};

  const double inv_den = 1.0 / std::sqrt(4.0 * D * t);
  const double step = (Rij - a) + (Rji - a);
  const double c_own = a / ri;
  const double c_other = a * a / (rj * Rji);
  const double rho = a * a / (Rij * Rji);
  double arg_own = ri - a;
  double arg_other = (rj - a) + (Rji - a);
  double prefactor = 1.0;
  double sum = 0.0;
  SeriesEval out;
  out.converged = false;
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double term =
        prefactor * (c_own * num::erfc_capped(arg_own * inv_den) -
                     c_other * num::erfc_capped(arg_other * inv_den));
    if (std::abs(term) < cfg.term_floor) {
      out.converged = true;
      break;
    }
    sum += term;
    out.terms_used = n + 1;
    prefactor *= rho;
    arg_own += step;
    arg_other += step;
  }
  out.value = sum;
  return out;
}

double p2_hit(double t, const FarGeometry& g, int far_index, double a,
              double D, const SeriesConfig& cfg) {
  return p2_hit_series(t, g, far_index, a, D, cfg).value;
}

double p2_eventual(const FarGeometry& g, int far_index, double a) {
  const auto [ri, rj, Rij, Rji] = frame_for(g, far_index);
  if (!(a > 0.0) || ri <= a || rj <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  const double denom = Rij * Rji - a * a;
  if (denom <= 0.0)
    throw GeometryError("receivers stacked along one ray, interaction series degenerates");
  return a * Rij * (Rji / ri - a / rj) / denom;
}

double reduction_eventual(const FarGeometry& g, int far_index, double a) {
  const auto [ri, rj, Rij, Rji] = frame_for(g, far_index);
  if (!(a > 0.0) || ri <= a || rj <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  const double denom = Rij * Rji - a * a;
  if (denom <= 0.0)
    throw GeometryError("receivers stacked along one ray, interaction series degenerates");
  return a * a * (Rij / rj - a / ri) / denom;
}

double p_total(double t, const FarGeometry& g, double a, double D,
               const SeriesConfig& cfg) {
  return p2_hit(t, g, 1, a, D, cfg) + p2_hit(t, g, 2, a, D, cfg);
}

TapVector channel_taps(const FarGeometry& g, int far_index, double a, double D,
                       double slot_duration, int n_slots,
                       const SeriesConfig& cfg) {
  if (!(slot_duration > 0.0)) throw std::invalid_argument("slot duration must be positive");
  if (n_slots < 1) throw std::invalid_argument("need at least one slot");
  TapVector tv;
  tv.far_index = far_index;
  tv.slot_duration = slot_duration;
  tv.taps.reserve(static_cast<std::size_t>(n_slots));
  double prev = 0.0;  // p2 at t = 0
  for (int n = 1; n <= n_slots; ++n) {
    const double cur = p2_hit(n * slot_duration, g, far_index, a, D, cfg);
    double tap = cur - prev;
    if (tap < 0.0) {
      // analytic curve is nondecreasing, only rounding noise can land here
      if (tap < -1e-12) throw std::logic_error("tap increment negative beyond rounding");
      tap = 0.0;
    }
    tv.taps.push_back(tap);
    prev = cur;
  }
  return tv;
}

FarGeometry equal_area_pair_geometry(const Scenario& s) {
  Scenario split = s;
  split.far_radius = s.far_radius / std::sqrt(2.0);
  return derive_geometry(split);
}

GainResult gain(double t, double a, double r1, const FarGeometry& geom_two,
                double D, const SeriesConfig& cfg) {
  check_time(t);
  if (geom_two.r1 != geom_two.r2)
    throw GeometryError("gain comparison needs equidistant receivers");
  const double b = a / std::sqrt(2.0);
  GainResult res;
  res.p1_single = p1_hit(t, a, r1, D);
  res.p_total_two = p_total(t, geom_two, b, D, cfg);
  res.value = res.p1_single > 0.0
                  ? res.p_total_two / res.p1_single
                  : std::numeric_limits<double>::quiet_NaN();
  res.gain_infinity =
      2.0 * geom_two.R12 / (std::sqrt(2.0) * geom_two.R12 + a);
  const double d2 = (r1 - a) * (r1 - a);
  const double denom = 1.0 / std::sqrt(2.0) - std::sqrt(2.0) * D * t / d2;
  res.bound_valid = t > 0.0 && denom > 0.0;
  if (res.bound_valid) {
    const double num = ((2.0 - std::sqrt(2.0)) * a * r1 - 0.5 * a * a);
    res.bound_small_t = (r1 - a) / (r1 - b) * std::exp(-num / (4.0 * D * t)) / denom;
  } else {
    res.bound_small_t = std::numeric_limits<double>::infinity();
  }
  return res;
}

}  // namespace mcvd
