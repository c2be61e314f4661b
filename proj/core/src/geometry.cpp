#include "mcvd/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mcvd/errors.hpp"

namespace mcvd {

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

namespace {

double cross_distance(double r_from, double r_to, double cos_phi, double a) {
  // distance from the near surface point of one receiver to the other center
  const double d = r_from - a;
  return std::sqrt(d * d + r_to * r_to - 2.0 * d * r_to * cos_phi);
}

bool in_far_field(double r1, double r2, double R, double a) {
  return r1 > 3.0 * a && r2 > 3.0 * a && R > 3.0 * a;
}

}  // namespace

FarGeometry derive_geometry(const Scenario& s) {
  FarGeometry g;
  g.r1 = norm(s.pos1);
  g.r2 = norm(s.pos2);
  if (g.r1 == 0.0 || g.r2 == 0.0)
    throw ZeroRadialDistance("receiver center coincides with the transmitter");
  g.phi = std::atan2(norm(cross(s.pos1, s.pos2)), dot(s.pos1, s.pos2));
  g.R = norm(sub(s.pos1, s.pos2));
  const double cos_phi =
      std::clamp(dot(s.pos1, s.pos2) / (g.r1 * g.r2), -1.0, 1.0);
  const double a = s.far_radius;
  g.R12 = cross_distance(g.r1, g.r2, cos_phi, a);
  g.R21 = cross_distance(g.r2, g.r1, cos_phi, a);
  g.overlap_free = g.r1 > a && g.r2 > a && g.R > 2.0 * a;
  g.approx_valid = in_far_field(g.r1, g.r2, g.R, a);
  return g;
}

FarGeometry symmetric_geometry(double r, double phi, double a) {
  if (r == 0.0)
    throw ZeroRadialDistance("receiver center coincides with the transmitter");
  FarGeometry g;
  g.r1 = r;
  g.r2 = r;
  g.phi = phi;
  g.R = 2.0 * r * std::sin(0.5 * phi);
  const double cos_phi = std::cos(phi);
  g.R12 = cross_distance(r, r, cos_phi, a);
  g.R21 = g.R12;
  g.overlap_free = r > a && g.R > 2.0 * a;
  g.approx_valid = in_far_field(r, r, g.R, a);
  return g;
}

ValidityReport validity_report(const Scenario& s) {
  ValidityReport rep;
  auto error = [&rep](std::string msg) {
    rep.issues.push_back({ValidityIssue::Severity::error, std::move(msg)});
    rep.ok = false;
  };
  auto warning = [&rep](std::string msg) {
    rep.issues.push_back({ValidityIssue::Severity::warning, std::move(msg)});
  };

  if (!(s.diffusion_coeff > 0.0)) error("diffusion coefficient must be positive");
  if (!(s.far_radius > 0.0)) error("receiver radius must be positive");

  const double r1 = norm(s.pos1);
  const double r2 = norm(s.pos2);
  if (r1 == 0.0 || r2 == 0.0) {
    error("receiver center coincides with the transmitter");
    return rep;
  }
  const double a = s.far_radius;
  if (r1 <= a) error("receiver 1 contains the transmitter");
  if (r2 <= a) error("receiver 2 contains the transmitter");
  const double R = norm(sub(s.pos1, s.pos2));
  if (R <= 2.0 * a) error("receivers overlap");
  if (!in_far_field(r1, r2, R, a))
    warning("placement leaves the far-field region (r or R under 3 radii), "
            "analytic accuracy degrades");

  if (!(s.slot_duration > 0.0)) error("slot duration must be positive");
  if (s.molecules_per_bit < 0.0) error("molecules per bit must be nonnegative");
  if (s.bit_prior < 0.0 || s.bit_prior > 1.0) error("bit prior must lie in [0, 1]");
  if (s.noise_var < 0.0) error("noise variance must be nonnegative");
  if (s.slots < 1) error("slot count must be at least 1");
  return rep;
}

}  // namespace mcvd
