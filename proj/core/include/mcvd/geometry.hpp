#pragma once

#include <string>
#include <vector>

namespace mcvd {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double norm(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 sub(const Vec3& a, const Vec3& b);

// Point transmitter at the origin, two absorbing spherical receivers.
// Distances in micrometers, times in seconds, diffusion in um^2/s.
struct Scenario {
  double diffusion_coeff = 100.0;
  double far_radius = 5.0;
  Vec3 pos1;
  Vec3 pos2;
  // per-slot link model
  double slot_duration = 1.0;
  double molecules_per_bit = 1000.0;
  double bit_prior = 0.5;
  double noise_mean = 0.0;
  double noise_var = 0.0;
  int slots = 1;
};

// Derived quantities the hitting model works in. r1, r2 are radial distances
// from the transmitter, phi the angle between the receiver directions, R the
// center separation, R12/R21 the cross distances measured from the point of
// one receiver surface nearest the transmitter to the other center.
struct FarGeometry {
  double r1 = 0.0;
  double r2 = 0.0;
  double phi = 0.0;
  double R = 0.0;
  double R12 = 0.0;
  double R21 = 0.0;
  bool overlap_free = false;
  bool approx_valid = false;
};

// throws ZeroRadialDistance when a receiver sits on the transmitter
FarGeometry derive_geometry(const Scenario& s);

// Both receivers at radial distance r separated by phi (radians). Built so
// the two receivers are bitwise interchangeable, which the symmetric
// placement tests rely on.
FarGeometry symmetric_geometry(double r, double phi, double a);

struct ValidityIssue {
  enum class Severity { error, warning };
  Severity severity;
  std::string what;
};

struct ValidityReport {
  std::vector<ValidityIssue> issues;
  bool ok = true;  // no error-severity issues

  bool has_errors() const { return !ok; }
};

// Never throws; collects everything wrong or questionable about a scenario.
// Overlapping or transmitter-swallowing receivers are errors, leaving the
// far-field accuracy region only earns a warning.
ValidityReport validity_report(const Scenario& s);

}  // namespace mcvd
