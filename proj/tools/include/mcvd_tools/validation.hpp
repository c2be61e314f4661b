#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd_tools/scenario_io.hpp"

namespace mcvd::tools {

struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// partial tap sums must reproduce the cumulative curve and never exceed the
// eventual mass; catches corrupted or misordered tap vectors
CheckResult tap_conservation_check(const TapVector& taps, const FarGeometry& g,
                                   double a, double D);

// closed-form eventual values against the long-horizon series
CheckResult eventual_consistency_check(const FarGeometry& g, int far_index,
                                       double a, double D);

// single receiver eventual identity: lone minus competing equals reduction
CheckResult eventual_identity_check(const FarGeometry& g, int far_index, double a);

// empirical absorption fraction against the series at one probe time
CheckResult particle_match_check(const Scenario& s, const SimConfig& cfg,
                                 double t_probe, int far_index, int workers);

// Monte Carlo link moments against the Gaussian hypothesis statistics,
// reported as the worst z-score across both means and variances
CheckResult link_moment_check(const Scenario& s, const TapVector& taps,
                              std::int64_t trials, std::uint64_t seed,
                              int workers);

struct ValidationOptions {
  std::int64_t particles_override = 0;  // 0 keeps the scenario value
  std::int64_t trials = 20000;
  std::uint64_t seed = 0;  // 0 keeps the scenario value
  int workers = 0;
};

std::vector<CheckResult> run_validation(const ScenarioFile& file,
                                        const ValidationOptions& opt);

}  // namespace mcvd::tools
