#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcvd/geometry.hpp"
#include "mcvd/particle_sim.hpp"

namespace mcvd::tools {

// malformed scenario file: bad JSON, unknown keys, wrong types or shapes
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> t_grid;
  std::vector<double> phi_grid_deg;
  std::vector<double> n_grid;
  std::vector<double> r_grid;
  double t = 15.0;            // probe time for angle sweeps and error maps
  double min_phi_deg = 20.0;  // smallest admissible sweep angle
};

struct ScenarioFile {
  Scenario scenario;
  SimConfig sim;
  SweepSpec sweep;
  std::uint64_t hash = 0;  // FNV-1a over the raw file bytes
  std::string path;
};

std::uint64_t fnv1a64(const std::string& bytes);

// strict loader, rejects unknown keys at every level
ScenarioFile load_scenario(const std::string& path);
ScenarioFile parse_scenario(const std::string& json_text, const std::string& name);

}  // namespace mcvd::tools
