#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mcvd_tools/scenario_io.hpp"
#include "mcvd_tools/validation.hpp"

namespace mcvd::tools {

struct CommonOptions {
  std::uint64_t seed = 0;  // 0 keeps the scenario seed
  int workers = 0;         // 0 resolves MCVD_THREADS, then hardware
};

// worker cap from the MCVD_THREADS environment variable, hardware otherwise
int resolve_worker_cap();

// hitting probabilities over the scenario time grid
int cmd_hit(const ScenarioFile& file, const CommonOptions& opt, std::ostream& out);

// symmetric two-receiver sweep over the azimuth separation
int cmd_sweep_angle(const ScenarioFile& file, const CommonOptions& opt,
                    std::ostream& out);

// one receiver versus an equal-area split pair
int cmd_gain(const ScenarioFile& file, const CommonOptions& opt, std::ostream& out);

enum class AucMode { analytic, closed, mc, all };

struct AucOptions {
  std::string sweep;  // "N" or "R"; empty infers from the scenario grids
  AucMode mode = AucMode::all;
  std::vector<double> grid;  // overrides the scenario grid when nonempty
  std::int64_t mc_trials = 100000;
};

int cmd_auc(const ScenarioFile& file, const CommonOptions& opt,
            const AucOptions& auc, std::ostream& out);

// consistency report, nonzero exit when any check fails
int cmd_validate(const ScenarioFile& file, const ValidationOptions& opt,
                 std::ostream& out);

struct ErrorMapOptions {
  std::string grid_spec;  // "x0:x1:nx,y0:y1:ny", default covers +-40 um
  double t = 0.0;         // 0 uses the scenario probe time
  std::int64_t particles = 0;
};

int cmd_error_map(const ScenarioFile& file, const CommonOptions& opt,
                  const ErrorMapOptions& em, std::ostream& out);

}  // namespace mcvd::tools
