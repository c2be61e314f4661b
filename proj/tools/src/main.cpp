#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "mcvd/errors.hpp"
#include "mcvd_tools/commands.hpp"
#include "mcvd_tools/scenario_io.hpp"
#include "mcvd_tools/validation.hpp"

namespace tools = mcvd::tools;

namespace {

struct OutSink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    stream = &file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytical and simulated hitting statistics for a duo of absorbing receivers"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  tools::CommonOptions common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--seed", common.seed, "override the scenario seed");
    sub->add_option("--workers", common.workers, "worker thread cap");
  };

  std::vector<double> t_grid_override;
  std::vector<double> phi_grid_override;
  double t_override = 0.0;

  auto* hit = app.add_subcommand("hit", "hitting probabilities over the time grid");
  add_common(hit);
  hit->add_option("--t-grid", t_grid_override, "override the scenario time grid");

  auto* sweep = app.add_subcommand(
      "sweep-angle", "two-receiver hitting probability versus angular separation");
  add_common(sweep);
  sweep->add_option("--phi-grid", phi_grid_override, "override the angle grid (degrees)");
  sweep->add_option("--t", t_override, "override the probe time");

  auto* gain_cmd = app.add_subcommand(
      "gain", "area-preserving split of one receiver into two, gain versus time");
  add_common(gain_cmd);
  gain_cmd->add_option("--t-grid", t_grid_override, "override the scenario time grid");

  auto* auc_cmd = app.add_subcommand("auc", "detection AUC sweeps");
  add_common(auc_cmd);
  tools::AucOptions auc_opt;
  std::string mode_name = "all";
  auc_cmd->add_option("--sweep", auc_opt.sweep, "sweep variable: N or R (default: infer)");
  auc_cmd->add_option("--mode", mode_name, "analytic, closed, mc, or all")
      ->check(CLI::IsMember({"analytic", "closed", "mc", "all"}));
  auc_cmd->add_option("--grid", auc_opt.grid, "override sweep grid values");
  auc_cmd->add_option("--mc-trials", auc_opt.mc_trials, "Monte Carlo trials per point");

  auto* validate_cmd =
      app.add_subcommand("validate", "cross-check the analytic model against simulation");
  add_common(validate_cmd);
  tools::ValidationOptions val_opt;
  validate_cmd->add_option("--particles", val_opt.particles_override,
                           "override particle count");
  validate_cmd->add_option("--trials", val_opt.trials, "link simulation trials");

  auto* em_cmd = app.add_subcommand(
      "error-map", "absolute analytic-vs-simulated error over receiver-2 positions");
  add_common(em_cmd);
  tools::ErrorMapOptions em_opt;
  em_cmd->add_option("--grid", em_opt.grid_spec, "grid as x0:x1:nx,y0:y1:ny");
  em_cmd->add_option("--t", em_opt.t, "observation time (default: sweep.t)");
  em_cmd->add_option("--particles", em_opt.particles, "particles per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    tools::ScenarioFile file = tools::load_scenario(scenario_path);
    if (!t_grid_override.empty()) file.sweep.t_grid = t_grid_override;
    if (!phi_grid_override.empty()) file.sweep.phi_grid_deg = phi_grid_override;
    if (t_override > 0.0) file.sweep.t = t_override;
    OutSink sink;
    sink.open(out_path);

    if (*hit) return tools::cmd_hit(file, common, *sink.stream);
    if (*sweep) return tools::cmd_sweep_angle(file, common, *sink.stream);
    if (*gain_cmd) return tools::cmd_gain(file, common, *sink.stream);
    if (*auc_cmd) {
      if (mode_name == "analytic") auc_opt.mode = tools::AucMode::analytic;
      else if (mode_name == "closed") auc_opt.mode = tools::AucMode::closed;
      else if (mode_name == "mc") auc_opt.mode = tools::AucMode::mc;
      else auc_opt.mode = tools::AucMode::all;
      return tools::cmd_auc(file, common, auc_opt, *sink.stream);
    }
    if (*validate_cmd) {
      val_opt.seed = common.seed;
      val_opt.workers = common.workers;
      return tools::cmd_validate(file, val_opt, *sink.stream);
    }
    if (*em_cmd) return tools::cmd_error_map(file, common, em_opt, *sink.stream);
    return 1;
  } catch (const tools::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mcvd::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
