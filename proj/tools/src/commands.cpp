#include "mcvd_tools/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "json.hpp"
#include "mcvd/detection.hpp"
#include "mcvd/errors.hpp"
#include "mcvd/link.hpp"
#include "mcvd/particle_sim.hpp"
#include "mcvd/rng.hpp"
#include "mcvd/version.hpp"

namespace mcvd::tools {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex16(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t effective_seed(const ScenarioFile& file, const CommonOptions& opt) {
  return opt.seed != 0 ? opt.seed : file.sim.seed;
}

void write_header(std::ostream& out, const ScenarioFile& file, std::uint64_t seed) {
  out << "# mcvd-duo " << kVersion << " seed=" << seed << " scenario="
      << hex16(file.hash) << "\n";
}

void gate_geometry(const Scenario& s) {
  const ValidityReport rep = validity_report(s);
  for (const auto& issue : rep.issues)
    if (issue.severity == ValidityIssue::Severity::error)
      throw GeometryError(issue.what);
}

std::vector<double> parse_axis(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
    throw SchemaError("bad grid axis '" + spec + "', expected lo:hi:count");
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    axis.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
  return axis;
}

}  // namespace

int resolve_worker_cap() {
  if (const char* env = std::getenv("MCVD_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int cmd_hit(const ScenarioFile& file, const CommonOptions& opt, std::ostream& out) {
  const Scenario& s = file.scenario;
  gate_geometry(s);
  if (file.sweep.t_grid.empty())
    throw SchemaError("hit needs a nonempty sweep.t_grid");
  const FarGeometry g = derive_geometry(s);
  write_header(out, file, effective_seed(file, opt));
  out << "t,p1_far1,p1_far2,p2_far1,p2_far2,p_total\n";
  for (const double t : file.sweep.t_grid) {
    const double p2a = p2_hit(t, g, 1, s.far_radius, s.diffusion_coeff);
    const double p2b = p2_hit(t, g, 2, s.far_radius, s.diffusion_coeff);
    out << g17(t) << ',' << g17(p1_hit(t, s.far_radius, g.r1, s.diffusion_coeff))
        << ',' << g17(p1_hit(t, s.far_radius, g.r2, s.diffusion_coeff)) << ','
        << g17(p2a) << ',' << g17(p2b) << ',' << g17(p2a + p2b) << "\n";
  }
  return 0;
}

int cmd_sweep_angle(const ScenarioFile& file, const CommonOptions& opt,
                    std::ostream& out) {
  const Scenario& s = file.scenario;
  const double a = s.far_radius;
  const double r = norm(s.pos1);
  if (r <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  std::vector<double> grid = file.sweep.phi_grid_deg;
  if (grid.empty())
    for (double d = file.sweep.min_phi_deg; d <= 180.0 + 1e-9; d += 5.0)
      grid.push_back(d);
  for (const double deg : grid)
    if (deg < file.sweep.min_phi_deg - 1e-12)
      throw GeometryError("sweep angle below the configured minimum");
  const double t = file.sweep.t;
  write_header(out, file, effective_seed(file, opt));
  out << "phi_deg,R,overlap_free,skipped,p2_far1,p2_far2,p_total\n";
  for (const double deg : grid) {
    const FarGeometry g = symmetric_geometry(r, deg * kPi / 180.0, a);
    out << g17(deg) << ',' << g17(g.R) << ',' << (g.overlap_free ? 1 : 0) << ',';
    if (g.R12 * g.R21 <= a * a) {
      // receivers stacked onto one ray, the interaction series has no value
      out << "1,nan,nan,nan\n";
      continue;
    }
    const double p2a = p2_hit(t, g, 1, a, s.diffusion_coeff);
    const double p2b = p2_hit(t, g, 2, a, s.diffusion_coeff);
    out << "0," << g17(p2a) << ',' << g17(p2b) << ',' << g17(p2a + p2b) << "\n";
  }
  return 0;
}

int cmd_gain(const ScenarioFile& file, const CommonOptions& opt, std::ostream& out) {
  const Scenario& s = file.scenario;
  gate_geometry(s);
  if (file.sweep.t_grid.empty())
    throw SchemaError("gain needs a nonempty sweep.t_grid");
  const FarGeometry two = equal_area_pair_geometry(s);
  const double r1 = norm(s.pos1);
  write_header(out, file, effective_seed(file, opt));
  out << "t,p1_single,p_total_two,gain,bound_small_t,gain_infinity\n";
  for (const double t : file.sweep.t_grid) {
    const GainResult g = gain(t, s.far_radius, r1, two, s.diffusion_coeff);
    out << g17(t) << ',' << g17(g.p1_single) << ',' << g17(g.p_total_two) << ','
        << g17(g.value) << ',' << g17(g.bound_small_t) << ','
        << g17(g.gain_infinity) << "\n";
  }
  return 0;
}

namespace {

struct AucRow {
  double closed[3];
  double numeric[3];
  double mc[3];
};

AucRow auc_point(const Scenario& sc, const TapVector& t1, const TapVector& t2,
                 const AucOptions& auc, std::uint64_t seed, int workers) {
  AucRow row{};
  const int l = sc.slots;
  const HypothesisStats s1 = hypothesis_stats(t1, sc, l);
  const HypothesisStats s2 = hypothesis_stats(t2, sc, l);
  const HypothesisStats sj = joint_stats(s1, s2);
  const HypothesisStats* sts[3] = {&s1, &s2, &sj};
  const bool want_closed = auc.mode == AucMode::closed || auc.mode == AucMode::all;
  const bool want_numeric = auc.mode == AucMode::analytic || auc.mode == AucMode::all;
  const bool want_mc = auc.mode == AucMode::mc || auc.mode == AucMode::all;
  for (int k = 0; k < 3; ++k) {
    if (want_closed) row.closed[k] = auc_closed_form(*sts[k]);
    if (want_numeric) row.numeric[k] = auc_numeric(*sts[k]);
  }
  if (want_mc) {
    const auto samples = simulate_link_pair(t1, t2, sc, l, auc.mc_trials, seed, workers);
    std::vector<double> c0[3], c1[3];
    for (const auto& sm : samples) {
      auto& dst0 = sm.true_bit ? c1 : c0;
      dst0[0].push_back(sm.y1);
      dst0[1].push_back(sm.y2);
      dst0[2].push_back(sm.y1 + sm.y2);
    }
    for (int k = 0; k < 3; ++k) row.mc[k] = auc_empirical(c0[k], c1[k]);
  }
  return row;
}

}  // namespace

int cmd_auc(const ScenarioFile& file, const CommonOptions& opt,
            const AucOptions& auc, std::ostream& out) {
  const Scenario& s = file.scenario;
  gate_geometry(s);
  std::string sweep = auc.sweep;
  if (sweep.empty())
    sweep = !file.sweep.n_grid.empty() ? "N" : "R";
  if (sweep != "N" && sweep != "R")
    throw SchemaError("auc sweep must be N or R");
  std::vector<double> grid = !auc.grid.empty()
                                 ? auc.grid
                                 : (sweep == "N" ? file.sweep.n_grid
                                                 : file.sweep.r_grid);
  if (grid.empty()) throw SchemaError("auc sweep grid is empty");

  const std::uint64_t seed = effective_seed(file, opt);
  const int workers = opt.workers > 0 ? opt.workers : resolve_worker_cap();
  const bool want_closed = auc.mode == AucMode::closed || auc.mode == AucMode::all;
  const bool want_numeric = auc.mode == AucMode::analytic || auc.mode == AucMode::all;
  const bool want_mc = auc.mode == AucMode::mc || auc.mode == AucMode::all;

  write_header(out, file, seed);
  out << "sweep_value";
  if (want_closed) out << ",auc1_closed,auc2_closed,auc_joint_closed";
  if (want_numeric) out << ",auc1_numeric,auc2_numeric,auc_joint_numeric";
  if (want_mc) out << ",auc1_mc,auc2_mc,auc_joint_mc";
  out << "\n";

  const FarGeometry base_geom = derive_geometry(s);
  TapVector base_t1, base_t2;
  if (sweep == "N") {
    base_t1 = channel_taps(base_geom, 1, s.far_radius, s.diffusion_coeff,
                           s.slot_duration, s.slots);
    base_t2 = channel_taps(base_geom, 2, s.far_radius, s.diffusion_coeff,
                           s.slot_duration, s.slots);
  }

  std::size_t point = 0;
  for (const double value : grid) {
    Scenario sc = s;
    TapVector t1 = base_t1, t2 = base_t2;
    if (sweep == "N") {
      sc.molecules_per_bit = value;
    } else {
      const Vec3 dir = sub(s.pos2, s.pos1);
      const double len = norm(dir);
      if (len == 0.0)
        throw GeometryError("separation sweep needs distinct receiver positions");
      sc.pos2 = {s.pos1.x + value * dir.x / len, s.pos1.y + value * dir.y / len,
                 s.pos1.z + value * dir.z / len};
      gate_geometry(sc);
      const FarGeometry g = derive_geometry(sc);
      t1 = channel_taps(g, 1, sc.far_radius, sc.diffusion_coeff,
                        sc.slot_duration, sc.slots);
      t2 = channel_taps(g, 2, sc.far_radius, sc.diffusion_coeff,
                        sc.slot_duration, sc.slots);
    }
    const std::uint64_t point_seed = seed ^ rng::mix64(0xa5e1u + point);
    const AucRow row = auc_point(sc, t1, t2, auc, point_seed, workers);
    out << g17(value);
    if (want_closed)
      out << ',' << g17(row.closed[0]) << ',' << g17(row.closed[1]) << ','
          << g17(row.closed[2]);
    if (want_numeric)
      out << ',' << g17(row.numeric[0]) << ',' << g17(row.numeric[1]) << ','
          << g17(row.numeric[2]);
    if (want_mc)
      out << ',' << g17(row.mc[0]) << ',' << g17(row.mc[1]) << ','
          << g17(row.mc[2]);
    out << "\n";
    ++point;
  }
  return 0;
}

int cmd_validate(const ScenarioFile& file, const ValidationOptions& opt,
                 std::ostream& out) {
  ValidationOptions effective = opt;
  if (effective.workers <= 0) effective.workers = resolve_worker_cap();
  const auto checks = run_validation(file, effective);

  nlohmann::ordered_json doc;
  doc["tool"] = "mcvd-duo";
  doc["version"] = kVersion;
  doc["seed"] = effective.seed != 0 ? effective.seed : file.sim.seed;
  doc["scenario_hash"] = hex16(file.hash);
  bool all_pass = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"observed", c.observed},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  doc["checks"] = std::move(arr);
  doc["all_pass"] = all_pass;
  out << doc.dump(2) << "\n";
  return all_pass ? 0 : 4;
}

int cmd_error_map(const ScenarioFile& file, const CommonOptions& opt,
                  const ErrorMapOptions& em, std::ostream& out) {
  const Scenario& s = file.scenario;
  const std::string spec =
      em.grid_spec.empty() ? "-40:40:5,-40:40:5" : em.grid_spec;
  const auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw SchemaError("error-map grid must be two axes 'x0:x1:nx,y0:y1:ny'");
  const auto xs = parse_axis(spec.substr(0, comma));
  const auto ys = parse_axis(spec.substr(comma + 1));
  std::vector<Vec3> probes;
  probes.reserve(xs.size() * ys.size());
  for (const double y : ys)
    for (const double x : xs) probes.push_back({x, y, s.pos2.z});

  SimConfig cfg = file.sim;
  if (em.particles > 0) cfg.n_particles = em.particles;
  if (opt.seed != 0) cfg.seed = opt.seed;
  const double t = em.t > 0.0 ? em.t : file.sweep.t;
  const int workers = opt.workers > 0 ? opt.workers : resolve_worker_cap();
  const auto cells = error_map(s, probes, t, cfg, workers);

  write_header(out, file, cfg.seed);
  out << "x,y,r2,R,skipped,overlap_free,approx_valid,ae_far1,ae_far2\n";
  const double nan = std::nan("");
  for (const auto& cell : cells) {
    const double r2 = norm(cell.pos2);
    const double R = norm(sub(s.pos1, cell.pos2));
    out << g17(cell.pos2.x) << ',' << g17(cell.pos2.y) << ',' << g17(r2) << ','
        << g17(R) << ',' << (cell.skipped ? 1 : 0) << ','
        << (cell.overlap_free ? 1 : 0) << ',' << (cell.approx_valid ? 1 : 0)
        << ',' << g17(cell.skipped ? nan : cell.ae_far1) << ','
        << g17(cell.skipped ? nan : cell.ae_far2) << "\n";
  }
  return 0;
}

}  // namespace mcvd::tools
