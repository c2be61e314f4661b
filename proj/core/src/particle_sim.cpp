#include "mcvd/particle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mcvd/errors.hpp"
#include "mcvd/rng.hpp"

namespace mcvd {

namespace {

int resolve_workers(int n_workers, std::int64_t n_particles) {
  int w = n_workers > 0 ? n_workers
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  if (n_particles < w) w = std::max<std::int64_t>(n_particles, 1);
  return w;
}

struct WalkParams {
  double c1x, c1y, c1z;
  double c2x, c2y, c2z;
  double a2;     // squared absorption radius
  double sigma;  // per-axis step deviation
  std::int64_t n_steps;
  double dt;
  std::uint64_t seed;
};

void walk_range(const WalkParams& p, std::int64_t begin, std::int64_t end,
                HitRecord* out) {
  for (std::int64_t i = begin; i < end; ++i) {
    auto g = rng::make_stream(p.seed, static_cast<std::uint64_t>(i));
    double x = 0.0, y = 0.0, z = 0.0;
    HitRecord rec{Outcome::survived,
                  std::numeric_limits<double>::quiet_NaN()};
    for (std::int64_t k = 1; k <= p.n_steps; ++k) {
      x += p.sigma * rng::normal01(g);
      y += p.sigma * rng::normal01(g);
      z += p.sigma * rng::normal01(g);
      const double d1x = x - p.c1x, d1y = y - p.c1y, d1z = z - p.c1z;
      const double q1 = d1x * d1x + d1y * d1y + d1z * d1z;
      const double d2x = x - p.c2x, d2y = y - p.c2y, d2z = z - p.c2z;
      const double q2 = d2x * d2x + d2y * d2y + d2z * d2z;
      if (q1 < p.a2 || q2 < p.a2) {
        rec.outcome = q1 <= q2 ? Outcome::far1 : Outcome::far2;
        rec.hit_time = static_cast<double>(k) * p.dt;
        break;
      }
    }
    out[i] = rec;
  }
}

}  // namespace

std::vector<HitRecord> simulate(const Scenario& s, const SimConfig& cfg,
                                int n_workers) {
  if (cfg.n_particles < 0) throw std::invalid_argument("negative particle count");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(cfg.t_max > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(s.diffusion_coeff > 0.0))
    throw std::invalid_argument("diffusion coefficient must be positive");

  const FarGeometry g = derive_geometry(s);
  const double a = s.far_radius;
  if (!(a > 0.0) || g.r1 <= a || g.r2 <= a)
    throw GeometryError("receiver must have positive radius and exclude the transmitter");
  if (!g.overlap_free)
    throw GeometryError("overlapping receivers cannot be simulated");

  WalkParams p;
  p.c1x = s.pos1.x; p.c1y = s.pos1.y; p.c1z = s.pos1.z;
  p.c2x = s.pos2.x; p.c2y = s.pos2.y; p.c2z = s.pos2.z;
  p.a2 = a * a;
  p.sigma = std::sqrt(2.0 * s.diffusion_coeff * cfg.dt);
  p.n_steps = static_cast<std::int64_t>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  p.dt = cfg.dt;
  p.seed = cfg.seed;

  std::vector<HitRecord> out(static_cast<std::size_t>(cfg.n_particles));
  if (cfg.n_particles == 0) return out;

  const int workers = resolve_workers(n_workers, cfg.n_particles);
  if (workers == 1) {
    walk_range(p, 0, cfg.n_particles, out.data());
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (cfg.n_particles + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, cfg.n_particles);
    if (begin >= end) break;
    pool.emplace_back(walk_range, std::cref(p), begin, end, out.data());
  }
  for (auto& th : pool) th.join();
  return out;
}

HitCurves empirical_hitting(const std::vector<HitRecord>& records,
                            std::vector<double> t_grid, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  std::sort(t_grid.begin(), t_grid.end());
  HitCurves c;
  c.t = std::move(t_grid);
  c.far1.assign(c.t.size(), 0.0);
  c.far2.assign(c.t.size(), 0.0);
  if (records.empty()) return c;
  const double n = static_cast<double>(records.size());
  for (const auto& r : records) {
    if (r.outcome == Outcome::survived) continue;
    auto& curve = r.outcome == Outcome::far1 ? c.far1 : c.far2;
    // first grid index whose slack window contains the hit
    for (std::size_t k = 0; k < c.t.size(); ++k) {
      if (r.hit_time <= c.t[k] + 0.5 * dt) {
        curve[k] += 1.0;
        break;
      }
    }
  }
  // counts landed in the first covering bin, accumulate and normalize
  double acc1 = 0.0, acc2 = 0.0;
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    acc1 += c.far1[k];
    acc2 += c.far2[k];
    c.far1[k] = acc1 / n;
    c.far2[k] = acc2 / n;
  }
  return c;
}

std::vector<ErrorMapCell> error_map(const Scenario& base,
                                    const std::vector<Vec3>& positions,
                                    double t, const SimConfig& cfg,
                                    int n_workers, const SeriesConfig& series) {
  if (!(t > 0.0)) throw std::invalid_argument("probe time must be positive");
  std::vector<ErrorMapCell> cells;
  cells.reserve(positions.size());
  for (const Vec3& pos : positions) {
    Scenario s = base;
    s.pos2 = pos;
    ErrorMapCell cell;
    cell.pos2 = pos;
    const double r2 = norm(pos);
    const double a = s.far_radius;
    if (r2 == 0.0 || r2 <= a || norm(sub(s.pos1, pos)) <= 2.0 * a ||
        norm(s.pos1) <= a) {
      cell.skipped = true;
      cells.push_back(cell);
      continue;
    }
    const FarGeometry g = derive_geometry(s);
    cell.overlap_free = g.overlap_free;
    cell.approx_valid = g.approx_valid;
    SimConfig probe = cfg;
    probe.t_max = t;
    const auto records = simulate(s, probe, n_workers);
    const auto curves = empirical_hitting(records, {t}, cfg.dt);
    cell.ae_far1 = std::abs(p2_hit(t, g, 1, a, s.diffusion_coeff, series) -
                            curves.far1.front());
    cell.ae_far2 = std::abs(p2_hit(t, g, 2, a, s.diffusion_coeff, series) -
                            curves.far2.front());
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace mcvd
