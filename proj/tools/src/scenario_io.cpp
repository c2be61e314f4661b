#include "mcvd_tools/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcvd::tools {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (key == k) known = true;
    if (!known)
      throw SchemaError("unknown key '" + key + "' in " + where);
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    throw SchemaError("missing required key '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number())
    throw SchemaError("key '" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

double optional_number(const json& obj, const char* key, double fallback,
                       const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw SchemaError("key '" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

Vec3 require_vec3(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    throw SchemaError("missing required key '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    throw SchemaError("key '" + std::string(key) + "' in " + where +
                      " must be an array of three numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<double> optional_grid(const json& obj, const char* key,
                                  const std::string& where) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array())
    throw SchemaError("key '" + std::string(key) + "' in " + where + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number())
      throw SchemaError("grid '" + std::string(key) + "' in " + where +
                        " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ScenarioFile parse_scenario(const std::string& json_text, const std::string& name) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("scenario '" + name + "' is not valid JSON: " + e.what());
  }
  if (!root.is_object())
    throw SchemaError("scenario '" + name + "' must be a JSON object");
  reject_unknown(root, {"diffusion_coeff", "far_radius", "pos1", "pos2", "link",
                        "sim", "sweep"},
                 name);

  ScenarioFile file;
  file.hash = fnv1a64(json_text);
  file.path = name;
  Scenario& s = file.scenario;
  s.diffusion_coeff = require_number(root, "diffusion_coeff", name);
  s.far_radius = require_number(root, "far_radius", name);
  s.pos1 = require_vec3(root, "pos1", name);
  s.pos2 = require_vec3(root, "pos2", name);

  if (root.contains("link")) {
    const json& link = root.at("link");
    if (!link.is_object()) throw SchemaError("'link' must be an object in " + name);
    reject_unknown(link,
                   {"slot_duration", "molecules_per_bit", "bit_prior",
                    "noise_mean", "noise_var", "slots"},
                   name + ".link");
    s.slot_duration = optional_number(link, "slot_duration", s.slot_duration, name);
    s.molecules_per_bit =
        optional_number(link, "molecules_per_bit", s.molecules_per_bit, name);
    s.bit_prior = optional_number(link, "bit_prior", s.bit_prior, name);
    s.noise_mean = optional_number(link, "noise_mean", s.noise_mean, name);
    s.noise_var = optional_number(link, "noise_var", s.noise_var, name);
    if (link.contains("slots")) {
      if (!link.at("slots").is_number_integer())
        throw SchemaError("'link.slots' must be an integer in " + name);
      s.slots = link.at("slots").get<int>();
    }
  }

  if (root.contains("sim")) {
    const json& sim = root.at("sim");
    if (!sim.is_object()) throw SchemaError("'sim' must be an object in " + name);
    reject_unknown(sim, {"n_particles", "dt", "t_max", "seed"}, name + ".sim");
    if (sim.contains("n_particles")) {
      if (!sim.at("n_particles").is_number_integer())
        throw SchemaError("'sim.n_particles' must be an integer in " + name);
      file.sim.n_particles = sim.at("n_particles").get<std::int64_t>();
    }
    file.sim.dt = optional_number(sim, "dt", file.sim.dt, name);
    file.sim.t_max = optional_number(sim, "t_max", file.sim.t_max, name);
    if (sim.contains("seed")) {
      if (!sim.at("seed").is_number_unsigned() && !sim.at("seed").is_number_integer())
        throw SchemaError("'sim.seed' must be an integer in " + name);
      file.sim.seed = sim.at("seed").get<std::uint64_t>();
    }
  }

  if (root.contains("sweep")) {
    const json& sweep = root.at("sweep");
    if (!sweep.is_object()) throw SchemaError("'sweep' must be an object in " + name);
    reject_unknown(sweep,
                   {"t_grid", "phi_grid_deg", "n_grid", "r_grid", "t",
                    "min_phi_deg"},
                   name + ".sweep");
    file.sweep.t_grid = optional_grid(sweep, "t_grid", name);
    file.sweep.phi_grid_deg = optional_grid(sweep, "phi_grid_deg", name);
    file.sweep.n_grid = optional_grid(sweep, "n_grid", name);
    file.sweep.r_grid = optional_grid(sweep, "r_grid", name);
    file.sweep.t = optional_number(sweep, "t", file.sweep.t, name);
    file.sweep.min_phi_deg =
        optional_number(sweep, "min_phi_deg", file.sweep.min_phi_deg, name);
  }
  return file;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace mcvd::tools
