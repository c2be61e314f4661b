#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd/geometry.hpp"
#include "mcvd_tools/validation.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + MCVD_DUO_BIN + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_file(const std::string& name) {
  return std::string(MCVD_DATA_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) fields.push_back(f);
  return fields;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("hit sweep emits the documented table") {
  const auto r = run_cli("hit --scenario " + data_file("fig2a.json"));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0].rfind("# mcvd-duo 1.0.0 seed=20260819 scenario=", 0) == 0);
  CHECK(lines[0].size() == std::string("# mcvd-duo 1.0.0 seed=20260819 scenario=").size() + 16);
  CHECK(lines[1] == "t,p1_far1,p1_far2,p2_far1,p2_far2,p_total");
  const auto row = fields_of(lines[4]);  // t = 15
  REQUIRE(row.size() == 6);
  CHECK(num(row[0]) == 15.0);
  CHECK(std::abs(num(row[1]) - 0.1080128113565243562387) < 1e-12);
  CHECK(std::abs(num(row[3]) - 0.08719356065224115339179) < 1e-12);
  CHECK(std::abs(num(row[5]) - (num(row[3]) + num(row[4]))) < 1e-16);

  const auto again = run_cli("hit --scenario " + data_file("fig2a.json"));
  CHECK(again.code == 0);
  CHECK(again.out == r.out);  // byte identical rerun
}

TEST_CASE("seed flag overrides the scenario seed in the header") {
  const auto r = run_cli("hit --scenario " + data_file("fig2a.json") + " --seed 42");
  REQUIRE(r.code == 0);
  CHECK(lines_of(r.out)[0].rfind("# mcvd-duo 1.0.0 seed=42 scenario=", 0) == 0);
}

TEST_CASE("time grid flag overrides the scenario grid") {
  const auto r = run_cli("hit --scenario " + data_file("fig2a.json") + " --t-grid 15");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(std::abs(num(fields_of(lines[2])[3]) - 0.08719356065224115339179) < 1e-12);
}

TEST_CASE("output file holds exactly the stdout bytes") {
  const std::string path = "/tmp/mcvd_cli_out_test.csv";
  const auto to_stdout = run_cli("hit --scenario " + data_file("fig2a.json"));
  const auto r = run_cli("hit --scenario " + data_file("fig2a.json") + " --out " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_stdout.out);
  std::remove(path.c_str());
}

TEST_CASE("schema problems exit with code 2") {
  CHECK(run_cli("hit --scenario " + data_file("bad_unknown_key.json")).code == 2);
  CHECK(run_cli("hit --scenario " + data_file("bad_missing_field.json")).code == 2);
  CHECK(run_cli("hit --scenario /nonexistent.json").code == 2);
  // grid-less scenario asked for a time sweep
  CHECK(run_cli("hit --scenario " + data_file("taps_conservation.json")).code == 2);
}

TEST_CASE("geometry problems exit with code 3") {
  CHECK(run_cli("hit --scenario " + data_file("bad_overlap.json")).code == 3);
  CHECK(run_cli("gain --scenario " + data_file("bad_overlap.json")).code == 3);
  // the narrow-angle pair overlaps too; only the angle sweep may touch it
  CHECK(run_cli("hit --scenario " + data_file("fig2c.json") + " --t-grid 15").code == 3);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("hit --help").code == 0);
}

TEST_CASE("angle sweep annotates overlap and symmetry") {
  const auto r = run_cli("sweep-angle --scenario " + data_file("fig2c.json"));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 14);
  CHECK(lines[1] == "phi_deg,R,overlap_free,skipped,p2_far1,p2_far2,p_total");
  double best_total = 0.0, total_at_180 = 0.0;
  for (size_t i = 2; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 7);
    CHECK(f[3] == "0");
    CHECK(f[4] == f[5]);  // equidistant receivers split the flux evenly
    best_total = std::max(best_total, num(f[6]));
    if (num(f[0]) == 180.0) total_at_180 = num(f[6]);
  }
  CHECK(total_at_180 == best_total);  // widest separation collects the most
  const auto first = fields_of(lines[2]);
  CHECK(num(first[0]) == 20.0);
  CHECK(first[2] == "0");  // chord below one diameter
  CHECK(std::abs(num(first[4]) - 0.1219499701830567638532) < 1e-12);
  const auto last = fields_of(lines[13]);
  CHECK(last[2] == "1");
}

TEST_CASE("angle sweep rejects angles below the configured minimum") {
  const auto r = run_cli("sweep-angle --scenario " + data_file("fig2c.json") +
                         " --phi-grid 10 90");
  CHECK(r.code == 3);
}

TEST_CASE("stacked receivers come back as skipped markers") {
  const auto r = run_cli("sweep-angle --scenario " + data_file("angle_degenerate.json"));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  const auto degenerate = fields_of(lines[2]);
  CHECK(degenerate[3] == "1");
  CHECK(degenerate[4] == "nan");
  CHECK(degenerate[6] == "nan");
  const auto healthy = fields_of(lines[3]);
  CHECK(healthy[3] == "0");
  CHECK(num(healthy[6]) > 0.0);
}

TEST_CASE("gain sweep matches the split-receiver model") {
  const auto r = run_cli("gain --scenario " + data_file("fig3.json"));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);
  CHECK(lines[1] == "t,p1_single,p_total_two,gain,bound_small_t,gain_infinity");
  const double root2 = std::sqrt(2.0);
  for (size_t i = 2; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 6);
    CHECK(num(f[3]) < root2);
    CHECK(std::abs(num(f[5]) - 1.314213562373095048802) < 1e-12);
    if (num(f[0]) == 0.1) CHECK(std::abs(num(f[4]) - 0.3039529718501536360338) < 1e-10);
    if (num(f[0]) == 1.0) CHECK(std::abs(num(f[3]) - 1.160440963814335102055) < 1e-10);
  }
}

TEST_CASE("closed form auc sweep over molecule count") {
  const auto r = run_cli("auc --scenario " + data_file("fig4a.json") + " --mode closed");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[1] == "sweep_value,auc1_closed,auc2_closed,auc_joint_closed");
  const auto n100 = fields_of(lines[2]);
  CHECK(num(n100[0]) == 100.0);
  CHECK(std::abs(num(n100[1]) - 0.9937765368620219402482) < 1e-12);
  for (size_t i = 2; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    CHECK(num(f[3]) >= num(f[1]) - 1e-6);
    CHECK(num(f[1]) >= num(f[2]) - 1e-6);
  }
}

TEST_CASE("numeric auc sweep over separation") {
  const auto r = run_cli("auc --scenario " + data_file("fig4b.json") + " --mode analytic");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[1] == "sweep_value,auc1_numeric,auc2_numeric,auc_joint_numeric");
  const auto r20 = fields_of(lines[2]);
  CHECK(r20[1] == r20[2]);  // equidistant receivers, identical statistics
  CHECK(std::abs(num(r20[2]) - 0.9999981064288763224978) < 1e-9);
  double prev = 2.0;
  for (size_t i = 2; i < lines.size(); ++i) {
    const double auc2 = num(fields_of(lines[i])[2]);
    CHECK(auc2 <= prev + 2e-6);  // farther receiver hears less
    prev = auc2;
  }
  CHECK(std::abs(num(fields_of(lines[8])[2]) - 0.4959234403299472572601) < 1e-9);
}

TEST_CASE("monte carlo auc with no signal sits at one half") {
  const auto r = run_cli("auc --scenario " + data_file("fig4a.json") +
                         " --mode mc --grid 0 --mc-trials 40000");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  const auto f = fields_of(lines[2]);
  REQUIRE(f.size() == 4);
  for (int k = 1; k < 4; ++k) {
    CHECK(num(f[k]) > 0.45);
    CHECK(num(f[k]) < 0.55);
  }
}

TEST_CASE("monte carlo auc reruns are byte identical") {
  const std::string args = "auc --scenario " + data_file("fig4a.json") +
                           " --mode mc --grid 200 --mc-trials 20000";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("validate passes on a healthy scenario regardless of worker cap") {
  const std::string args = "validate --scenario " + data_file("validate_small.json");
  const auto one = run_cli(args, "MCVD_THREADS=1");
  const auto three = run_cli(args, "MCVD_THREADS=3");
  REQUIRE(one.code == 0);
  CHECK(one.out == three.out);
  CHECK(one.out.find("\"all_pass\": true") != std::string::npos);
  CHECK(one.out.find("\"tool\": \"mcvd-duo\"") != std::string::npos);
}

TEST_CASE("validate reports overlapping receivers as a failed check") {
  const auto r = run_cli("validate --scenario " + data_file("bad_overlap.json"));
  CHECK(r.code == 4);
  CHECK(r.out.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("corrupted tap vectors fail the conservation check") {
  using namespace mcvd;
  Scenario s;
  s.pos1 = {30.0, 0.0, 0.0};
  s.pos2 = {30.0, 15.0, 0.0};
  const FarGeometry g = derive_geometry(s);
  TapVector taps = channel_taps(g, 1, s.far_radius, s.diffusion_coeff, 5.0, 8);
  const auto healthy = mcvd::tools::tap_conservation_check(
      taps, g, s.far_radius, s.diffusion_coeff);
  CHECK(healthy.pass);
  taps.taps[3] += 0.05;
  const auto corrupted = mcvd::tools::tap_conservation_check(
      taps, g, s.far_radius, s.diffusion_coeff);
  CHECK_FALSE(corrupted.pass);
  CHECK(corrupted.observed > corrupted.tolerance);
}

TEST_CASE("error map marks impossible placements and fills the grid") {
  const auto r = run_cli("error-map --scenario " + data_file("fig2a.json") +
                         " --grid -40:40:3,-40:40:3 --particles 300 --t 2");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[1] == "x,y,r2,R,skipped,overlap_free,approx_valid,ae_far1,ae_far2");
  int skipped = 0, live = 0;
  for (size_t i = 2; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 9);
    if (f[4] == "1") {
      ++skipped;
      CHECK(f[7] == "nan");
    } else {
      ++live;
      CHECK(num(f[7]) >= 0.0);
      CHECK(num(f[7]) <= 1.0);
    }
  }
  CHECK(skipped >= 1);  // the cell on top of the transmitter at least
  CHECK(live >= 4);
}
