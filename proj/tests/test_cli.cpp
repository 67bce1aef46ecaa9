#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ergrates/cli.hpp"

using namespace ergrates;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream s(text);
  for (std::string line; std::getline(s, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream s(line);
  for (std::string f; std::getline(s, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void check_csv_shape(const std::string& text, const std::string& header) {
  const auto lines = lines_of(text);
  REQUIRE(lines.size() >= 3);
  CHECK(lines.front() == header);
  CHECK(lines[lines.size() - 2].starts_with("# config-hash "));
  CHECK(lines.back() == "# version 1.0.0");
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "ergrates_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("theorem 1 on the canonical example") {
  const auto r = invoke({"verify", "--theorem", "1", "--body", "ball:1", "--measure", "radial:2,1,1",
                         "--phi", "power:2"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "consistent with equivalence");
  CHECK(j["consistent"] == true);
  CHECK(j["sup_ratios"]["i_over_phi"].size() == j["sup_ratios"]["p"].size());
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j["version"] == "1.0.0");
}

TEST_CASE("regionmap label counts") {
  const auto r = invoke({"regionmap", "--grid", "0:4:201"});
  REQUIRE(r.code == kExitOk);
  check_csv_shape(r.out, "alpha1,alpha2,square_family,square_log,circle_family,circle_log,verdict");
  CHECK(r.out.find("# square-labels 5\n") != std::string::npos);
  CHECK(r.out.find("# circle-labels 3\n") != std::string::npos);
}

TEST_CASE("simulate reproduces the spectral identity") {
  const auto r = invoke({"simulate", "--action", "demo20", "--body", "ball:1", "--t", "10,10"});
  REQUIRE(r.code == kExitOk);
  check_csv_shape(r.out, "t_1,t_2,norm_sq,i_k_atomic,abs_diff");
  const auto row = fields(lines_of(r.out)[1]);
  REQUIRE(row.size() == 5);
  CHECK(std::stod(row[4]) < 1e-10);
}

TEST_CASE("fourier along a ray") {
  const auto r = invoke({"fourier", "--body", "ellipsoid:2,1", "--ray", "0:60:31", "--direction", "1,2"});
  REQUIRE(r.code == kExitOk);
  check_csv_shape(r.out, "x_1,x_2,re,im,abs,herz_envelope");
  const auto lines = lines_of(r.out);
  CHECK(lines.size() == 31 + 3);
  CHECK(fields(lines[1]).back().empty());  // no envelope at the origin
  const auto far = fields(lines[31]);
  REQUIRE(far.size() == 6);
  CHECK(std::stod(far[4]) <= 1.2 * std::stod(far[5]));

  const auto cube = invoke({"fourier", "--body", "cube", "--dim", "3", "--box", "0:2:3"});
  REQUIRE(cube.code == kExitOk);
  CHECK(lines_of(cube.out).size() == 27 + 3);
}

TEST_CASE("rates writes CSV and a report") {
  const auto dir = scratch_dir();
  const auto csv = dir / "rates.csv";
  const auto json = dir / "rates.json";
  const auto r = invoke({"rates", "--measure", "radial:1,1,1", "--p", "10:1000", "--out", csv.string(),
                         "--report", json.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  const auto text = slurp(csv);
  check_csv_shape(text, "p,t_1,t_2,I,theta_fit_running");
  const auto lines = lines_of(text);
  CHECK(fields(lines[1]).back().empty());
  CHECK(fields(lines[2]).back().empty());
  CHECK_FALSE(fields(lines[3]).back().empty());
  const auto j = nlohmann::json::parse(slurp(json));
  CHECK(j["fit"]["theta_hat"].get<double>() == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(j["predicted"]["regime"] == "subcritical");
}

TEST_CASE("classify JSON") {
  const auto r = invoke({"classify", "--alpha", "1,2"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["theta"].get<double>() == -3.0);
  CHECK(j.contains("square"));
  CHECK(j.contains("circle"));
  CHECK(j.contains("verdict"));
}

TEST_CASE("config file merges with command-line overrides") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "alpha = 1,1\nr-mode = at-max\n";
  const auto from_file = nlohmann::json::parse(invoke({"classify", "--config", cfg.string()}).out);
  CHECK(from_file["alpha"] == nlohmann::json::array({1.0, 1.0}));
  CHECK(from_file["r_mode"] == "at-max");
  const auto overridden =
      nlohmann::json::parse(invoke({"classify", "--config", cfg.string(), "--alpha", "2,3"}).out);
  CHECK(overridden["alpha"] == nlohmann::json::array({2.0, 3.0}));
  CHECK(overridden["r_mode"] == "at-max");
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"frobnicate"}).code == kExitConfig);
  CHECK(invoke({"classify", "--alpha", "1,-2"}).code == kExitConfig);
  CHECK(invoke({"rates", "--measure", "radial:-1,1,1"}).code == kExitConfig);
  CHECK(invoke({"rates"}).code == kExitConfig);
  CHECK(invoke({"classify", "--config", "/nonexistent/run.cfg"}).code == kExitConfig);
  CHECK(invoke({"verify", "--theorem", "3", "--measure", "radial:4,1,1", "--theta", "-2"}).code ==
        kExitConfig);
  CHECK(invoke({"--help"}).code == kExitOk);

  const auto bad = invoke({"rates", "--measure", "radial:-1,1,1"});
  CHECK(bad.err.find("gamma must be positive") != std::string::npos);
}

TEST_CASE("unreachable tolerance is a numeric-budget failure") {
  const auto r = invoke({"rates", "--body", "cube", "--measure", "aniso:1,2;1,1;1", "--p", "10:1000",
                         "--tolerance", "1e-15"});
  CHECK(r.code == kExitBudget);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::string> verify{"verify", "--theorem", "2", "--measure", "radial:4,1,1", "--p", "10:320"};
  CHECK(invoke(verify).out == invoke(verify).out);
  const std::vector<std::string> map{"regionmap", "--grid", "0:4:41"};
  CHECK(invoke(map).out == invoke(map).out);
}

TEST_CASE("gnuplot script names the CSV") {
  const auto dir = scratch_dir();
  const auto csv = dir / "map.csv";
  const auto gp = dir / "map.gp";
  REQUIRE(invoke({"regionmap", "--grid", "0:4:21", "--out", csv.string(), "--gnuplot", gp.string()}).code ==
          kExitOk);
  CHECK(slurp(gp).find(csv.string()) != std::string::npos);
  CHECK(invoke({"regionmap", "--gnuplot", gp.string()}).code == kExitConfig);
}
