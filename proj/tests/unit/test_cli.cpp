#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "viscycle/cli/commands.hpp"
#include "viscycle/cli/run_config.hpp"
#include "viscycle/robustness.hpp"

using namespace viscycle;
using namespace viscycle::cli;
using doctest::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// quantity,value rows into a map; skips the metadata and header lines.
std::map<std::string, std::string> kv(const std::string& csv) {
  std::map<std::string, std::string> m;
  const auto ls = lines(csv);
  for (std::size_t k = 2; k < ls.size(); ++k) {
    const auto comma = ls[k].rfind(',');
    m[ls[k].substr(0, comma)] = ls[k].substr(comma + 1);
  }
  return m;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "viscycle_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_angle requires a unit") {
  CHECK(parse_angle("90deg") == Approx(M_PI / 2));
  CHECK(parse_angle(" 1.5rad ") == 1.5);
  CHECK(parse_angle("-45deg") == Approx(-M_PI / 4));
  CHECK_THROWS_AS(parse_angle("90"), UsageError);
  CHECK_THROWS_AS(parse_angle("deg"), UsageError);
  CHECK_THROWS_AS(parse_angle("9x0deg"), UsageError);
}

TEST_CASE("parse_states forms") {
  const auto s = parse_states("bloch:0,0,1; polar:90deg,0deg ;pol:45deg");
  REQUIRE(s.size() == 3);
  CHECK(s[0].bloch().isApprox(Eigen::Vector3d::UnitZ()));
  CHECK(s[1].bloch().isApprox(Eigen::Vector3d::UnitX(), 1e-12));
  // 45 degree polarization sits on the Bloch equator
  CHECK(s[2].bloch().isApprox(Eigen::Vector3d::UnitX(), 1e-12));
  CHECK_THROWS_AS(parse_states("bloch:0,0,2"), UsageError);
  CHECK_THROWS_AS(parse_states("bloch:0,1"), UsageError);
  CHECK_THROWS_AS(parse_states("spin:0,0,1"), UsageError);
  CHECK_THROWS_AS(parse_states("0,0,1"), UsageError);
  CHECK_THROWS_AS(parse_states(""), UsageError);
  CHECK_THROWS_AS(parse_states("polar:1,2"), UsageError);
}

TEST_CASE("presets") {
  CHECK(preset_states("theorem1").size() == 3);
  CHECK(preset_states("classical-vertex-111").size() == 3);
  CHECK(preset_states("four-path-polarization").size() == 4);
  CHECK_THROWS_AS(preset_states("nope"), UsageError);
  CHECK(preset_names().size() == 3);
}

TEST_CASE("table matches the printed bounds") {
  const auto r6 = invoke({"table", "--n", "6"});
  CHECK(r6.code == 0);
  const auto ls = lines(r6.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[3].find("3.523") != std::string::npos);
  CHECK(ls[3].find("0.923") != std::string::npos);

  const auto r3 = invoke({"table", "--n", "3"});
  const auto l3 = lines(r3.out);
  REQUIRE(l3.size() == 2);
  std::istringstream row(l3[1]);
  std::string n, c, q, e;
  row >> n >> c >> q >> e;
  CHECK(n == "3");
  CHECK(c == "1");
  CHECK(q == "1.250");
  CHECK(e == "0.894");

  const auto r100 = invoke({"table", "--n", "100", "--format", "csv"});
  CHECK(r100.code == 0);
  const auto lc = lines(r100.out);
  REQUIRE(lc.size() == 2 + 98);
  CHECK(lc[0].starts_with("#"));
  CHECK(lc[1] == "n,classical_bound,quantum_max,eta_min");
  double prev = 0.0;
  for (std::size_t k = 2; k < lc.size(); ++k) {
    const double eta = std::stod(fields(lc[k])[3]);
    CHECK(eta > prev);
    prev = eta;
  }
  CHECK(invoke({"table", "--n", "2"}).code == kExitUsage);
  CHECK(invoke({"table", "--n", "5", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("bounds for n = 4") {
  const auto r = invoke({"bounds", "--n", "4"});
  CHECK(r.code == 0);
  const auto m = kv(r.out);
  CHECK(m.at("classical_bound") == "2");
  CHECK(m.at("quantum_max").starts_with("2.4142135"));
  CHECK(m.at("eta_min").starts_with("0.9101"));
}

TEST_CASE("certify presets and exit codes") {
  const auto t1 = invoke({"certify", "--preset", "theorem1"});
  CHECK(t1.code == kExitOk);
  CHECK(std::stod(kv(t1.out).at("s_value")) == Approx(1.25).epsilon(1e-12));
  CHECK(kv(t1.out).at("gram_feasible") == "true");
  CHECK(kv(t1.out).at("noise_assumption") == kNoiseAssumption);

  const auto c = invoke({"certify", "--preset", "classical-vertex-111"});
  CHECK(c.code == kExitNoViolation);
  CHECK(std::stod(kv(c.out).at("s_value")) == 1.0);

  const auto p = invoke({"certify", "--preset", "four-path-polarization"});
  CHECK(p.code == kExitOk);
  CHECK(std::stod(kv(p.out).at("s_value")) == Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));

  // uniform eta below the threshold removes the violation
  CHECK(invoke({"certify", "--preset", "theorem1", "--eta", "0.85"}).code == kExitNoViolation);
  CHECK(invoke({"certify", "--preset", "theorem1", "--eta", "0.9"}).code == kExitOk);

  // explicit states override the preset
  const auto s = invoke({"certify", "--preset", "theorem1", "--states",
                         "bloch:0,0,1;bloch:0,0,1;bloch:0,0,1;bloch:0,0,1"});
  CHECK(s.code == kExitNoViolation);
  CHECK(kv(s.out).at("n") == "4");
}

TEST_CASE("exit-code matrix for invalid input") {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frobnicate"},
      {"certify"},
      {"certify", "--preset", "nope"},
      {"certify", "--states", "bloch:0,0,1;pol:10"},
      {"certify", "--states", "bloch:0,0,1;bloch:1,0,0"},
      {"certify", "--preset", "theorem1", "--eta", "0"},
      {"certify", "--preset", "theorem1", "--eta", "1.5"},
      {"certify", "--preset", "theorem1", "--weights", "0.2,0.3,0.5"},
      {"simulate", "--preset", "theorem1", "--weights", "0.5,0.5"},
      {"simulate", "--preset", "theorem1", "--shots", "0"},
      {"optimize", "--n", "2"},
      {"optimize", "--n", "4", "--restarts", "0"},
      {"bounds", "--n", "abc"},
      {"gram", "--r12", "0.5"},
      {"gram", "--r12", "1.5", "--r23", "0.5"},
      {"gram", "--r12", "0.5", "--r23", "0.5", "--r13", "0.5", "--phase", "1"},
      {"bounds", "--n", "4", "--output", "/nonexistent-dir/x.csv"},
  };
  for (const auto& args : bad) {
    const auto r = invoke(args);
    CAPTURE(args.size());
    CHECK(r.code == kExitUsage);
    CHECK_FALSE(r.err.empty());
  }
  const std::vector<std::vector<std::string>> good{
      {"bounds", "--n", "3"},
      {"optimize", "--n", "3", "--restarts", "3"},
      {"gram", "--r12", "0.5", "--r23", "0.5"},
      {"table", "--n", "4"},
      {"simulate", "--preset", "theorem1", "--shots", "100"},
  };
  for (const auto& args : good) CHECK(invoke(args).code == kExitOk);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("optimize reaches the tabulated value") {
  const auto r = invoke({"optimize", "--n", "5", "--restarts", "50", "--seed", "1"});
  CHECK(r.code == 0);
  const auto m = kv(r.out);
  CHECK(std::abs(std::stod(m.at("s_value")) - 3.523) < 5e-4);
  CHECK(m.at("matched_closed_form") == "true");
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::stod(m.at("step_" + std::to_string(k))) == Approx(M_PI / 5).epsilon(1e-4));
  }
}

TEST_CASE("gram command") {
  const auto r = invoke({"gram", "--r12", "0.75", "--r23", "0.75", "--r13", "0.2", "--phase", "0rad"});
  CHECK(r.code == 0);
  const auto m = kv(r.out);
  CHECK(std::stod(m.at("min_r13")) == Approx(0.25));
  CHECK(std::stod(m.at("max_s_given")) == Approx(1.25));
  CHECK(m.at("feasible") == "false");
  CHECK(std::stod(m.at("det")) < 0.0);
}

TEST_CASE("simulate fixed-seed regression") {
  const auto r = invoke({"simulate", "--preset", "theorem1", "--shots", "100000", "--seed", "7"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() >= 6);
  CHECK(ls[1] == "kind,i,j,true_value,estimate,std_err");
  int pairs = 0;
  for (const auto& l : ls) pairs += l.starts_with("pair,") ? 1 : 0;
  CHECK(pairs == 3);
  const auto s = fields(ls[5]);
  REQUIRE(s[0] == "s_value");
  // Recorded from the first run with this toolchain (libstdc++ Poisson sampler).
  CHECK(std::stod(s[4]) == Approx(1.250988681526777).epsilon(1e-12));
  CHECK(std::stod(s[5]) == Approx(0.0013817374316022878).epsilon(1e-12));
  CHECK(std::abs(std::stod(s[4]) - 1.25) <= 0.02);
}

TEST_CASE("outputs are reproducible byte for byte") {
  const auto dir = scratch_dir();
  const std::vector<std::vector<std::string>> runs{
      {"simulate", "--preset", "four-path-polarization", "--seed", "3", "--shots", "5000"},
      {"optimize", "--n", "4", "--restarts", "5", "--seed", "2"},
      {"certify", "--preset", "theorem1"},
      {"bounds", "--n", "7"},
      {"table", "--n", "9", "--format", "csv"},
  };
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      auto args = runs[k];
      const auto path = dir / ("run" + std::to_string(k) + "_" + std::to_string(rep) + ".csv");
      args.insert(args.end(), {"--output", path.string()});
      const auto r = invoke(args);
      CHECK(r.out.empty());
      const std::string text = slurp(path);
      CHECK(text.find('\r') == std::string::npos);
      CHECK(text.back() == '\n');
      if (rep == 0) {
        first = text;
      } else {
        CHECK(text == first);
      }
    }
  }
}

TEST_CASE("simulate writes raw scans") {
  const auto dir = scratch_dir();
  const auto path = dir / "scans.csv";
  const auto r = invoke({"simulate", "--preset", "theorem1", "--shots", "1000", "--seed", "1",
                         "--scan-output", path.string()});
  CHECK(r.code == 0);
  const auto ls = lines(slurp(path));
  REQUIRE(ls.size() == 2 + 3 * 32);
  CHECK(ls[1] == "i,j,phase,counts,shots_per_point");
}

TEST_CASE("simulate with path probabilities reweights") {
  const auto r = invoke({"simulate", "--preset", "theorem1", "--weights", "0.5,0.3,0.2", "--seed",
                         "4"});
  CHECK(r.code == 0);
  const auto s = fields(lines(r.out)[5]);
  CHECK(std::abs(std::stod(s[4]) - 1.25) <= 0.03);
}

TEST_CASE("config file with command-line precedence") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# detector states from the optimal triple\n"
      << "states = bloch:0.8660254037844386,0,0.5;bloch:0,0,1;bloch:-0.8660254037844386,0,0.5\n"
      << "eta = 0.85\n";
  }
  const auto noisy = invoke({"certify", "--config", cfg.string()});
  CHECK(noisy.code == kExitNoViolation);
  CHECK(kv(noisy.out).at("eta") == "0.84999999999999998");

  const auto override = invoke({"certify", "--config", cfg.string(), "--eta", "1"});
  CHECK(override.code == kExitOk);
  CHECK(std::stod(kv(override.out).at("s_value")) == Approx(1.25).epsilon(1e-12));

  const auto bad = dir / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "unknown_key = 3\n";
  }
  CHECK(invoke({"bounds", "--config", bad.string()}).code == kExitUsage);
}
