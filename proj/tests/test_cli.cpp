#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

// End-to-end tests of the command-line tool, exercised through the shell.

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const std::string& tag) {
  const std::string out_path = "/tmp/spinbath_test_" + tag + ".out";
  const std::string cmd = std::string(SPINBATH_CLI_PATH) + " " + args + " > " +
                          out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return {WEXITSTATUS(rc), slurp(out_path)};
}

// data rows of a CSV report (skips '#' metadata and the header row)
std::vector<std::vector<double>> csv_rows(const std::string& body) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of("0123456789+-.eE,") != std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("scan: monotone cv in the low- and high-temperature windows") {
  // low-T window: rising cv (the ratio-10 window stops short of the
  // small-root Schottky bump at theta ~ 0.05)
  for (auto [ratio, win] :
       {std::pair<const char*, const char*>{"0.1", "--theta-min 1e-3 --theta-max 0.1"},
        {"1", "--theta-min 1e-3 --theta-max 0.1"},
        {"10", "--theta-min 1e-3 --theta-max 0.02"}}) {
    auto r = run(std::string("scan --ratios ") + ratio + " " + win +
                     " --points 25 --log",
                 std::string("scan_low_") + ratio);
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 25);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][4] > rows[i - 1][4]);
  }
  // high-T window: falling cv (ratio 10 starts past its big-root peak at 4.4)
  for (auto [ratio, win] :
       {std::pair<const char*, const char*>{"0.1", "--theta-min 3 --theta-max 100"},
        {"1", "--theta-min 3 --theta-max 100"},
        {"10", "--theta-min 6 --theta-max 100"}}) {
    auto r = run(std::string("scan --ratios ") + ratio + " " + win +
                     " --points 25 --log",
                 std::string("scan_high_") + ratio);
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][4] < rows[i - 1][4]);
  }
}

TEST_CASE("scan: byte-identical output for identical config and seed") {
  const std::string args =
      "scan --ratios 0.5 --theta-min 0.01 --theta-max 10 --points 12 --seed 9";
  auto a = run(args, "det_a");
  auto b = run(args, "det_b");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 9") != std::string::npos);
  CHECK(a.out.find("# units:") != std::string::npos);
}

TEST_CASE("scan: thread count does not change the output") {
  auto t1 = run("scan --ratios 0.3 --points 16 --threads 1", "thr1");
  auto t4 = run("scan --ratios 0.3 --points 16 --threads 4", "thr4");
  CHECK(t1.exit_code == 0);
  CHECK(t1.out == t4.out);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("scan --no-such-flag", "bad_flag").exit_code == 2);
  CHECK(run("scan --theta-min -1", "bad_theta").exit_code == 2);
  CHECK(run("scan --points 1", "bad_points").exit_code == 2);
  CHECK(run("", "no_subcommand").exit_code == 2);
  CHECK(run("transition --ratios 1 2", "narrow_span").exit_code == 2);
}

TEST_CASE("transition: bracket failure names the ratio and exits 3") {
  auto r = run("transition --ratios 0.1 1.5 --theta-min 1e-3 --theta-max 2e-3",
               "tr_bracket");
  CHECK(r.exit_code == 3);
}

TEST_CASE("series-check: default passes, absurd tolerance fails honestly") {
  auto ok = run("series-check", "sc_ok");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("g_dual_evaluation_max_rel") != std::string::npos);
  auto bad = run("series-check --tol 1e-16", "sc_bad");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("series-check: JSON report round-trips through its schema") {
  auto r = run("series-check --format json", "sc_json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["tool"] == "spinbath");
  CHECK(j["command"] == "series-check");
  CHECK(j.contains("units"));
  CHECK(j.contains("config"));
  REQUIRE(j.contains("checks"));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("tolerance"));
    CHECK(c["pass"].is_boolean());
    CHECK(bool(c["pass"]));
  }
  // round trip: parse -> dump -> parse is identity
  auto again = nlohmann::json::parse(j.dump());
  CHECK(again == j);
}

TEST_CASE("transition: fit fields and qualitative trends") {
  auto r = run("transition --ratios 0.01 0.1 1 10 --points 120 --format json", "tr");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("results"));
  CHECK(j["results"].contains("fit_slope"));
  CHECK(j["results"].contains("fit_intercept"));
  CHECK(j["results"].contains("fit_r_squared"));
  auto rows = j["rows"];
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(double(rows[i][1]) > double(rows[i - 1][1]));  // theta_R increasing
    CHECK(double(rows[i][2]) < double(rows[i - 1][2]));  // cv_peak decreasing
  }
}

TEST_CASE("bath-verify: passes at default sizes, seed change flips stats only") {
  const std::string base = "bath-verify --fe-modes 512 --format json";
  auto a = run(base + " --seed 42", "bv_a");
  auto b = run(base + " --seed 10", "bv_b");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  auto ja = nlohmann::json::parse(a.out);
  auto jb = nlohmann::json::parse(b.out);
  // statistics differ ...
  CHECK(double(ja["rows"][1][1]) != double(jb["rows"][1][1]));
  // ... but every check passes either way
  for (const auto& c : ja["checks"]) CHECK(bool(c["pass"]));
  for (const auto& c : jb["checks"]) CHECK(bool(c["pass"]));
}

TEST_CASE("bath-verify: deterministic across thread counts") {
  const std::string base =
      "bath-verify --modes 64 --samples 2000 --fe-modes 64 --lags 20";
  auto t1 = run(base + " --threads 1", "bv_t1");
  auto t4 = run(base + " --threads 4", "bv_t4");
  CHECK(t1.out == t4.out);
}

TEST_CASE("config file provides defaults, flags override") {
  {
    std::ofstream cfg("/tmp/spinbath_test.cfg");
    cfg << "ratios=0.5\n"
        << "theta-min=0.1\n"
        << "theta-max=1.0\n"
        << "points=5\n";
  }
  auto from_file = run("scan --config /tmp/spinbath_test.cfg", "cfg_a");
  REQUIRE(from_file.exit_code == 0);
  CHECK(csv_rows(from_file.out).size() == 5);
  auto overridden = run("scan --config /tmp/spinbath_test.cfg --points 7", "cfg_b");
  REQUIRE(overridden.exit_code == 0);
  CHECK(csv_rows(overridden.out).size() == 7);
}

TEST_CASE("scan --output writes the file") {
  const char* path = "/tmp/spinbath_test_outfile.csv";
  std::remove(path);
  auto r = run(std::string("scan --ratios 1 --points 3 -o ") + path, "outfile");
  CHECK(r.exit_code == 0);
  const std::string body = slurp(path);
  CHECK(body.find("ratio,theta,free_energy,entropy,cv") != std::string::npos);
  CHECK(csv_rows(body).size() == 3);
}
