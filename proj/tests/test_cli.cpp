#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the installed command surface: exit codes, output
// determinism, and the CSV/JSON plumbing, via std::system on the real
// binary (path injected by the build).

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MANYBEAM_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("manybeam_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string run_capture(const std::string& args, int& code) {
  const std::string tmp = fs::temp_directory_path() / "manybeam_cli_capture.txt";
  const int rc = std::system((kCli + " " + args + " >" + tmp + " 2>/dev/null").c_str());
  code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream is(tmp);
  std::stringstream ss;
  ss << is.rdbuf();
  std::remove(tmp.c_str());
  return ss.str();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void put(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
}

const char* kGoodConfig = R"({
  "gamma": 2.5,
  "lattice": {"a1": [2.0, 0.0], "a2": [0.0, 2.6]},
  "rod_cutoff": 5.0,
  "field": {
    "type": "gaussian_layers",
    "z_bottom": -10.0,
    "layers": [
      {"z_center": -2.4, "amplitude": -0.22, "sigma_xy": 2.2, "sigma_z": 1.6, "absorption": 0.08},
      {"z_center": -6.0, "amplitude": -0.18, "sigma_xy": 2.2, "sigma_z": 1.9, "absorption": 0.08}
    ]
  },
  "angles": {"theta0": {"start": 1.0, "stop": 69.0, "step": 1.0}, "theta1": [0.0]},
  "method": "sp4",
  "dz": 0.05
})";

}  // namespace

TEST_CASE("simulate: 69-angle run emits 70 content lines and is reproducible") {
  TempDir dir;
  put(dir.file("cfg.json"), kGoodConfig);
  REQUIRE(run("simulate --config " + dir.file("cfg.json") + " --out " + dir.file("a.csv")) == 0);
  REQUIRE(run("simulate --config " + dir.file("cfg.json") + " --out " + dir.file("b.csv")) == 0);

  const std::string a = slurp(dir.file("a.csv"));
  CHECK(a == slurp(dir.file("b.csv")));  // byte-identical reruns

  long content = 0;
  std::istringstream is(a);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') ++content;
  CHECK(content == 70);  // header + 69 rows
}

TEST_CASE("simulate: thread count does not change the bytes") {
  TempDir dir;
  put(dir.file("cfg.json"), kGoodConfig);
  REQUIRE(run("simulate --config " + dir.file("cfg.json") + " --out " + dir.file("t1.csv") +
              " --threads 1") == 0);
  REQUIRE(run("simulate --config " + dir.file("cfg.json") + " --out " + dir.file("t8.csv") +
              " --threads 8") == 0);
  CHECK(slurp(dir.file("t1.csv")) == slurp(dir.file("t8.csv")));
}

TEST_CASE("compare: identical files give zero, and the metric prints in full precision") {
  TempDir dir;
  put(dir.file("cfg.json"), kGoodConfig);
  REQUIRE(run("simulate --config " + dir.file("cfg.json") + " --out " + dir.file("a.csv")) == 0);
  int code = -1;
  const std::string out = run_capture("compare " + dir.file("a.csv") + " " + dir.file("a.csv"), code);
  CHECK(code == 0);
  CHECK(out == "0.00000000000000E+00\n");
}

TEST_CASE("exit code 2: configuration problems") {
  TempDir dir;
  put(dir.file("bad.json"), "{ this is not json");
  CHECK(run("simulate --config " + dir.file("bad.json") + " --out " + dir.file("x.csv")) == 2);

  put(dir.file("unknown.json"), R"({"gamma": 1.0, "surprise": true})");
  CHECK(run("simulate --config " + dir.file("unknown.json") + " --out " + dir.file("x.csv")) == 2);

  // CLI misuse is a configuration problem too
  CHECK(run("simulate --nonsense") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("exit code 3: solver breakdown") {
  TempDir dir;
  std::string cfg = kGoodConfig;
  // 150 A with the stabilizer disabled overflows mid-propagation; two
  // angles keep the failing run short
  cfg.replace(cfg.find("-10.0"), 5, "-150.0");
  const std::string range = R"({"start": 1.0, "stop": 69.0, "step": 1.0})";
  cfg.replace(cfg.find(range), range.size(), "[1.0, 2.0]");
  cfg.replace(cfg.find("\"dz\": 0.05"), 10, "\"dz\": 0.1, \"rhst_threshold\": \"inf\"");
  put(dir.file("deep.json"), cfg);
  CHECK(run("simulate --config " + dir.file("deep.json") + " --out " + dir.file("x.csv")) == 3);
}

TEST_CASE("exit code 4: comparing mismatched grids") {
  TempDir dir;
  put(dir.file("a.csv"),
      "theta0,theta1,eta(0;0)\n1.00000000000000E+00,0.00000000000000E+00,1.0E-01\n");
  put(dir.file("b.csv"),
      "theta0,theta1,eta(0;0)\n2.00000000000000E+00,0.00000000000000E+00,1.0E-01\n");
  CHECK(run("compare " + dir.file("a.csv") + " " + dir.file("b.csv")) == 4);
}

TEST_CASE("exit code 5: I/O failures") {
  TempDir dir;
  CHECK(run("simulate --config " + dir.file("missing.json") + " --out " + dir.file("x.csv")) == 5);
  CHECK(run("compare " + dir.file("missing_a.csv") + " " + dir.file("missing_b.csv")) == 5);
  put(dir.file("trunc.csv"), "theta0,theta1,eta(0;0)\n1.0,0.0\n");  // short row
  put(dir.file("ok.csv"),
      "theta0,theta1,eta(0;0)\n1.00000000000000E+00,0.00000000000000E+00,1.0E-01\n");
  CHECK(run("compare " + dir.file("ok.csv") + " " + dir.file("trunc.csv")) == 5);
}

TEST_CASE("bench: rows for every method-dz cell with a reference error column") {
  TempDir dir;
  std::string cfg = kGoodConfig;
  cfg.insert(cfg.rfind('}'),
             R"(, "bench": {"reference": {"method": "sp6", "dz": 0.02},
                            "baseline": {"method": "conventional", "dz": 0.05}})");
  // trim the angle grid so the bench stays fast
  const std::string range = R"({"start": 1.0, "stop": 69.0, "step": 1.0})";
  cfg.replace(cfg.find(range), range.size(), "[5.0, 10.0]");
  put(dir.file("bench.json"), cfg);
  REQUIRE(run("bench --config " + dir.file("bench.json") + " --out " + dir.file("bench.csv") +
              " --dz 0.1,0.05 --methods conventional,sp4 --repeats 3") == 0);
  const std::string text = slurp(dir.file("bench.csv"));
  long rows = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#' && line.rfind("method,", 0) != 0) ++rows;
  CHECK(rows == 4);
  CHECK(text.find("sp4,") != std::string::npos);
  CHECK(text.find("conventional,") != std::string::npos);
  CHECK(text.find(",ok,") != std::string::npos);
}

TEST_CASE("version and help do not fail") {
  int code = -1;
  (void)run_capture("--version", code);
  CHECK(code == 0);
  (void)run_capture("--help", code);
  CHECK(code == 0);
}
