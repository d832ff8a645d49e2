#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "manybeam/potential.hpp"
#include "manybeam/rods.hpp"
#include "manybeam/sweep.hpp"

namespace manybeam {

// One named solver run inside the bench harness.
struct BenchRunSpec {
  std::string method = "sp6";
  double dz = 0.001;
};

struct BenchConfig {
  BenchRunSpec reference;                 // fine-dz truth for the accuracy error
  std::optional<BenchRunSpec> baseline;   // designated curve for the original-code-style error
  std::vector<std::string> methods;       // empty: all four
  std::vector<double> dz_values;          // empty: E-6 presets
  int repeats = 5;
};

// Full run description, parsed from a single JSON document. Unknown keys are
// rejected at every nesting level so typos fail loudly.
struct RunConfig {
  double gamma = 1.0;
  Lattice2D lattice;
  double rod_cutoff = 0.0;
  std::optional<PotentialField> field;  // always set after a successful parse
  AngleGrid angles;
  std::string method = "conventional";
  double dz = 0.01;
  double rhst_threshold = 1000.0;
  int threads = 1;  // 0: hardware concurrency
  std::string out;  // optional output path; CLI --out overrides
  std::optional<BenchConfig> bench;

  SweepOptions sweep_options() const;
};

RunConfig parse_config(const nlohmann::json& j);

// Reads and parses a config file. Unreadable file: IoError. Bad JSON or a
// schema violation: ConfigError.
RunConfig load_config(const std::string& path);

}  // namespace manybeam
