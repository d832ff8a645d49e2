#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manybeam/csvio.hpp"
#include "manybeam/driver.hpp"
#include "manybeam/types.hpp"

namespace {

// exit codes: 0 ok, 2 config, 3 solver, 4 comparison mismatch, 5 I/O
int code_for(const std::exception& e) {
  if (dynamic_cast<const manybeam::ConfigError*>(&e)) return 2;
  if (dynamic_cast<const manybeam::CompareError*>(&e)) return 4;
  if (dynamic_cast<const manybeam::IoError*>(&e)) return 5;
  if (dynamic_cast<const manybeam::SolverError*>(&e)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"many-beam reflective diffraction engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "manybeam 0.1.0");
  int threads = -1;  // -1: keep the config's value
  app.add_option("--threads", threads, "worker threads (0 picks hardware concurrency)");

  std::string sim_config, sim_out;
  CLI::App* sim = app.add_subcommand("simulate", "solve a rocking curve and write its CSV");
  sim->fallthrough();  // lets the global --threads appear after the subcommand
  sim->add_option("--config", sim_config, "JSON config path")->required();
  sim->add_option("--out", sim_out, "output CSV path (overrides config \"out\")");

  std::string bench_config, bench_out;
  std::vector<std::string> bench_methods;
  std::vector<double> bench_dz;
  int bench_repeats = 0;  // 0: from config (default 5)
  CLI::App* ben = app.add_subcommand("bench", "time methods across step widths");
  ben->fallthrough();
  ben->add_option("--config", bench_config, "JSON config path")->required();
  ben->add_option("--out", bench_out, "output CSV path")->required();
  ben->add_option("--dz", bench_dz, "step widths to sweep (default: E-6 presets)")
      ->delimiter(',');
  ben->add_option("--methods", bench_methods, "methods to time (default: all four)")
      ->delimiter(',');
  ben->add_option("--repeats", bench_repeats, "timing repeats per cell (median reported)");

  std::string cmp_a, cmp_b;
  CLI::App* cmp = app.add_subcommand("compare", "distance between two curve CSVs");
  cmp->fallthrough();
  cmp->add_option("fileA", cmp_a, "reference curve CSV")->required();
  cmp->add_option("fileB", cmp_b, "candidate curve CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the parse message
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim) {
      manybeam::RunConfig cfg = manybeam::load_config(sim_config);
      if (threads >= 0) cfg.threads = threads;
      manybeam::run_simulate(cfg, sim_out);
    } else if (*ben) {
      manybeam::RunConfig cfg = manybeam::load_config(bench_config);
      if (threads >= 0) cfg.threads = threads;
      manybeam::write_bench_csv(
          bench_out, manybeam::run_bench(cfg, bench_methods, bench_dz, bench_repeats));
    } else if (*cmp) {
      std::printf("%s\n", manybeam::format_full(manybeam::run_compare(cmp_a, cmp_b)).c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return code_for(e);
  }
  return 0;
}
