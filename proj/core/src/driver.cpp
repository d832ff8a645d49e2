#include "manybeam/driver.hpp"

#include <algorithm>
#include <chrono>

#include "manybeam/sweep.hpp"

namespace manybeam {

const std::vector<double> kBenchDzPresets = {0.010, 0.015, 0.022, 0.033, 0.047, 0.068,
                                             0.10,  0.15,  0.22,  0.33,  0.47,  0.68};

namespace {

RockingCurve solve_with(const RunConfig& cfg, const std::string& method, double dz) {
  SweepOptions opts = cfg.sweep_options();
  opts.method = method;
  opts.dz = dz;
  const RodSet rods = RodSet::build(cfg.lattice, cfg.rod_cutoff);
  return rocking_curve(*cfg.field, rods, cfg.gamma, cfg.angles, opts);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

RockingCurve simulate_curve(const RunConfig& cfg) {
  return solve_with(cfg, cfg.method, cfg.dz);
}

void run_simulate(const RunConfig& cfg, const std::string& out_path) {
  const std::string& path = out_path.empty() ? cfg.out : out_path;
  if (path.empty()) throw ConfigError("simulate: no output path (config \"out\" or --out)");
  write_curve_csv(path, simulate_curve(cfg));
}

std::vector<BenchRecord> run_bench(const RunConfig& cfg, std::vector<std::string> methods,
                                   std::vector<double> dz_values, int repeats) {
  if (!cfg.bench) throw ConfigError("bench: config has no \"bench\" section");
  const BenchConfig& bench = *cfg.bench;
  if (methods.empty())
    methods = bench.methods.empty()
                  ? std::vector<std::string>{"conventional", "rk4", "sp4", "sp6"}
                  : bench.methods;
  if (dz_values.empty())
    dz_values = bench.dz_values.empty() ? kBenchDzPresets : bench.dz_values;
  if (repeats < 1) repeats = bench.repeats;
  if (repeats < 3) throw ConfigError("bench: repeats must be >= 3");

  const RockingCurve reference = solve_with(cfg, bench.reference.method, bench.reference.dz);
  RockingCurve baseline;
  if (bench.baseline) baseline = solve_with(cfg, bench.baseline->method, bench.baseline->dz);

  std::vector<BenchRecord> records;
  records.reserve(methods.size() * dz_values.size());
  for (const std::string& method : methods) {
    for (double dz : dz_values) {
      BenchRecord rec;
      rec.method = method;
      rec.dz = dz;
      rec.repeats = repeats;
      try {
        RockingCurve curve;
        std::vector<double> times;
        times.reserve((std::size_t)repeats);
        for (int r = 0; r < repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          curve = solve_with(cfg, method, dz);
          const auto t1 = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        rec.median_seconds = median(std::move(times));
        rec.err_reference = curve_error(curve, reference);
        if (bench.baseline) rec.err_baseline = curve_error(curve, baseline);
      } catch (const Error& e) {
        rec.status = "failed";
        rec.detail = e.what();
        rec.median_seconds = 0.0;
        rec.err_reference = 0.0;
        rec.err_baseline.reset();
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

double run_compare(const std::string& path_a, const std::string& path_b) {
  const RockingCurve a = read_curve_csv(path_a);
  const RockingCurve b = read_curve_csv(path_b);
  return curve_error(a, b);
}

}  // namespace manybeam
