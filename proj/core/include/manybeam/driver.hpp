#pragma once

#include <string>
#include <vector>

#include "manybeam/config.hpp"
#include "manybeam/csvio.hpp"
#include "manybeam/curve.hpp"

namespace manybeam {

// E-6 preferred-number step widths swept by the default bench grid, in A.
extern const std::vector<double> kBenchDzPresets;

// Solves the configured rocking curve in memory.
RockingCurve simulate_curve(const RunConfig& cfg);

// simulate subcommand: solve and write the curve CSV.
void run_simulate(const RunConfig& cfg, const std::string& out_path);

// bench subcommand: time every (method, dz) cell around the solve loop only,
// median of `repeats` runs, with errors against the configured reference
// curve (and baseline curve when present). Reference or baseline failure
// aborts; a failing cell becomes a status=failed row.
// Empty `methods`: all four. Empty `dz_values`: the E-6 presets. repeats < 1
// picks the configured (or default 5) count.
std::vector<BenchRecord> run_bench(const RunConfig& cfg, std::vector<std::string> methods,
                                   std::vector<double> dz_values, int repeats);

// compare subcommand: the rocking-curve distance between two CSV files.
double run_compare(const std::string& path_a, const std::string& path_b);

}  // namespace manybeam
