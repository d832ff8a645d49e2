#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "manybeam/curve.hpp"

namespace manybeam {

// 15 significant digits, locale-independent (decimal point forced to '.').
std::string format_full(double v);

// Curve CSV: '#' metadata lines (method, dz, threshold, rod count), then a
// theta0,theta1,eta(m1;m2),... header and one row per angle pair. Wall time
// is deliberately not written so repeated runs are byte-identical.
void write_curve_csv(std::ostream& os, const RockingCurve& curve);
void write_curve_csv(const std::string& path, const RockingCurve& curve);

// Inverse of write_curve_csv. Throws IoError on unreadable, truncated or
// malformed input.
RockingCurve read_curve_csv(std::istream& is);
RockingCurve read_curve_csv(const std::string& path);

// One timing table row of the method comparison harness.
struct BenchRecord {
  std::string method;
  double dz = 0.0;
  int repeats = 0;
  double median_seconds = 0.0;
  double err_reference = 0.0;              // against the fine reference curve
  std::optional<double> err_baseline;      // against the same-dz baseline curve
  std::string status = "ok";               // ok | failed
  std::string detail;                      // failure reason
};

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records);

}  // namespace manybeam
