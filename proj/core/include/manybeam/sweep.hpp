#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "manybeam/curve.hpp"
#include "manybeam/potential.hpp"
#include "manybeam/rods.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// The rocking sweep: rows are ordered theta1-major, theta0 strictly
// increasing inside each theta1 block.
struct AngleGrid {
  std::vector<double> theta0;  // degrees
  std::vector<double> theta1;  // degrees

  static AngleGrid validated(std::vector<double> theta0, std::vector<double> theta1);
  long rows() const { return (long)(theta0.size() * theta1.size()); }
};

struct SweepOptions {
  std::string method = "conventional";  // conventional | rk4 | sp4 | sp6
  double dz = 0.01;                     // target slice width, A
  double rhst_threshold = 1000.0;       // stepper methods only
  int threads = 1;                      // <= 0 picks hardware concurrency
  std::size_t table_budget_bytes = (std::size_t)1 << 30;
};

// Solves every grid row with the selected method. Work is distributed over
// a thread pool but each row lands in a preassigned slot and sees the same
// potential evaluations, so the result is identical for any thread count.
// When the field carries a bulk period each row is seeded with that row's
// converged bulk reflection.
RockingCurve rocking_curve(const PotentialField& field, const RodSet& rods, double gamma,
                           const AngleGrid& grid, const SweepOptions& opts);

}  // namespace manybeam
