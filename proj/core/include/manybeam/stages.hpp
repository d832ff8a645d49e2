#pragma once

#include <cstddef>
#include <vector>

#include "manybeam/potential.hpp"
#include "manybeam/slicing.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// Uniform stepping window [z0, z1]; generalizes a SlicingPlan so bulk
// iterations can step through one period below the surface region.
struct StepWindow {
  double z0 = -1.0;
  double z1 = 0.0;
  long count = 1;
  double h = 1.0;

  static StepWindow over(double z0, double z1, long count) {
    if (!(z0 < z1) || count < 1) throw SolverError("step window: need z0 < z1 and count >= 1");
    return StepWindow{z0, z1, count, (z1 - z0) / (double)count};
  }
  static StepWindow of_plan(const SlicingPlan& p) {
    return StepWindow{p.z_bottom, 0.0, p.count, p.h};
  }
  // exact at both ends, monotone in between
  double z(long i) const {
    return (z0 * (double)(count - i) + z1 * (double)i) / (double)count;
  }
};

// Distinct potential-evaluation heights of one integration step, as
// fractions of the step width. When the schedule touches both endpoints the
// last node of step i coincides with the first node of step i+1 and the
// evaluation is shared.
struct NodeSchedule {
  std::vector<double> frac;  // ascending, unique; snapped to exact 0/1
  bool endpoint_pair() const { return frac.size() >= 2 && frac.front() == 0.0 && frac.back() == 1.0; }
  int nodes() const { return (int)frac.size(); }
};

NodeSchedule midpoint_schedule();                        // {1/2}
NodeSchedule rk4_schedule();                             // {0, 1/2, 1}
NodeSchedule schedule_from_fracs(std::vector<double> raw);  // dedupe + snap

// One formula for node heights, shared by cached and on-the-fly paths so
// both produce bit-identical potentials.
double node_z(const StepWindow& w, long step, int node, const NodeSchedule& sched);

// Shared read-only table of U at every node of every step, reused across
// angle tasks (the potential does not depend on the beam).
class UTable {
 public:
  UTable(const BoundPotential& u, const StepWindow& w, const NodeSchedule& sched);
  const ComplexMatrix& at(long step, int node) const;
  const NodeSchedule& schedule() const { return sched_; }

  static std::size_t bytes_estimate(int n, long steps, const NodeSchedule& sched);

 private:
  NodeSchedule sched_;
  long stride_ = 0;
  std::vector<ComplexMatrix> mats_;
};

}  // namespace manybeam
