#include "manybeam/stages.hpp"

#include <algorithm>
#include <cmath>

namespace manybeam {

NodeSchedule midpoint_schedule() { return NodeSchedule{{0.5}}; }

NodeSchedule rk4_schedule() { return NodeSchedule{{0.0, 0.5, 1.0}}; }

NodeSchedule schedule_from_fracs(std::vector<double> raw) {
  for (double& f : raw) {
    if (std::abs(f) < 1e-12) f = 0.0;
    if (std::abs(f - 1.0) < 1e-12) f = 1.0;
  }
  std::sort(raw.begin(), raw.end());
  std::vector<double> uniq;
  for (double f : raw) {
    if (uniq.empty() || f - uniq.back() > 1e-12) uniq.push_back(f);
  }
  return NodeSchedule{std::move(uniq)};
}

double node_z(const StepWindow& w, long step, int node, const NodeSchedule& sched) {
  const double f = sched.frac[node];
  if (f == 0.0) return w.z(step);
  if (f == 1.0) return w.z(step + 1);
  return w.z(step) + f * w.h;
}

UTable::UTable(const BoundPotential& u, const StepWindow& w, const NodeSchedule& sched)
    : sched_(sched) {
  const int k = sched_.nodes();
  if (sched_.endpoint_pair()) {
    stride_ = k - 1;
    mats_.resize((std::size_t)(w.count * stride_ + 1));
    for (long i = 0; i < w.count; ++i)
      for (int m = 0; m < stride_; ++m) u.eval(node_z(w, i, m, sched_), mats_[(std::size_t)(i * stride_ + m)]);
    u.eval(node_z(w, w.count - 1, k - 1, sched_), mats_.back());
  } else {
    stride_ = k;
    mats_.resize((std::size_t)(w.count * k));
    for (long i = 0; i < w.count; ++i)
      for (int m = 0; m < k; ++m) u.eval(node_z(w, i, m, sched_), mats_[(std::size_t)(i * k + m)]);
  }
}

const ComplexMatrix& UTable::at(long step, int node) const {
  return mats_[(std::size_t)(step * stride_ + node)];
}

std::size_t UTable::bytes_estimate(int n, long steps, const NodeSchedule& sched) {
  const long slots = sched.endpoint_pair() ? steps * (sched.nodes() - 1) + 1
                                           : steps * (long)sched.nodes();
  return (std::size_t)slots * (std::size_t)n * (std::size_t)n * sizeof(Complex);
}

}  // namespace manybeam
