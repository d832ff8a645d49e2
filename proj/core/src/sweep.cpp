#include "manybeam/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "manybeam/conventional.hpp"
#include "manybeam/geometry.hpp"
#include "manybeam/proposed.hpp"
#include "manybeam/slicing.hpp"
#include "manybeam/stages.hpp"

namespace manybeam {

AngleGrid AngleGrid::validated(std::vector<double> theta0, std::vector<double> theta1) {
  if (theta0.empty()) throw ConfigError("angle grid: theta0 list is empty");
  if (theta1.empty()) throw ConfigError("angle grid: theta1 list is empty");
  for (double t : theta0)
    if (!(t > 0.0 && t < 90.0))
      throw ConfigError("angle grid: glancing angles must lie in (0, 90) degrees");
  for (std::size_t i = 1; i < theta0.size(); ++i)
    if (!(theta0[i] > theta0[i - 1]))
      throw ConfigError("angle grid: theta0 must be strictly increasing");
  for (double t : theta1)
    if (!std::isfinite(t)) throw ConfigError("angle grid: theta1 must be finite");
  AngleGrid g;
  g.theta0 = std::move(theta0);
  g.theta1 = std::move(theta1);
  return g;
}

namespace {

struct MethodSpec {
  bool conventional = false;
  const StepperSpec* stepper = nullptr;  // set when not conventional
};

MethodSpec parse_method(const std::string& name) {
  MethodSpec m;
  if (name == "conventional") {
    m.conventional = true;
    return m;
  }
  m.stepper = &StepperSpec::by_name(name);
  return m;
}

}  // namespace

RockingCurve rocking_curve(const PotentialField& field, const RodSet& rods, double gamma,
                           const AngleGrid& grid, const SweepOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();
  if (!(opts.dz > 0.0) || !std::isfinite(opts.dz))
    throw ConfigError("sweep: dz must be positive and finite");
  const MethodSpec method = parse_method(opts.method);

  const BoundPotential bound(field, rods);
  const SlicingPlan plan = SlicingPlan::with_target_dz(field.z_bottom(), opts.dz);
  const long rows = grid.rows();
  const int n = rods.size();

  // The potential is beam-independent, so one node table serves every row.
  const NodeSchedule sched =
      method.conventional ? midpoint_schedule() : schedule_for(*method.stepper);
  std::unique_ptr<UTable> table;
  if (rows > 1 && UTable::bytes_estimate(n, plan.count, sched) <= opts.table_budget_bytes)
    table = std::make_unique<UTable>(bound, StepWindow::of_plan(plan), sched);

  RockingCurve curve;
  curve.theta0.resize(rows);
  curve.theta1.resize(rows);
  curve.eta = RealMatrix::Zero(rows, n);
  curve.rod_labels.reserve(n);
  for (int i = 0; i < n; ++i)
    curve.rod_labels.push_back("(" + std::to_string(rods.m(i)(0)) + ";" +
                               std::to_string(rods.m(i)(1)) + ")");
  curve.method = opts.method;
  curve.dz = opts.dz;
  curve.rhst_threshold = method.conventional ? 0.0 : opts.rhst_threshold;

  const long n_th0 = (long)grid.theta0.size();
  ProposedOptions popts;
  popts.rhst_threshold = opts.rhst_threshold;

  auto solve_row = [&](long row) {
    const double th1 = grid.theta1[(std::size_t)(row / n_th0)];
    const double th0 = grid.theta0[(std::size_t)(row % n_th0)];
    curve.theta0[(std::size_t)row] = th0;
    curve.theta1[(std::size_t)row] = th1;
    const BeamGeometry beam(gamma, th0, th1);
    const GammaMatrix gm = GammaMatrix::build(rods, beam);
    ComplexMatrix R_init;
    if (bound.bulk_period()) {
      R_init = method.conventional
                   ? compute_bulk_reflection_conventional(bound, gm, opts.dz)
                   : compute_bulk_reflection_proposed(bound, gm, opts.dz, *method.stepper,
                                                      popts, BulkOptions{});
    }
    ComplexVector rho0;
    if (method.conventional)
      rho0 = solve_conventional(bound, gm, plan, R_init, table.get()).rho0;
    else
      rho0 = solve_proposed(bound, gm, plan, *method.stepper, popts, R_init, table.get());
    curve.eta.row(row) = intensity(rho0, gm).transpose();
  };

  int threads = opts.threads;
  if (threads <= 0) threads = (int)std::max(1u, std::thread::hardware_concurrency());
  threads = (int)std::min<long>(threads, rows);

  if (threads <= 1) {
    for (long r = 0; r < rows; ++r) solve_row(r);
  } else {
    std::atomic<long> next{0};
    std::vector<std::exception_ptr> errors((std::size_t)rows);
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const long row = next.fetch_add(1, std::memory_order_relaxed);
          if (row >= rows) return;
          try {
            solve_row(row);
          } catch (...) {
            errors[(std::size_t)row] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (long r = 0; r < rows; ++r)
      if (errors[(std::size_t)r]) std::rethrow_exception(errors[(std::size_t)r]);
  }

  curve.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return curve;
}

}  // namespace manybeam
