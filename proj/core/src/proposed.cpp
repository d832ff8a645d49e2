#include "manybeam/proposed.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "manybeam/conventional.hpp"
#include "manybeam/kernels.hpp"

namespace manybeam {

StepperSpec StepperSpec::splitting(std::string name, SplitVariant variant,
                                   std::vector<double> drift, std::vector<double> kick) {
  StepperSpec s;
  s.algorithm = StepAlgorithm::Splitting;
  s.name = std::move(name);
  s.variant = variant;
  s.drift = std::move(drift);
  s.kick = std::move(kick);
  s.validate();
  return s;
}

const StepperSpec& StepperSpec::by_name(const std::string& name) {
  if (name == "rk4") return rk4();
  if (name == "sp4") return sp4();
  if (name == "sp6") return sp6();
  throw ConfigError("unknown stepper '" + name + "' (expected rk4, sp4 or sp6)");
}

int StepperSpec::stages() const {
  if (algorithm == StepAlgorithm::RK4) return 4;
  return variant == SplitVariant::BAB ? (int)drift.size() : (int)kick.size();
}

void StepperSpec::validate() const {
  if (algorithm == StepAlgorithm::RK4) {
    if (rk_nodes.size() != 4 || rk_weights.size() != 4)
      throw ConfigError("stepper " + name + ": classical tableau needs 4 nodes and weights");
    const double sw = std::accumulate(rk_weights.begin(), rk_weights.end(), 0.0);
    if (std::abs(sw - 1.0) > 1e-13)
      throw ConfigError("stepper " + name + ": RK weights must sum to 1");
    return;
  }
  const std::size_t nd = drift.size(), nk = kick.size();
  const bool shape_ok = variant == SplitVariant::BAB ? (nk == nd + 1) : (nd == nk + 1);
  if (nd == 0 || nk == 0 || !shape_ok)
    throw ConfigError("stepper " + name + ": BAB needs s drifts and s+1 kicks, ABA the reverse");
  double sa = 0.0, sb = 0.0;
  for (double a : drift) {
    if (!std::isfinite(a)) throw ConfigError("stepper " + name + ": nonfinite drift coefficient");
    sa += a;
  }
  for (double b : kick) {
    if (!std::isfinite(b)) throw ConfigError("stepper " + name + ": nonfinite kick coefficient");
    sb += b;
  }
  if (std::abs(sa - 1.0) > 1e-13 || std::abs(sb - 1.0) > 1e-13)
    throw ConfigError("stepper " + name + ": drift and kick coefficients must each sum to 1");
}

KickSchedule kick_schedule(const StepperSpec& spec) {
  if (spec.algorithm != StepAlgorithm::Splitting)
    throw SolverError("kick_schedule: not a splitting stepper");
  // kick occurrence heights are the accumulated drifts before it
  std::vector<double> fracs;
  if (spec.variant == SplitVariant::BAB) {
    double c = 0.0;
    fracs.push_back(0.0);
    for (double a : spec.drift) {
      c += a;
      fracs.push_back(c);
    }
  } else {
    double c = 0.0;
    for (std::size_t r = 0; r < spec.kick.size(); ++r) {
      c += spec.drift[r];
      fracs.push_back(c);
    }
  }
  KickSchedule ks;
  ks.nodes = schedule_from_fracs(fracs);
  ks.occ2node.reserve(fracs.size());
  for (double raw : fracs) {
    double f = raw;
    if (std::abs(f) < 1e-12) f = 0.0;
    if (std::abs(f - 1.0) < 1e-12) f = 1.0;
    int best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (int m = 0; m < ks.nodes.nodes(); ++m) {
      const double d = std::abs(ks.nodes.frac[m] - f);
      if (d < dist) {
        dist = d;
        best = m;
      }
    }
    ks.occ2node.push_back(best);
  }
  return ks;
}

NodeSchedule schedule_for(const StepperSpec& spec) {
  if (spec.algorithm == StepAlgorithm::RK4) return rk4_schedule();
  return kick_schedule(spec).nodes;
}

void to_tau_rho(const GammaMatrix& gamma, const PropagationState& st, ComplexMatrix& T,
                ComplexMatrix& R) {
  const Complex i1(0.0, 1.0);
  T = gamma.diag().asDiagonal() * st.Q - i1 * st.P;
  R = gamma.diag().asDiagonal() * st.Q + i1 * st.P;
}

PropagationState from_tau_rho(const GammaMatrix& gamma, const ComplexMatrix& T,
                              const ComplexMatrix& R, double z) {
  PropagationState st;
  st.Q = 0.5 * (gamma.inv_diag().asDiagonal() * (T + R));
  st.P = Complex(0.0, 0.5) * (T - R);
  st.z = z;
  return st;
}

PropagationState initial_state(const GammaMatrix& gamma, const ComplexMatrix& R_init, double z) {
  const int n = gamma.size();
  ComplexMatrix R = R_init.size() == 0 ? ComplexMatrix::Zero(n, n) : R_init;
  if (R.rows() != n || R.cols() != n) throw SolverError("R_init has wrong dimensions");
  return from_tau_rho(gamma, ComplexMatrix::Identity(n, n), R, z);
}

namespace {

// (U + G^2) X with the diagonal applied as a row scaling
inline void apply_w(const ComplexMatrix& U, const RealVector& g2, const ComplexMatrix& X,
                    ComplexMatrix& out) {
  out.noalias() = U * X;
  out += g2.asDiagonal() * X;
}

}  // namespace

void rk4_step(PropagationState& st, double h, const ComplexMatrix& U_bottom,
              const ComplexMatrix& U_mid, const ComplexMatrix& U_top, const RealVector& gamma2) {
  const double h2 = 0.5 * h;
  ComplexMatrix k1p, k2p, k3p, k4p, tmp;

  // k1
  apply_w(U_bottom, gamma2, st.Q, k1p);
  k1p = -k1p;
  const ComplexMatrix& k1q = st.P;
  // k2
  tmp = st.Q + h2 * k1q;
  apply_w(U_mid, gamma2, tmp, k2p);
  k2p = -k2p;
  ComplexMatrix k2q = st.P + h2 * k1p;
  // k3
  tmp = st.Q + h2 * k2q;
  apply_w(U_mid, gamma2, tmp, k3p);
  k3p = -k3p;
  ComplexMatrix k3q = st.P + h2 * k2p;
  // k4
  tmp = st.Q + h * k3q;
  apply_w(U_top, gamma2, tmp, k4p);
  k4p = -k4p;
  ComplexMatrix k4q = st.P + h * k3p;

  st.Q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  st.P += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
}

void splitting_step(PropagationState& st, double h, const StepperSpec& spec,
                    const std::vector<const ComplexMatrix*>& U_at_kicks,
                    const RealVector& gamma2) {
  ComplexMatrix wq;
  if (spec.variant == SplitVariant::BAB) {
    const std::size_t s = spec.drift.size();
    if (U_at_kicks.size() != s + 1) throw SolverError("splitting_step: kick matrix count mismatch");
    for (std::size_t r = 0; r < s; ++r) {
      apply_w(*U_at_kicks[r], gamma2, st.Q, wq);
      st.P -= (h * spec.kick[r]) * wq;
      st.Q += (h * spec.drift[r]) * st.P;
    }
    apply_w(*U_at_kicks[s], gamma2, st.Q, wq);
    st.P -= (h * spec.kick[s]) * wq;
  } else {
    const std::size_t s = spec.kick.size();
    if (U_at_kicks.size() != s) throw SolverError("splitting_step: kick matrix count mismatch");
    for (std::size_t r = 0; r < s; ++r) {
      st.Q += (h * spec.drift[r]) * st.P;
      apply_w(*U_at_kicks[r], gamma2, st.Q, wq);
      st.P -= (h * spec.kick[r]) * wq;
    }
    st.Q += (h * spec.drift[s]) * st.P;
  }
}

bool apply_rhst(PropagationState& st, double threshold) {
  const double xi = gershgorin_cond(st.Q);
  if (!(xi > threshold)) return false;
  st.P = solve_right(st.P, st.Q);
  st.Q = ComplexMatrix::Identity(st.Q.rows(), st.Q.cols());
  return true;
}

ComplexMatrix extract_reflection(const GammaMatrix& gamma, const PropagationState& st) {
  ComplexMatrix T, R;
  to_tau_rho(gamma, st, T, R);
  return solve_right(R, T);
}

namespace {

// shared stepping core for the surface sweep and one bulk period
class StepDriver {
 public:
  StepDriver(const BoundPotential& u, const GammaMatrix& gamma, const StepperSpec& spec,
             const UTable* table)
      : u_(u), gamma_(gamma), spec_(spec), table_(table) {
    if (spec_.algorithm == StepAlgorithm::Splitting) {
      ks_ = kick_schedule(spec_);
      sched_ = ks_.nodes;
    } else {
      sched_ = rk4_schedule();
    }
    ring_.resize((std::size_t)sched_.nodes());
    kick_ptrs_.resize(ks_.occ2node.size());
  }

  const NodeSchedule& schedule() const { return sched_; }

  // advance one step; `step` indexes the window, state z is updated by the caller
  void advance(PropagationState& st, const StepWindow& w, long step) {
    const int K = sched_.nodes();
    node_.resize((std::size_t)K);
    for (int m = 0; m < K; ++m) {
      if (table_) {
        node_[(std::size_t)m] = &table_->at(step, m);
        continue;
      }
      // the step-top node of the previous step is this step's foot
      const bool reuse_foot =
          m == 0 && sched_.endpoint_pair() && prev_step_ >= 0 && step == prev_step_ + 1;
      if (reuse_foot) {
        std::swap(ring_.front(), ring_.back());
      } else {
        u_.eval(node_z(w, step, m, sched_), ring_[(std::size_t)m]);
      }
      node_[(std::size_t)m] = &ring_[(std::size_t)m];
    }
    prev_step_ = step;

    if (spec_.algorithm == StepAlgorithm::RK4) {
      rk4_step(st, w.h, *node_[0], *node_[1], *node_[2], gamma_.gamma2());
    } else {
      for (std::size_t occ = 0; occ < ks_.occ2node.size(); ++occ)
        kick_ptrs_[occ] = node_[(std::size_t)ks_.occ2node[occ]];
      splitting_step(st, w.h, spec_, kick_ptrs_, gamma_.gamma2());
    }
  }

  void reset_window() { prev_step_ = -1; }

 private:
  const BoundPotential& u_;
  const GammaMatrix& gamma_;
  const StepperSpec& spec_;
  const UTable* table_;
  KickSchedule ks_;
  NodeSchedule sched_;
  std::vector<ComplexMatrix> ring_;
  std::vector<const ComplexMatrix*> kick_ptrs_;
  std::vector<const ComplexMatrix*> node_;
  long prev_step_ = -1;
};

void run_window(StepDriver& driver, PropagationState& st, const StepWindow& w,
                const ProposedOptions& opts, SolveStats* stats, std::size_t step_offset) {
  for (long i = 0; i < w.count; ++i) {
    driver.advance(st, w, i);
    st.z = w.z(i + 1);
    if (!st.Q.allFinite() || !st.P.allFinite())
      throw BreakdownError("propagation state went nonfinite", step_offset + (std::size_t)i);
    try {
      if (apply_rhst(st, opts.rhst_threshold) && stats) ++stats->rhst_transforms;
    } catch (const SingularMatrixError& e) {
      throw BreakdownError(std::string("stabilizing transform: ") + e.what(),
                           step_offset + (std::size_t)i);
    }
  }
}

}  // namespace

ComplexVector solve_proposed(const BoundPotential& u, const GammaMatrix& gamma,
                             const SlicingPlan& plan, const StepperSpec& spec,
                             const ProposedOptions& opts, const ComplexMatrix& R_init,
                             const UTable* table, SolveStats* stats) {
  spec.validate();
  if (u.n() != gamma.size()) throw SolverError("potential and gamma dimensions disagree");
  const StepWindow w = StepWindow::of_plan(plan);
  StepDriver driver(u, gamma, spec, table);
  PropagationState st = initial_state(gamma, R_init, plan.z_bottom);
  run_window(driver, st, w, opts, stats, 0);
  try {
    return extract_reflection(gamma, st).col(0);
  } catch (const SingularMatrixError& e) {
    throw BreakdownError(std::string("reflection extraction: ") + e.what(),
                         (std::size_t)w.count);
  }
}

ComplexMatrix compute_bulk_reflection_proposed(const BoundPotential& u, const GammaMatrix& gamma,
                                               double dz, const StepperSpec& spec,
                                               const ProposedOptions& opts,
                                               const BulkOptions& bulk) {
  spec.validate();
  if (!u.bulk_period()) throw SolverError("bulk reflection needs a field with a bulk period");
  const double p = *u.bulk_period();
  const double ze = u.z_bottom();
  const long L = std::max(1L, std::lround(p / dz));
  const StepWindow w = StepWindow::over(ze - p, ze, L);

  // the periodic extension makes every period reuse the same node table
  StepDriver probe(u, gamma, spec, nullptr);
  UTable table(u, w, probe.schedule());
  StepDriver driver(u, gamma, spec, &table);

  PropagationState st = initial_state(gamma, ComplexMatrix(), w.z0);
  ComplexMatrix R;
  for (long m = 0; m < bulk.max_periods; ++m) {
    driver.reset_window();
    run_window(driver, st, w, opts, nullptr, (std::size_t)(m * L));
    ComplexMatrix prev = R;
    try {
      R = extract_reflection(gamma, st);
    } catch (const SingularMatrixError& e) {
      throw BreakdownError(std::string("bulk reflection read: ") + e.what(), (std::size_t)m);
    }
    if (m > 0 && (R - prev).norm() <= bulk.tol * std::max(1.0, R.norm())) return R;
  }
  throw ConvergenceError("bulk reflection did not settle within " +
                         std::to_string(bulk.max_periods) + " periods");
}

}  // namespace manybeam
