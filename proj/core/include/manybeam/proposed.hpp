#pragma once

#include <string>
#include <vector>

#include "manybeam/geometry.hpp"
#include "manybeam/potential.hpp"
#include "manybeam/slicing.hpp"
#include "manybeam/stages.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

struct BulkOptions;

enum class StepAlgorithm { RK4, Splitting };
enum class SplitVariant { ABA, BAB };

// One-step integrator description. The shipped methods are the classical
// RK4 tableau and the two symmetric RKN splittings sp4 (6 stages, order 4)
// and sp6 (11 stages, order 6), both in BAB form. Custom splitting
// coefficient sets can be run through the same executor.
struct StepperSpec {
  StepAlgorithm algorithm = StepAlgorithm::RK4;
  std::string name = "rk4";
  SplitVariant variant = SplitVariant::BAB;
  std::vector<double> drift;  // BAB: s entries; ABA: s+1
  std::vector<double> kick;   // BAB: s+1 entries; ABA: s
  std::vector<double> rk_nodes{0.0, 0.5, 0.5, 1.0};
  std::vector<double> rk_weights{1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6};

  static const StepperSpec& rk4();
  static const StepperSpec& sp4();
  static const StepperSpec& sp6();
  static StepperSpec splitting(std::string name, SplitVariant variant, std::vector<double> drift,
                               std::vector<double> kick);
  // named method lookup for configs: conventional is not a stepper
  static const StepperSpec& by_name(const std::string& name);

  int stages() const;
  // throws ConfigError unless both coefficient families sum to 1
  void validate() const;
};

// Kick heights of a splitting step as node-schedule fractions plus the map
// from kick occurrence to schedule slot.
struct KickSchedule {
  NodeSchedule nodes;
  std::vector<int> occ2node;
};
KickSchedule kick_schedule(const StepperSpec& spec);
NodeSchedule schedule_for(const StepperSpec& spec);

// Economical 2n x n propagation state: y = [Q; P] with Q ~ c, P ~ c'.
struct PropagationState {
  ComplexMatrix Q, P;
  double z = 0.0;
};

// S maps [Q; P] to incident/reflected halves: T = G Q - i P, R = G Q + i P.
void to_tau_rho(const GammaMatrix& gamma, const PropagationState& st, ComplexMatrix& T,
                ComplexMatrix& R);
// inverse map: Q = G^-1 (T + R)/2, P = i (T - R)/2
PropagationState from_tau_rho(const GammaMatrix& gamma, const ComplexMatrix& T,
                              const ComplexMatrix& R, double z);

// bottom boundary state for reflection seed R_init (zero matrix when empty)
PropagationState initial_state(const GammaMatrix& gamma, const ComplexMatrix& R_init, double z);

// classical RK4 sweep of the linear system Q' = P, P' = -(U + G^2) Q;
// U enters at the step foot, midpoint (shared by both middle stages), top
void rk4_step(PropagationState& st, double h, const ComplexMatrix& U_bottom,
              const ComplexMatrix& U_mid, const ComplexMatrix& U_top, const RealVector& gamma2);

// BAB composition: kick P -= h b_r (U + G^2) Q, drift Q += h a_r P, with
// kick r evaluated at the accumulated drift height; ABA swaps the roles.
// U_at_kicks holds one matrix pointer per kick occurrence.
void splitting_step(PropagationState& st, double h, const StepperSpec& spec,
                    const std::vector<const ComplexMatrix*>& U_at_kicks,
                    const RealVector& gamma2);

// Right-hand stabilizing transform: when the Gershgorin condition estimate
// of Q exceeds the threshold, renormalize [Q; P] -> [I; P Q^-1]. The final
// reflection read is invariant under this column transform.
bool apply_rhst(PropagationState& st, double threshold);

// R_L = (G Q + i P)(G Q - i P)^-1 at the current height
ComplexMatrix extract_reflection(const GammaMatrix& gamma, const PropagationState& st);

struct ProposedOptions {
  double rhst_threshold = 1000.0;  // +inf disables the transform
};

struct SolveStats {
  long rhst_transforms = 0;
};

ComplexVector solve_proposed(const BoundPotential& u, const GammaMatrix& gamma,
                             const SlicingPlan& plan, const StepperSpec& spec,
                             const ProposedOptions& opts = {},
                             const ComplexMatrix& R_init = ComplexMatrix(),
                             const UTable* table = nullptr, SolveStats* stats = nullptr);

// Bulk reflection via the economical state: steps through one period at a
// time, reading R after each period until it settles.
ComplexMatrix compute_bulk_reflection_proposed(const BoundPotential& u, const GammaMatrix& gamma,
                                               double dz, const StepperSpec& spec,
                                               const ProposedOptions& opts,
                                               const BulkOptions& bulk);

}  // namespace manybeam
