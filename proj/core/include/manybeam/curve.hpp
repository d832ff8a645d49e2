#pragma once

#include <string>
#include <vector>

#include "manybeam/geometry.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// Per-rod diffracted intensities from the surface reflection amplitudes:
//   eta_i = |rho_i|^2 sin(theta0) * Gamma_11 / Gamma_ii
// for propagating rods (both Gammas real there); evanescent rods carry no
// outgoing flux and get an explicit 0.
RealVector intensity(const ComplexVector& rho0, const GammaMatrix& gamma);

// Intensity rows over an angle grid; rows ordered theta1-major with theta0
// strictly increasing inside each theta1 block.
struct RockingCurve {
  std::vector<double> theta0;            // per row, degrees
  std::vector<double> theta1;            // per row, degrees
  RealMatrix eta;                        // rows x rods
  std::vector<std::string> rod_labels;   // "(m1;m2)"
  std::string method;
  double dz = 0.0;
  double rhst_threshold = 0.0;
  double solve_seconds = 0.0;  // in-memory only, never serialized

  long rows() const { return (long)theta0.size(); }
  int rod_count() const { return (int)eta.cols(); }
};

// max-normalized rocking-curve distance:
//   max_rows ||eta_cand - eta_ref||_2 / max_rows ||eta_ref||_2
// (Euclidean over rods). 0 for identical curves even when the reference is
// all zero; +inf when only the normalizer vanishes. Throws CompareError on
// mismatched grids or rod counts.
double curve_error(const RockingCurve& candidate, const RockingCurve& reference);

}  // namespace manybeam
