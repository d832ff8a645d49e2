#pragma once

#include <vector>

#include "manybeam/rods.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// Surface projection of the incident wave vector for glancing angle theta0
// and azimuth theta1 (both degrees): b0 = gamma cos(theta0) (cos t1, sin t1).
Vec2 project_incident(double gamma, double theta0_deg, double theta1_deg);

// Incident beam: vacuum wave number gamma [1/A] plus the two angles.
struct BeamGeometry {
  BeamGeometry(double gamma, double theta0_deg, double theta1_deg);

  double gamma = 0.0;
  double theta0_deg = 0.0;
  double theta1_deg = 0.0;
  Vec2 b0{0.0, 0.0};
  double sin_theta0 = 0.0;
};

// Diagonal of vertical vacuum wave numbers Gamma_jj = sqrt(gamma^2 -
// ||b0 + k_j||^2), principal branch: positive real for propagating rods,
// positive imaginary for evanescent ones.
class GammaMatrix {
 public:
  static GammaMatrix build(const RodSet& rods, const BeamGeometry& beam);

  int size() const { return (int)diag_.size(); }
  const ComplexVector& diag() const { return diag_; }
  const ComplexVector& inv_diag() const { return inv_diag_; }
  // diagonal of Gamma^2 = gamma^2 - ||b0+k_j||^2, exact and real
  const RealVector& gamma2() const { return gamma2_; }
  bool propagating(int i) const { return propagating_[i] != 0; }
  double gamma() const { return gamma_; }
  double sin_theta0() const { return sin_theta0_; }

 private:
  ComplexVector diag_;
  ComplexVector inv_diag_;
  RealVector gamma2_;
  std::vector<char> propagating_;
  double gamma_ = 0.0;
  double sin_theta0_ = 0.0;
};

}  // namespace manybeam
