#pragma once

// Shared test problems. The "smooth" family is the workhorse: gentle
// absorbing Gaussian layers on a rectangular lattice chosen so a cutoff of
// 5.0 keeps exactly 11 rods.

#include <vector>

#include "manybeam/geometry.hpp"
#include "manybeam/potential.hpp"
#include "manybeam/rods.hpp"

namespace testfields {

using namespace manybeam;

inline Lattice2D rect_lattice() {
  Lattice2D lat;
  lat.a1 = Vec2(2.0, 0.0);
  lat.a2 = Vec2(0.0, 2.6);
  return lat;
}

inline RodSet rods11() { return RodSet::build(rect_lattice(), 5.0); }

inline RodSet rods1() { return RodSet::build(rect_lattice(), 0.5); }

// gamma low enough that most of the 11 rods are evanescent at small theta0
inline constexpr double kGamma11 = 2.5;

// Smooth absorbing slab on [-10, 0]. sigma_z is huge compared to the
// domain: the second-order method's midpoint-quadrature error goes like
// (h/sigma_z)^2, and reaching 1e-8 relative at h = 0.002 needs u'' this
// small. Strong amplitude keeps the stepper errors above the rounding
// floor so log-log order fits stay clean.
inline PotentialField smooth_field() {
  std::vector<GaussianLayer> layers;
  layers.push_back({-5.0, -2.4, 2.2, 80.0, 0.08});
  return PotentialField::gaussian_layers(-10.0, std::move(layers));
}

// Absorbing two-layer slab on [-10, 0] with order-unity structure in z;
// the workhorse problem for the unit tests.
inline PotentialField layered_field() {
  std::vector<GaussianLayer> layers;
  layers.push_back({-2.4, -0.22, 2.2, 1.6, 0.08});
  layers.push_back({-6.0, -0.18, 2.2, 1.9, 0.08});
  return PotentialField::gaussian_layers(-10.0, std::move(layers));
}

// Deep 50 A stack of the same kind of layers; evanescent rods make the
// untransformed propagation blow up across this distance.
inline PotentialField deep_field() {
  std::vector<GaussianLayer> layers;
  for (int i = 0; i < 25; ++i)
    layers.push_back({-1.0 - 2.0 * i, -0.22, 2.2, 0.7, 0.08});
  return PotentialField::gaussian_layers(-50.0, std::move(layers));
}

// constant complex potential on [z_e, 0] as a two-point tabulated field
inline PotentialField constant_field(Complex u, double z_e) {
  TabulatedEntry e;
  e.dm = Eigen::Vector2i(0, 0);
  e.values = {u, u};
  return PotentialField::tabulated(z_e, {z_e, 0.0}, {e});
}

inline GammaMatrix scalar_gamma(double gamma, double theta0_deg, const RodSet& rods) {
  return GammaMatrix::build(rods, BeamGeometry(gamma, theta0_deg, 0.0));
}

}  // namespace testfields
