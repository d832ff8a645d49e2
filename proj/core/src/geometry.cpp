#include "manybeam/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace manybeam {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Vec2 project_incident(double gamma, double theta0_deg, double theta1_deg) {
  const double c0 = std::cos(theta0_deg * kDegToRad);
  const double t1 = theta1_deg * kDegToRad;
  return Vec2(gamma * c0 * std::cos(t1), gamma * c0 * std::sin(t1));
}

BeamGeometry::BeamGeometry(double gamma_in, double theta0, double theta1)
    : gamma(gamma_in), theta0_deg(theta0), theta1_deg(theta1) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ConfigError("beam: gamma must be positive and finite");
  if (!(theta0 > 0.0 && theta0 < 90.0))
    throw ConfigError("beam: theta0 must lie in (0, 90) degrees, got " + std::to_string(theta0));
  if (!std::isfinite(theta1)) throw ConfigError("beam: theta1 must be finite");
  b0 = project_incident(gamma, theta0, theta1);
  sin_theta0 = std::sin(theta0 * kDegToRad);
}

GammaMatrix GammaMatrix::build(const RodSet& rods, const BeamGeometry& beam) {
  const int n = rods.size();
  GammaMatrix g;
  g.gamma_ = beam.gamma;
  g.sin_theta0_ = beam.sin_theta0;
  g.diag_.resize(n);
  g.inv_diag_.resize(n);
  g.gamma2_.resize(n);
  g.propagating_.resize(n);
  const double g2 = beam.gamma * beam.gamma;
  for (int i = 0; i < n; ++i) {
    const double par2 = (beam.b0 + rods.k(i)).squaredNorm();
    const double d = g2 - par2;
    if (std::abs(d) < 1e-12)
      throw ConfigError("rod " + std::to_string(i) +
                        " emerges at grazing: |gamma^2 - ||b0+k||^2| = " + std::to_string(std::abs(d)));
    g.gamma2_(i) = d;
    if (d > 0.0) {
      g.diag_(i) = Complex(std::sqrt(d), 0.0);
      g.propagating_[i] = 1;
    } else {
      g.diag_(i) = Complex(0.0, std::sqrt(-d));
      g.propagating_[i] = 0;
    }
    g.inv_diag_(i) = 1.0 / g.diag_(i);
  }
  return g;
}

}  // namespace manybeam
