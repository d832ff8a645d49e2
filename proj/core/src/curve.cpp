#include "manybeam/curve.hpp"

#include <cmath>
#include <limits>

namespace manybeam {

RealVector intensity(const ComplexVector& rho0, const GammaMatrix& gamma) {
  const int n = (int)rho0.size();
  if (n != gamma.size()) throw DomainError("intensity: rho/Gamma size mismatch");
  RealVector eta = RealVector::Zero(n);
  const double g0 = gamma.diag()(0).real();
  const double s0 = gamma.sin_theta0();
  for (int i = 0; i < n; ++i) {
    if (!gamma.propagating(i)) continue;
    const double gi = gamma.diag()(i).real();
    eta(i) = std::norm(rho0(i)) * s0 * g0 / gi;
  }
  return eta;
}

double curve_error(const RockingCurve& candidate, const RockingCurve& reference) {
  if (candidate.rows() != reference.rows())
    throw CompareError("curve_error: row count mismatch");
  if (candidate.eta.cols() != reference.eta.cols())
    throw CompareError("curve_error: rod count mismatch");
  const double atol = 1e-12;
  for (long r = 0; r < candidate.rows(); ++r) {
    if (std::abs(candidate.theta0[r] - reference.theta0[r]) > atol ||
        std::abs(candidate.theta1[r] - reference.theta1[r]) > atol)
      throw CompareError("curve_error: angle grids differ");
  }
  double num = 0.0, den = 0.0;
  for (long r = 0; r < candidate.rows(); ++r) {
    num = std::max(num, (candidate.eta.row(r) - reference.eta.row(r)).norm());
    den = std::max(den, reference.eta.row(r).norm());
  }
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace manybeam
