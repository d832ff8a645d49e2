#pragma once

// Independent reference implementations for the test suite. Everything here
// is deliberately simple and slow: truncated series, shooting with a tiny
// step, long double accumulation. None of it shares code with the library.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "manybeam/types.hpp"

namespace oracle {

using manybeam::Complex;
using manybeam::ComplexMatrix;

// plain Taylor series; fine for ||M|| up to a few
inline ComplexMatrix taylor_expm(const ComplexMatrix& M, int max_terms = 120) {
  ComplexMatrix sum = ComplexMatrix::Identity(M.rows(), M.cols());
  ComplexMatrix term = sum;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * M / (double)k).eval();
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  return sum;
}

// Reflected amplitude of a constant potential u filling [z_e, 0], free
// space above, radiation condition below: the two-interface closed form
//   rho(0) = r (1 - E) / (1 - r^2 E),  r = (g - kappa)/(g + kappa),
//   kappa = sqrt(g^2 + u) (principal), E = exp(2 i kappa z_e).
inline Complex fresnel_slab_rho0(double g, Complex u, double z_e) {
  const Complex kappa = std::sqrt(Complex(g * g) + u);
  const Complex r = (g - kappa) / (g + kappa);
  const Complex E = std::exp(Complex(0.0, 2.0) * kappa * z_e);
  return r * (1.0 - E) / (1.0 - r * r * E);
}

// semi-infinite version (|E| -> 0 with any absorption)
inline Complex fresnel_interface_r(double g, Complex u) {
  const Complex kappa = std::sqrt(Complex(g * g) + u);
  return (g - kappa) / (g + kappa);
}

// Scalar two-point problem c'' = -(u(z) + g^2) c on [z_e, 0] with
// tau(z_e) = 1, rho(z_e) = 0, solved by long double RK4 shooting; returns
// rho(0)/tau(0). The step count is overkill on purpose.
using LComplex = std::complex<long double>;

inline Complex scalar_ode_rho0(double g, const std::function<LComplex(long double)>& u,
                               double z_e, long steps = 200000) {
  const long double gl = (long double)g;
  const LComplex i(0.0L, 1.0L);
  // tau = g q - i p, rho = g q + i p and the seed (tau, rho) = (1, 0)
  LComplex q = LComplex(1.0L) / (2.0L * gl);
  LComplex p = i * 0.5L;
  const long double h = (long double)(-z_e) / (long double)steps;
  auto f = [&](long double z, LComplex qq, LComplex pp, LComplex& dq, LComplex& dp) {
    dq = pp;
    dp = -(u(z) + gl * gl) * qq;
  };
  long double z = (long double)z_e;
  for (long s = 0; s < steps; ++s) {
    LComplex k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
    f(z, q, p, k1q, k1p);
    f(z + h / 2, q + h / 2 * k1q, p + h / 2 * k1p, k2q, k2p);
    f(z + h / 2, q + h / 2 * k2q, p + h / 2 * k2p, k3q, k3p);
    f(z + h, q + h * k3q, p + h * k3p, k4q, k4p);
    q += h / 6 * (k1q + 2.0L * k2q + 2.0L * k3q + k4q);
    p += h / 6 * (k1p + 2.0L * k2p + 2.0L * k3p + k4p);
    z += h;
  }
  const LComplex tau = gl * q - i * p;
  const LComplex rho = gl * q + i * p;
  const LComplex out = rho / tau;
  return Complex((double)out.real(), (double)out.imag());
}

// least-squares slope of log err vs log h, restricted to an error band that
// drops pre-asymptotic and rounding-floor points
inline double fit_order(const std::vector<double>& hs, const std::vector<double>& errs,
                        double lo = 1e-12, double hi = 1e-3, int min_points = 3) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(errs[i] > lo && errs[i] < hi)) continue;
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < min_points) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// exact eigenvalue-magnitude spread, the quantity Gershgorin overestimates
inline double eigen_cond_ratio(const ComplexMatrix& Q) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(Q, false);
  const auto mags = es.eigenvalues().cwiseAbs();
  return mags.maxCoeff() / mags.minCoeff();
}

// surface-parallel incident wavevector through explicit 3D rotations:
// start along +x, tilt down by theta0 about y, swing by theta1 about z
inline manybeam::Vec2 b0_by_rotation(double gamma, double theta0_deg, double theta1_deg) {
  const double d = M_PI / 180.0;
  Eigen::Vector3d v(1.0, 0.0, 0.0);
  v = Eigen::AngleAxisd(theta0_deg * d, Eigen::Vector3d::UnitY()) * v;  // (cos,0,-sin)
  v = Eigen::AngleAxisd(theta1_deg * d, Eigen::Vector3d::UnitZ()) * v;
  return manybeam::Vec2(gamma * v.x(), gamma * v.y());
}

}  // namespace oracle
