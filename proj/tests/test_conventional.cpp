#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "manybeam/conventional.hpp"
#include "manybeam/kernels.hpp"
#include "support/fields.hpp"
#include "support/oracles.hpp"

using namespace manybeam;
using testfields::constant_field;
using testfields::scalar_gamma;

TEST_CASE("slice coefficient is traceless and has the stated blocks") {
  const RodSet rods = testfields::rods11();
  const GammaMatrix gm = scalar_gamma(testfields::kGamma11, 7.0, rods);
  const BoundPotential u(testfields::layered_field(), rods);
  const ComplexMatrix U = u.eval(-3.1);
  const ComplexMatrix A = slice_coefficient(U, gm);
  const int n = rods.size();
  REQUIRE(A.rows() == 2 * n);
  CHECK(std::abs(A.trace()) <= 1e-13 * A.norm());

  const Complex ih(0.0, 0.5);
  const ComplexMatrix UG = ih * U * gm.inv_diag().asDiagonal();
  const ComplexMatrix iG =
      (Complex(0.0, 1.0) * gm.diag()).asDiagonal().toDenseMatrix();
  CHECK((A.topLeftCorner(n, n) - (UG + iG)).norm() <= 1e-14 * A.norm());
  CHECK((A.topRightCorner(n, n) - UG).norm() <= 1e-14 * A.norm());
  CHECK((A.bottomLeftCorner(n, n) + UG).norm() <= 1e-14 * A.norm());
  CHECK((A.bottomRightCorner(n, n) + UG + iG).norm() <= 1e-14 * A.norm());
}

TEST_CASE("slice transfer equals the exponential of h times the coefficient") {
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(2.0, 25.0, rods);
  const BoundPotential u(constant_field(Complex(-0.4, -0.1), -5.0), rods);
  const ComplexMatrix U = u.eval(-1.0);
  const double h = 0.3;
  const TransferBlocks blocks = slice_transfer(U, gm, h);
  const ComplexMatrix ref = oracle::taylor_expm((h * slice_coefficient(U, gm)).eval());
  ComplexMatrix E(2, 2);
  E << blocks.X(0, 0), blocks.Y(0, 0), blocks.Z(0, 0), blocks.W(0, 0);
  CHECK((E - ref).norm() <= 1e-13 * ref.norm());
}

TEST_CASE("reflection recursion step matches its defining formula") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  const int n = 6;
  TransferBlocks b;
  auto rand_mat = [&] {
    ComplexMatrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = Complex(d(rng), d(rng));
    return M;
  };
  b.X = rand_mat() + 2.0 * ComplexMatrix::Identity(n, n);
  b.Y = rand_mat();
  b.Z = rand_mat();
  b.W = rand_mat();
  const ComplexMatrix R = rand_mat();
  const ComplexMatrix next = reflect_update(b, R);
  const ComplexMatrix expected = (b.Z + b.W * R) * (b.X + b.Y * R).inverse();
  CHECK((next - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("vacuum produces no reflection") {
  const RodSet rods = testfields::rods11();
  const GammaMatrix gm = scalar_gamma(testfields::kGamma11, 9.0, rods);
  const BoundPotential u(PotentialField::zero(-6.0), rods);
  const ConventionalResult res = solve_conventional(u, gm, SlicingPlan::with_count(-6.0, 480));
  CHECK(res.rho0.norm() <= 1e-13);
  CHECK(res.R.norm() <= 1e-13);
}

TEST_CASE("constant potential: multi-slice is exact against the closed form") {
  // piecewise-constant U makes each slice exponential exact, so the only
  // error left is roundoff, independent of slice width
  const double gamma = 2.0, theta0 = 30.0;  // g = 1
  const double g = gamma * std::sin(theta0 * M_PI / 180.0);
  const Complex u0(-0.8, -0.2);
  const double z_e = -7.0;
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(gamma, theta0, rods);
  const BoundPotential u(constant_field(u0, z_e), rods);
  const Complex expected = oracle::fresnel_slab_rho0(g, u0, z_e);
  for (long slices : {35L, 140L, 700L}) {
    const ConventionalResult res = solve_conventional(u, gm, SlicingPlan::with_count(z_e, slices));
    CHECK(std::abs(res.rho0(0) - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("smooth scalar problem converges at second order to the shooting oracle") {
  const double gamma = 2.0, theta0 = 30.0;
  const double g = gamma * std::sin(theta0 * M_PI / 180.0);
  const double z_e = -8.0;
  const GaussianLayer layer{-3.5, -0.5, 1.5, 1.1, 0.15};
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(gamma, theta0, rods);
  const BoundPotential u(PotentialField::gaussian_layers(z_e, {layer}), rods);
  const Complex amp(layer.amplitude, layer.amplitude * layer.absorption);
  const Complex ref = oracle::scalar_ode_rho0(
      g,
      [&](long double z) {
        const long double dz = z - (long double)layer.z_center;
        const long double s = (long double)layer.sigma_z;
        return oracle::LComplex(amp.real(), amp.imag()) * std::exp(-dz * dz / (2 * s * s));
      },
      z_e);
  std::vector<double> hs, errs;
  for (long slices : {40L, 80L, 160L, 320L}) {
    const ConventionalResult res = solve_conventional(u, gm, SlicingPlan::with_count(z_e, slices));
    hs.push_back(-z_e / (double)slices);
    errs.push_back(std::abs(res.rho0(0) - ref));
  }
  const double slope = oracle::fit_order(hs, errs, 1e-14, 1e-1);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("bulk reflection of a constant absorbing medium matches the interface formula") {
  const double gamma = 2.0, theta0 = 30.0;
  const double g = gamma * std::sin(theta0 * M_PI / 180.0);
  const Complex u0(-0.6, -0.3);
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(gamma, theta0, rods);
  // constant medium below z = -2, periodically extended with period 1
  TabulatedEntry e;
  e.dm = Eigen::Vector2i(0, 0);
  e.values = {u0, u0};
  const PotentialField field = PotentialField::tabulated(-2.0, {-2.0, 0.0}, {e}, 1.0);
  const BoundPotential u(field, rods);
  const ComplexMatrix R = compute_bulk_reflection_conventional(u, gm, 0.01);
  const Complex expected = oracle::fresnel_interface_r(g, u0);
  CHECK(std::abs(R(0, 0) - expected) <= 1e-8 * std::abs(expected));
}

TEST_CASE("bulk iteration on a lossless medium does not converge") {
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(2.0, 30.0, rods);
  TabulatedEntry e;
  e.dm = Eigen::Vector2i(0, 0);
  e.values = {Complex(-0.5, 0.0), Complex(-0.5, 0.0)};  // real: no damping
  const PotentialField field = PotentialField::tabulated(-2.0, {-2.0, 0.0}, {e}, 1.0);
  const BoundPotential u(field, rods);
  BulkOptions opts;
  opts.max_periods = 200;
  CHECK_THROWS_AS((void)compute_bulk_reflection_conventional(u, gm, 0.02, opts),
                  ConvergenceError);
}

TEST_CASE("the raw transfer product agrees on propagating-only problems") {
  const double z_e = -6.0;
  const RodSet rods = testfields::rods1();
  const GammaMatrix gm = scalar_gamma(2.0, 30.0, rods);
  const BoundPotential u(constant_field(Complex(-0.3, -0.1), z_e), rods);
  const SlicingPlan plan = SlicingPlan::with_count(z_e, 300);
  const ComplexVector direct = full_product_rho0(u, gm, plan);
  const ConventionalResult rec = solve_conventional(u, gm, plan);
  CHECK((direct - rec.rho0).norm() <= 1e-9);
}

TEST_CASE("the raw transfer product fails on deep evanescent problems") {
  const RodSet rods = testfields::rods11();
  const GammaMatrix gm = scalar_gamma(testfields::kGamma11, 5.0, rods);
  const BoundPotential u(testfields::deep_field(), rods);
  const SlicingPlan plan = SlicingPlan::with_count(-50.0, 2500);
  const ConventionalResult rec = solve_conventional(u, gm, plan);
  bool diverged = false;
  try {
    const ComplexVector direct = full_product_rho0(u, gm, plan);
    diverged = !direct.allFinite() || (direct - rec.rho0).norm() > 1e-3;
  } catch (const SolverError&) {
    diverged = true;
  }
  CHECK(diverged);
}
