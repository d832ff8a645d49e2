#pragma once

#include "manybeam/geometry.hpp"
#include "manybeam/potential.hpp"
#include "manybeam/slicing.hpp"
#include "manybeam/stages.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// Blocks of the slice transfer matrix exp(h A) acting on stacked (tau, rho).
struct TransferBlocks {
  ComplexMatrix X, Y, Z, W;
};

// Traceless coefficient of the first-order system in the (tau, rho) frame:
//   [[ (i/2) U G^-1 + i G ,  (i/2) U G^-1        ],
//    [ -(i/2) U G^-1      , -(i/2) U G^-1 - i G ]]
ComplexMatrix slice_coefficient(const ComplexMatrix& U, const GammaMatrix& gamma);

// exp(h A) for the slice with U frozen at its midpoint value.
TransferBlocks slice_transfer(const ComplexMatrix& U_mid, const GammaMatrix& gamma, double h);

// One recursion step: R' = (Z + W R)(X + Y R)^-1.
ComplexMatrix reflect_update(const TransferBlocks& blocks, const ComplexMatrix& R);

struct ConventionalResult {
  ComplexVector rho0;  // reflected amplitudes at the surface, unit specular feed
  ComplexMatrix R;     // full reflection matrix at z = 0
};

struct BulkOptions {
  long max_periods = 10000;
  double tol = 1e-12;  // relative Frobenius change between periods
};

// Multi-slice sweep from z_bottom to the surface, reflection recursion
// seeded with R_init (zero matrix when empty).
ConventionalResult solve_conventional(const BoundPotential& u, const GammaMatrix& gamma,
                                      const SlicingPlan& plan,
                                      const ComplexMatrix& R_init = ComplexMatrix(),
                                      const UTable* table = nullptr);

// Reflection of the semi-infinite periodic bulk below z_bottom: repeats the
// one-period recursion from R = 0 until R stops changing. Requires the
// field to carry a bulk period and enough absorption to converge.
ComplexMatrix compute_bulk_reflection_conventional(const BoundPotential& u,
                                                   const GammaMatrix& gamma, double dz,
                                                   const BulkOptions& opts = {});

// Diagnostic only: accumulates the raw transfer product over the whole
// domain and divides once at the top. The growing evanescent modes make
// this ill-conditioned on thick domains; kept to demonstrate why the
// recursion is the production path.
ComplexVector full_product_rho0(const BoundPotential& u, const GammaMatrix& gamma,
                                const SlicingPlan& plan);

}  // namespace manybeam
