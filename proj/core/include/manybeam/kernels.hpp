#pragma once

#include "manybeam/types.hpp"

namespace manybeam {

// exp(M) by scaling-and-squaring with the degree-13 diagonal Pade
// approximant; the scaling power is chosen from the 1-norm threshold.
// Rejects nonfinite input.
ComplexMatrix matrix_exponential(const ComplexMatrix& M);

// B * inv(A) through a row-pivoted LU of A (never forms inv(A) densely).
// Throws SingularMatrixError on a zero pivot or when the relative residual
// ||X A - B||_F / ||B||_F exceeds 1e-10.
ComplexMatrix solve_right(const ComplexMatrix& B, const ComplexMatrix& A);

// Gershgorin condition estimate max_i(|q_ii|+r_i) / min_i(|q_ii|-r_i) with
// r_i the off-diagonal absolute row sum; +inf when any |q_ii| - r_i <= 0.
// Upper bound on the spectral condition number for diagonally dominant Q.
double gershgorin_cond(const ComplexMatrix& Q);

}  // namespace manybeam
