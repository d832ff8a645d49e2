#include "manybeam/conventional.hpp"

#include <cmath>

#include "manybeam/kernels.hpp"

namespace manybeam {

ComplexMatrix slice_coefficient(const ComplexMatrix& U, const GammaMatrix& gamma) {
  const int n = gamma.size();
  const Complex ihalf(0.0, 0.5);
  // (i/2) U G^-1 is a column scaling, no GEMM needed
  ComplexMatrix UG = ihalf * (U * gamma.inv_diag().asDiagonal());
  ComplexMatrix A(2 * n, 2 * n);
  A.topLeftCorner(n, n) = UG;
  A.topLeftCorner(n, n) += (Complex(0, 1) * gamma.diag()).asDiagonal().toDenseMatrix();
  A.topRightCorner(n, n) = UG;
  A.bottomLeftCorner(n, n) = -UG;
  A.bottomRightCorner(n, n) = -UG;
  A.bottomRightCorner(n, n) -= (Complex(0, 1) * gamma.diag()).asDiagonal().toDenseMatrix();
  return A;
}

TransferBlocks slice_transfer(const ComplexMatrix& U_mid, const GammaMatrix& gamma, double h) {
  const int n = gamma.size();
  const ComplexMatrix E = matrix_exponential(h * slice_coefficient(U_mid, gamma));
  TransferBlocks b;
  b.X = E.topLeftCorner(n, n);
  b.Y = E.topRightCorner(n, n);
  b.Z = E.bottomLeftCorner(n, n);
  b.W = E.bottomRightCorner(n, n);
  return b;
}

ComplexMatrix reflect_update(const TransferBlocks& blocks, const ComplexMatrix& R) {
  return solve_right(blocks.Z + blocks.W * R, blocks.X + blocks.Y * R);
}

namespace {

ComplexMatrix seed_or_zero(const ComplexMatrix& R_init, int n) {
  if (R_init.size() == 0) return ComplexMatrix::Zero(n, n);
  if (R_init.rows() != n || R_init.cols() != n)
    throw SolverError("R_init has wrong dimensions");
  return R_init;
}

}  // namespace

ConventionalResult solve_conventional(const BoundPotential& u, const GammaMatrix& gamma,
                                      const SlicingPlan& plan, const ComplexMatrix& R_init,
                                      const UTable* table) {
  const int n = gamma.size();
  if (u.n() != n) throw SolverError("potential and gamma dimensions disagree");
  const StepWindow w = StepWindow::of_plan(plan);
  const NodeSchedule sched = midpoint_schedule();

  ComplexMatrix R = seed_or_zero(R_init, n);
  ComplexMatrix U_mid;
  for (long i = 0; i < w.count; ++i) {
    const ComplexMatrix* Um;
    if (table) {
      Um = &table->at(i, 0);
    } else {
      u.eval(node_z(w, i, 0, sched), U_mid);
      Um = &U_mid;
    }
    TransferBlocks blocks = slice_transfer(*Um, gamma, w.h);
    try {
      R = reflect_update(blocks, R);
    } catch (const SingularMatrixError& e) {
      throw BreakdownError(std::string("conventional recursion: ") + e.what(), (std::size_t)i);
    }
    if (!R.allFinite())
      throw BreakdownError("conventional recursion: nonfinite reflection", (std::size_t)i);
  }
  return ConventionalResult{R.col(0), std::move(R)};
}

ComplexMatrix compute_bulk_reflection_conventional(const BoundPotential& u,
                                                   const GammaMatrix& gamma, double dz,
                                                   const BulkOptions& opts) {
  if (!u.bulk_period()) throw SolverError("bulk reflection needs a field with a bulk period");
  const int n = gamma.size();
  const double p = *u.bulk_period();
  const double ze = u.z_bottom();
  const long L = std::max(1L, std::lround(p / dz));
  // one period just below the surface region; the periodic extension maps
  // its heights back into [z_e, z_e + p)
  const StepWindow w = StepWindow::over(ze - p, ze, L);
  const NodeSchedule sched = midpoint_schedule();

  std::vector<TransferBlocks> blocks;
  blocks.reserve((std::size_t)L);
  ComplexMatrix U_mid;
  for (long i = 0; i < L; ++i) {
    u.eval(node_z(w, i, 0, sched), U_mid);
    blocks.push_back(slice_transfer(U_mid, gamma, w.h));
  }

  ComplexMatrix R = ComplexMatrix::Zero(n, n);
  for (long m = 0; m < opts.max_periods; ++m) {
    ComplexMatrix prev = R;
    for (long i = 0; i < L; ++i) {
      try {
        R = reflect_update(blocks[(std::size_t)i], R);
      } catch (const SingularMatrixError& e) {
        throw BreakdownError(std::string("bulk recursion: ") + e.what(),
                             (std::size_t)(m * L + i));
      }
    }
    if (!R.allFinite())
      throw BreakdownError("bulk recursion: nonfinite reflection", (std::size_t)m);
    const double change = (R - prev).norm();
    if (change <= opts.tol * std::max(1.0, R.norm())) return R;
  }
  throw ConvergenceError("bulk reflection did not settle within " +
                         std::to_string(opts.max_periods) + " periods");
}

ComplexVector full_product_rho0(const BoundPotential& u, const GammaMatrix& gamma,
                                const SlicingPlan& plan) {
  const int n = gamma.size();
  const StepWindow w = StepWindow::of_plan(plan);
  const NodeSchedule sched = midpoint_schedule();
  ComplexMatrix prod = ComplexMatrix::Identity(2 * n, 2 * n);
  ComplexMatrix U_mid;
  for (long i = 0; i < w.count; ++i) {
    u.eval(node_z(w, i, 0, sched), U_mid);
    prod = matrix_exponential(w.h * slice_coefficient(U_mid, gamma)) * prod;
    if (!prod.allFinite())
      throw BreakdownError("full product: nonfinite accumulation", (std::size_t)i);
  }
  // rho(0) = Z_p X_p^-1 e_1 for a zero-seeded bottom boundary
  try {
    return solve_right(prod.bottomLeftCorner(n, n), prod.topLeftCorner(n, n)).col(0);
  } catch (const SingularMatrixError& e) {
    throw BreakdownError(std::string("full product division: ") + e.what(),
                         (std::size_t)w.count);
  }
}

}  // namespace manybeam
