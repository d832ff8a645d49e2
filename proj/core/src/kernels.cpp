#include "manybeam/kernels.hpp"

#include <cmath>
#include <limits>

namespace manybeam {

namespace {

// Pade(13,13) numerator coefficients for exp; denominator shares them with
// alternating signs.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// 1-norm bound below which the unscaled degree-13 approximant holds to
// double precision.
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

ComplexMatrix matrix_exponential(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw SolverError("matrix_exponential: matrix must be square");
  if (!M.allFinite()) throw SolverError("matrix_exponential: nonfinite input");
  const Eigen::Index n = M.rows();
  if (n == 0) return ComplexMatrix(0, 0);

  const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = (int)std::ceil(std::log2(norm1 / kTheta13));
  }
  const ComplexMatrix A = M * std::pow(2.0, -squarings);

  const ComplexMatrix A2 = A * A;
  const ComplexMatrix A4 = A2 * A2;
  const ComplexMatrix A6 = A4 * A2;
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);

  // U = A * (A6*(b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
  ComplexMatrix U = A6 * (kPade13[13] * A6 + kPade13[11] * A4 + kPade13[9] * A2);
  U += kPade13[7] * A6 + kPade13[5] * A4 + kPade13[3] * A2 + kPade13[1] * I;
  U = A * U;
  // V = A6*(b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  ComplexMatrix V = A6 * (kPade13[12] * A6 + kPade13[10] * A4 + kPade13[8] * A2);
  V += kPade13[6] * A6 + kPade13[4] * A4 + kPade13[2] * A2 + kPade13[0] * I;

  // (V - U) R = (V + U)
  Eigen::PartialPivLU<ComplexMatrix> lu(V - U);
  ComplexMatrix R = lu.solve(V + U);

  for (int s = 0; s < squarings; ++s) R = R * R;
  if (!R.allFinite()) throw SolverError("matrix_exponential: nonfinite result");
  return R;
}

ComplexMatrix solve_right(const ComplexMatrix& B, const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw SolverError("solve_right: A must be square");
  if (B.cols() != A.rows()) throw SolverError("solve_right: dimension mismatch");
  if (!A.allFinite() || !B.allFinite()) throw SolverError("solve_right: nonfinite input");

  // X A = B  <=>  A^T X^T = B^T
  Eigen::PartialPivLU<ComplexMatrix> lu(A.transpose());
  const ComplexVector& piv = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < piv.size(); ++i) {
    if (piv(i) == Complex(0.0, 0.0))
      throw SingularMatrixError("solve_right: exactly singular matrix (zero pivot)");
  }
  ComplexMatrix X = lu.solve(B.transpose()).transpose();

  const double bnorm = B.norm();
  const double resid = (X * A - B).norm() / (bnorm > 0 ? bnorm : 1.0);
  if (!(resid <= 1e-10) || !X.allFinite())
    throw SingularMatrixError("solve_right: ill-conditioned system, relative residual " +
                              std::to_string(resid));
  return X;
}

double gershgorin_cond(const ComplexMatrix& Q) {
  if (Q.rows() != Q.cols()) throw SolverError("gershgorin_cond: matrix must be square");
  const Eigen::Index n = Q.rows();
  if (n == 0) return 1.0;
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) r += std::abs(Q(i, j));
    }
    const double d = std::abs(Q(i, i));
    hi = std::max(hi, d + r);
    if (d - r <= 0.0) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, d - r);
  }
  return hi / lo;
}

}  // namespace manybeam
