#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace manybeam {

using Complex = std::complex<double>;
// Column-major complex dense matrices throughout; all 2n x n stacked states
// put the upper block in rows [0, n) and the lower block in rows [n, 2n).
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// bad user input: config files, angle grids, lattice/rod setup
struct ConfigError : Error {
  using Error::Error;
};

// numerical failure inside a solver; carries enough detail to locate it
struct SolverError : Error {
  using Error::Error;
};

struct SingularMatrixError : SolverError {
  using SolverError::SolverError;
};

// nonfinite state or unusable factorization mid-propagation
struct BreakdownError : SolverError {
  BreakdownError(const std::string& msg, std::size_t step)
      : SolverError(msg + " (step " + std::to_string(step) + ")"), step(step) {}
  std::size_t step;
};

// bulk iteration exhausted its period budget
struct ConvergenceError : SolverError {
  using SolverError::SolverError;
};

// potential evaluated outside its z domain
struct DomainError : SolverError {
  using SolverError::SolverError;
};

// rocking curves that cannot be compared (grid or rod mismatch)
struct CompareError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace manybeam
