#pragma once

// Boundary conditions as algebraic constraints on the unknown constants.

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "hpmbvp/series.hpp"

namespace hpmbvp {

/// weight * u^(derivOrder)(point)
struct BoundaryAtom {
  double weight = 1.0;
  int derivOrder = 0;
  double point = 0.0;

  friend bool operator==(const BoundaryAtom&, const BoundaryAtom&) = default;
};

/// Sum of atoms = rhs. Covers point, multi-point and nonlocal conditions.
struct BoundaryCondition {
  std::vector<BoundaryAtom> atoms;
  double rhs = 0.0;

  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

enum class SolveMethod { DirectLinear, Newton };

const char* methodName(SolveMethod m);

struct ConstantSolution {
  Eigen::VectorXd values;  // indexed like the problem's unknown list
  int iterations = 0;
  double residualNorm = 0.0;  // max-norm of the closure residuals at `values`
  SolveMethod method = SolveMethod::DirectLinear;
};

struct NewtonOptions {
  double tol = 1e-12;
  int maxIter = 50;
  int maxHalvings = 30;
};

/// Pivots below this (relative to the largest matrix entry) count as singular.
inline constexpr double kSingularPivot = 1e-14;

/// sum_i w_i * U^(d_i)(x_i) - rhs, as a polynomial in the unknowns.
UnknownPoly closureResidual(const TruncatedSeries& u, const BoundaryCondition& bc);

/// Solves residuals(values) = 0.
///
/// Affine systems go through one LU solve with partial pivoting; anything of
/// higher degree uses damped Newton with the analytic Jacobian.
ConstantSolution solveConstants(std::span<const UnknownPoly> residuals, std::size_t unknownCount,
                                const Eigen::VectorXd& guess, const NewtonOptions& opts = {});

/// Newton iteration regardless of the residual degree.
ConstantSolution solveNewton(std::span<const UnknownPoly> residuals, std::size_t unknownCount,
                             const Eigen::VectorXd& guess, const NewtonOptions& opts = {});

/// Replaces every unknown by its solved value.
TruncatedSeries substitute(const TruncatedSeries& u, const Eigen::VectorXd& values);

/// Max-norm of the residuals evaluated at `values`.
double residualNorm(std::span<const UnknownPoly> residuals, const Eigen::VectorXd& values);

}  // namespace hpmbvp
