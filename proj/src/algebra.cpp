#include "hpmbvp/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hpmbvp {

const char* methodName(SolveMethod m) {
  switch (m) {
    case SolveMethod::DirectLinear:
      return "direct-linear";
    case SolveMethod::Newton:
      return "newton";
  }
  return "?";
}

UnknownPoly closureResidual(const TruncatedSeries& u, const BoundaryCondition& bc) {
  UnknownPoly r(-bc.rhs);
  for (const auto& atom : bc.atoms) {
    r += evalAt(differentiate(u, atom.derivOrder), atom.point) * atom.weight;
  }
  return r;
}

namespace {

void checkDimensions(std::span<const UnknownPoly> residuals, std::size_t n,
                     const Eigen::VectorXd& guess) {
  if (residuals.size() != n) {
    throw DimensionMismatch("closure count " + std::to_string(residuals.size()) +
                            " != unknown count " + std::to_string(n));
  }
  if (static_cast<std::size_t>(guess.size()) != n) {
    throw DimensionMismatch("initial guess has " + std::to_string(guess.size()) +
                            " entries for " + std::to_string(n) + " unknowns");
  }
}

Eigen::VectorXd evaluate(std::span<const UnknownPoly> residuals, const Eigen::VectorXd& x) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(residuals.size()));
  std::span<const double> values(x.data(), static_cast<std::size_t>(x.size()));
  for (std::size_t i = 0; i < residuals.size(); ++i)
    r(static_cast<Eigen::Index>(i)) = eval(residuals[i], values);
  return r;
}

double maxNorm(const Eigen::VectorXd& r) {
  if (r.size() == 0) return 0.0;
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  return r.cwiseAbs().maxCoeff();
}

// Gaussian elimination with partial pivoting; rejects near-zero pivots.
Eigen::VectorXd solveChecked(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  if (!(scale > 0.0) || !a.allFinite()) throw SingularSystem("constraint matrix is zero or not finite");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double minPivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (minPivot <= kSingularPivot * scale) {
    std::ostringstream os;
    os << "pivot " << minPivot << " below threshold (matrix scale " << scale << ")";
    throw SingularSystem(os.str());
  }
  return lu.solve(b);
}

Eigen::MatrixXd jacobian(const std::vector<std::vector<UnknownPoly>>& partials,
                         const Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(partials.size());
  Eigen::MatrixXd j(n, x.size());
  std::span<const double> values(x.data(), static_cast<std::size_t>(x.size()));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < x.size(); ++c)
      j(r, c) = eval(partials[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], values);
  return j;
}

}  // namespace

double residualNorm(std::span<const UnknownPoly> residuals, const Eigen::VectorXd& values) {
  return maxNorm(evaluate(residuals, values));
}

ConstantSolution solveNewton(std::span<const UnknownPoly> residuals, std::size_t unknownCount,
                             const Eigen::VectorXd& guess, const NewtonOptions& opts) {
  checkDimensions(residuals, unknownCount, guess);
  std::vector<std::vector<UnknownPoly>> partials(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i)
    for (std::size_t j = 0; j < unknownCount; ++j) partials[i].push_back(partial(residuals[i], j));

  Eigen::VectorXd x = guess;
  Eigen::VectorXd r = evaluate(residuals, x);
  double norm = maxNorm(r);
  for (int iter = 0;; ++iter) {
    if (norm <= opts.tol) return {x, iter, norm, SolveMethod::Newton};
    if (iter >= opts.maxIter) break;

    const Eigen::VectorXd step = solveChecked(jacobian(partials, x), -r);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.maxHalvings; ++h, lambda *= 0.5) {
      Eigen::VectorXd trial = x + lambda * step;
      Eigen::VectorXd rt = evaluate(residuals, trial);
      const double nt = maxNorm(rt);
      if (nt <= norm) {
        x = std::move(trial);
        r = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream os;
      os << "step halving failed to reduce residual " << norm << " after " << iter
         << " iterations";
      throw NoConvergence(os.str());
    }
  }
  std::ostringstream os;
  os << "Newton did not reach tolerance " << opts.tol << " in " << opts.maxIter
     << " iterations (residual " << norm << ")";
  throw NoConvergence(os.str());
}

ConstantSolution solveConstants(std::span<const UnknownPoly> residuals, std::size_t unknownCount,
                                const Eigen::VectorXd& guess, const NewtonOptions& opts) {
  checkDimensions(residuals, unknownCount, guess);
  bool affine = true;
  for (const auto& p : residuals) affine = affine && p.degree() <= 1;
  if (!affine) return solveNewton(residuals, unknownCount, guess, opts);

  const auto n = static_cast<Eigen::Index>(unknownCount);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = residuals[static_cast<std::size_t>(i)];
    if (p.variableSpan() > unknownCount)
      throw MissingSymbol("closure " + std::to_string(i) + " references an undeclared unknown");
    b(i) = -p.constantTerm();
    for (const auto& [e, c] : p.terms()) {
      if (e.empty()) continue;
      a(i, static_cast<Eigen::Index>(e.size() - 1)) = c;  // affine: single exponent 1
    }
  }
  ConstantSolution sol;
  sol.method = SolveMethod::DirectLinear;
  sol.iterations = 1;
  sol.values = n == 0 ? Eigen::VectorXd() : solveChecked(a, b);
  sol.residualNorm = residualNorm(residuals, sol.values);
  return sol;
}

TruncatedSeries substitute(const TruncatedSeries& u, const Eigen::VectorXd& values) {
  std::span<const double> v(values.data(), static_cast<std::size_t>(values.size()));
  TruncatedSeries r(u.cap());
  for (int k = 0; k <= u.cap(); ++k) {
    if (!u[k].isZero()) r[k] = UnknownPoly(eval(u[k], v));
  }
  return r;
}

}  // namespace hpmbvp
