#pragma once

// Homotopy perturbation engine.
//
// Problems are taken in the normal form
//
//   u^(m) = f(x) + p * [ sum_j c_j(x) u^(d_j) + sum_l g_l(x) u^(q_l) ]
//
// with f at grade p^0. Matching powers of p gives the term ladder
//
//   u_0^(m) = f,                                with the problem's data at x = 0
//   u_k^(m) = sum_j c_j u_{k-1}^(d_j) + sum_l g_l H_{k-1}(q_l),   zero data at 0
//
// where H_n(q) is the p^n coefficient of (sum_k p^k u_k)^q (He's polynomial).
// Unknown initial values are carried as symbols and fixed afterwards from the
// closure conditions.

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hpmbvp/algebra.hpp"
#include "hpmbvp/series.hpp"

namespace hpmbvp {

struct LinearTerm {
  TruncatedSeries coeff;
  int derivOrder = 0;
};

struct NonlinearTerm {
  TruncatedSeries coeff;
  int power = 2;
};

struct UnknownConstant {
  std::string name;
  int derivOrder = 0;  // the constant is u^(derivOrder)(0)
};

struct Problem {
  std::string name;
  int order = 1;
  TruncatedSeries forcing;
  std::vector<LinearTerm> linearTerms;
  std::vector<NonlinearTerm> nonlinearTerms;
  std::map<int, double> knownICs;  // derivative order -> value at 0
  std::vector<UnknownConstant> unknowns;
  std::vector<BoundaryCondition> closures;
  Eigen::VectorXd guess;  // Newton start; empty means all ones
  int terms = 6;
  int cap = kDefaultCap;
};

/// Throws SemanticError when the problem is not a well-posed normal form.
void validate(const Problem& p);

/// Initial data u^(i)(0), i < order, as polynomials (numbers or symbols).
std::vector<UnknownPoly> initialValues(const Problem& p);

struct TermLadder {
  std::vector<TruncatedSeries> terms;
  std::vector<std::string> warnings;
};

TruncatedSeries buildZerothTerm(const Problem& p, std::vector<std::string>* warnings = nullptr);

/// p^n coefficient of (sum_k p^k ladder[k])^power; reads ladder[0..n].
TruncatedSeries hesPolynomial(std::span<const TruncatedSeries> ladder, int n, int power);

/// Right-hand side of the grade-k equation, built from ladder[0..k-1].
TruncatedSeries rightHandSide(const Problem& p, std::span<const TruncatedSeries> ladder, int k);

TruncatedSeries nextTerm(const Problem& p, std::span<const TruncatedSeries> ladder, int k,
                         std::vector<std::string>* warnings = nullptr);

TermLadder buildLadder(const Problem& p);

/// The p -> 1 sum of the ladder.
TruncatedSeries assemble(std::span<const TruncatedSeries> ladder);

struct HpmSolution {
  TermLadder ladder;
  TruncatedSeries series;  // assembled, still symbolic in the unknowns
  std::vector<UnknownPoly> residuals;
  ConstantSolution constants;
  TruncatedSeries numeric;  // series with the constants substituted
  std::vector<std::string> warnings;
};

HpmSolution solve(const Problem& p, const NewtonOptions& opts = {});

}  // namespace hpmbvp
