#pragma once

// Problem-definition files (.bvp).
//
//   problem "name"
//   order 3
//   forcing -1
//   linear 25 D1                  # 25 * u'
//   nonlinear exp(-x) U^2         # e^{-x} * u^2
//   ic D0 = A                     # unknown constant at x = 0
//   ic D1 = 0
//   bc D1(1) = 0                  # closure: weight * D<d>(point) sums
//   bc D0(0.5) - D0(0.75) = sinh(1/2) - sinh(3/4)
//   guess A = 0.5
//   terms 11
//   cap 32
//   exact x*(1 - x)*exp(x)
//
// Expressions support numbers, x, e, + - * / ^ (nonnegative integer
// exponents), and exp/sinh/cosh of arguments affine in x.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpmbvp/hpm.hpp"

namespace hpmbvp {

struct Expr {
  enum class Kind { Number, Variable, Euler, Negate, Add, Sub, Mul, Div, Pow, Exp, Sinh, Cosh };

  Kind kind = Kind::Number;
  double value = 0.0;  // Number
  int exponent = 0;    // Pow
  std::vector<Expr> args;

  static Expr number(double v) { return {Kind::Number, v, 0, {}}; }
  static Expr variable() { return {Kind::Variable, 0.0, 0, {}}; }
  static Expr euler() { return {Kind::Euler, 0.0, 0, {}}; }
  static Expr unary(Kind k, Expr a) { return {k, 0.0, 0, {std::move(a)}}; }
  static Expr binary(Kind k, Expr a, Expr b) { return {k, 0.0, 0, {std::move(a), std::move(b)}}; }
  static Expr power(Expr base, int n) { return {Kind::Pow, 0.0, n, {std::move(base)}}; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct LinearSpec {
  Expr coeff;
  int derivOrder = 0;
  friend bool operator==(const LinearSpec&, const LinearSpec&) = default;
};

struct NonlinearSpec {
  Expr coeff;
  int power = 2;
  friend bool operator==(const NonlinearSpec&, const NonlinearSpec&) = default;
};

struct IcSpec {
  int derivOrder = 0;
  std::variant<Expr, std::string> value;  // number or unknown symbol
  friend bool operator==(const IcSpec&, const IcSpec&) = default;
};

struct BcTermSpec {
  bool negated = false;         // preceded by '-'
  std::optional<Expr> weight;   // absent means 1
  int derivOrder = 0;
  Expr point;
  friend bool operator==(const BcTermSpec&, const BcTermSpec&) = default;
};

struct BcSpec {
  std::vector<BcTermSpec> terms;
  Expr rhs;
  friend bool operator==(const BcSpec&, const BcSpec&) = default;
};

struct GuessSpec {
  std::string symbol;
  Expr value;
  friend bool operator==(const GuessSpec&, const GuessSpec&) = default;
};

struct ProblemFile {
  std::string name;
  std::optional<int> order;
  std::optional<int> terms;
  std::optional<int> cap;
  std::optional<Expr> forcing;
  std::vector<LinearSpec> linear;
  std::vector<NonlinearSpec> nonlinear;
  std::vector<IcSpec> ics;
  std::vector<BcSpec> bcs;
  std::vector<GuessSpec> guesses;
  std::optional<Expr> exact;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Ladder length used when a file has no `terms` statement.
inline constexpr int kDefaultTerms = 6;

ProblemFile parseProblem(std::string_view text);

/// Reads and parses a file; IoError when it cannot be read.
ProblemFile loadProblemFile(const std::filesystem::path& path);

/// Parses a standalone expression.
Expr parseExpr(std::string_view text);

/// Canonical text; parseProblem(toText(pf)) == pf.
std::string toText(const ProblemFile& pf);
std::string formatExpr(const Expr& e);

bool dependsOnX(const Expr& e);

double evalExprNumeric(const Expr& e, double x = 0.0);

/// Maclaurin series of e truncated at cap. SemanticError if e is outside the
/// seedable vocabulary (division by something containing x, exp of a
/// non-affine argument).
TruncatedSeries seriesOf(const Expr& e, int cap);

/// Validated normal form. `capOverride` replaces the file's cap.
Problem elaborate(const ProblemFile& pf, std::optional<int> capOverride = std::nullopt);

}  // namespace hpmbvp
