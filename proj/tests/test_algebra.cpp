#include <doctest.h>

#include <cmath>

#include "hpmbvp/hpm.hpp"
#include "properties.hpp"

using hpmbvp::TruncatedSeries;
using hpmbvp::UnknownPoly;
using hpmbvp::testing::loadShipped;

namespace {
const UnknownPoly A = UnknownPoly::variable(0);
const UnknownPoly B = UnknownPoly::variable(1);
UnknownPoly c(double v) { return UnknownPoly(v); }

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

double sig(double v, int digits) {
  if (v == 0.0) return 0.0;
  const double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(v))));
  return std::round(v * scale) / scale;
}
}  // namespace

TEST_CASE("closure residual") {
  TruncatedSeries u(4);
  u[0] = A;
  u[2] = B * 0.5;
  u[3] = c(-1.0 / 6.0);

  // u(0.5) = 0
  const auto r0 = hpmbvp::closureResidual(u, {{{1.0, 0, 0.5}}, 0.0});
  CHECK(hpmbvp::testing::polyClose(r0, A + B * 0.125 - c(0.125 / 6.0), 1e-15));

  // u'(1) = 0
  const auto r1 = hpmbvp::closureResidual(u, {{{1.0, 1, 1.0}}, 0.0});
  CHECK(hpmbvp::testing::polyClose(r1, B - c(0.5), 1e-15));

  // u(0) - 2 u''(1) = 3
  const auto r2 = hpmbvp::closureResidual(u, {{{1.0, 0, 0.0}, {-2.0, 2, 1.0}}, 3.0});
  CHECK(hpmbvp::testing::polyClose(r2, A - B * 2.0 + c(2.0 - 3.0), 1e-15));
}

TEST_CASE("affine systems take one direct solve") {
  const std::vector<UnknownPoly> rs{A - c(3), B + c(1)};
  const auto sol = hpmbvp::solveConstants(rs, 2, vec({0, 0}));
  CHECK(sol.method == hpmbvp::SolveMethod::DirectLinear);
  CHECK(sol.iterations == 1);
  CHECK(sol.values(0) == doctest::Approx(3.0));
  CHECK(sol.values(1) == doctest::Approx(-1.0));
  CHECK(sol.residualNorm <= 1e-15);
}

TEST_CASE("Newton on a quadratic") {
  const std::vector<UnknownPoly> rs{A * A - c(4)};
  const auto sol = hpmbvp::solveConstants(rs, 1, vec({1.0}));
  CHECK(sol.method == hpmbvp::SolveMethod::Newton);
  CHECK(sol.values(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sol.iterations >= 1);
  CHECK(sol.iterations <= 10);
  CHECK(sol.residualNorm <= 1e-12);

  // already converged guess
  const auto again = hpmbvp::solveNewton(rs, 1, vec({2.0}));
  CHECK(again.iterations == 0);
}

TEST_CASE("shipped linear problems") {
  const auto s1 = hpmbvp::solve(loadShipped("ex3_1.bvp"));
  CHECK(s1.constants.method == hpmbvp::SolveMethod::DirectLinear);
  CHECK(std::abs(s1.constants.values(0) - -0.0121070858221264) <= 1e-9);
  CHECK(std::abs(s1.constants.values(1) - 0.197322860640254) <= 1e-9);

  const auto s2 = hpmbvp::solve(loadShipped("ex3_2.bvp"));
  const auto expected = vec({1.0, 1.0, 0.0, 1.0});
  CHECK((s2.constants.values - expected).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("solver errors") {
  // rank one
  const std::vector<UnknownPoly> singular{A + B - c(1), A * 2.0 + B * 2.0 - c(2)};
  CHECK_THROWS_AS(hpmbvp::solveConstants(singular, 2, vec({0, 0})), hpmbvp::SingularSystem);

  const std::vector<UnknownPoly> one{A - c(1)};
  CHECK_THROWS_AS(hpmbvp::solveConstants(one, 2, vec({0, 0})), hpmbvp::DimensionMismatch);
  CHECK_THROWS_AS(hpmbvp::solveConstants(one, 1, vec({0, 0})), hpmbvp::DimensionMismatch);

  // A^2 + 1 has no real root
  const std::vector<UnknownPoly> noRoot{A * A + c(1)};
  CHECK_THROWS_AS(hpmbvp::solveConstants(noRoot, 1, vec({0.5})), hpmbvp::NoConvergence);

  hpmbvp::NewtonOptions few;
  few.maxIter = 1;
  const std::vector<UnknownPoly> quad{A * A - c(2)};
  CHECK_THROWS_AS(hpmbvp::solveNewton(quad, 1, vec({10.0}), few), hpmbvp::NoConvergence);
}

TEST_CASE("substitute") {
  const auto s1 = hpmbvp::solve(loadShipped("ex3_1.bvp"));
  const auto& n = s1.numeric;
  CHECK(n.isNumeric());
  CHECK(sig(n[0].constantTerm(), 6) == -0.0121071);
  CHECK(sig(n[2].constantTerm(), 6) == 0.0986614);
  CHECK(sig(n[3].constantTerm(), 5) == -0.16667);
  CHECK(sig(n[4].constantTerm(), 6) == 0.205545);
  CHECK(sig(n[5].constantTerm(), 6) == -0.208333);

  TruncatedSeries u(2);
  u[1] = A * B;
  CHECK_THROWS_AS(hpmbvp::substitute(u, vec({1.0})), hpmbvp::MissingSymbol);
  CHECK(hpmbvp::substitute(u, vec({2.0, 3.0}))[1] == c(6));
}

TEST_CASE("algebra properties") {
  using namespace hpmbvp::testing;
  for (auto r : {algebraNewtonOneStepOnAffine(31), algebraPermutationInvariance(32),
                 algebraRowScalingInvariance(33), algebraSubstitutedResidualsSmall()}) {
    INFO(r.detail);
    CHECK(r.ok);
  }
}
