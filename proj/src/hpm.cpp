#include "hpmbvp/hpm.hpp"

#include <set>

namespace hpmbvp {

namespace {

void fail(const std::string& what) { throw SemanticError(what); }

void note(std::vector<std::string>* warnings, bool dropped, int grade, int cap) {
  if (dropped && warnings) {
    warnings->push_back("CapExhausted: u" + std::to_string(grade) +
                        " lost a nonzero tail beyond degree cap " + std::to_string(cap));
  }
}

}  // namespace

void validate(const Problem& p) {
  const int m = p.order;
  if (m < 1) fail("order must be at least 1");
  if (p.cap < 0) fail("cap must be nonnegative");
  if (p.terms < 1) fail("terms must be at least 1");
  if (p.forcing.cap() != p.cap) fail("forcing series cap differs from problem cap");
  for (const auto& t : p.linearTerms) {
    if (t.derivOrder < 0 || t.derivOrder >= m)
      fail("linear term derivative order " + std::to_string(t.derivOrder) +
           " outside 0.." + std::to_string(m - 1));
    if (t.coeff.cap() != p.cap) fail("linear coefficient cap differs from problem cap");
    if (!t.coeff.isNumeric()) fail("linear coefficient depends on unknowns");
  }
  for (const auto& t : p.nonlinearTerms) {
    if (t.power < 2) fail("nonlinear power must be at least 2");
    if (t.coeff.cap() != p.cap) fail("nonlinear coefficient cap differs from problem cap");
    if (!t.coeff.isNumeric()) fail("nonlinear coefficient depends on unknowns");
  }

  std::set<int> seen;
  for (const auto& [d, v] : p.knownICs) {
    if (d < 0 || d >= m)
      fail("initial condition on u^(" + std::to_string(d) + ")(0) with order " +
           std::to_string(m));
    seen.insert(d);
  }
  std::set<std::string> names;
  for (const auto& u : p.unknowns) {
    if (u.derivOrder < 0 || u.derivOrder >= m)
      fail("unknown " + u.name + " on derivative order " + std::to_string(u.derivOrder) +
           " outside 0.." + std::to_string(m - 1));
    if (!seen.insert(u.derivOrder).second)
      fail("derivative order " + std::to_string(u.derivOrder) + " has two initial conditions");
    if (!names.insert(u.name).second) fail("unknown " + u.name + " declared twice");
  }
  if (static_cast<int>(seen.size()) != m)
    fail("initial conditions cover " + std::to_string(seen.size()) + " of " + std::to_string(m) +
         " derivative orders at 0");

  if (p.closures.size() != p.unknowns.size())
    fail("closure count " + std::to_string(p.closures.size()) + " != unknown count " +
         std::to_string(p.unknowns.size()));
  for (const auto& bc : p.closures) {
    if (bc.atoms.empty()) fail("boundary condition without terms");
    for (const auto& a : bc.atoms) {
      if (a.derivOrder < 0 || a.derivOrder > m - 1)
        fail("boundary condition on u^(" + std::to_string(a.derivOrder) +
             ") exceeds order-1 = " + std::to_string(m - 1));
      if (!(a.point >= 0.0 && a.point <= 1.0))
        fail("boundary point " + std::to_string(a.point) + " outside [0, 1]");
    }
  }
  if (p.guess.size() != 0 && static_cast<std::size_t>(p.guess.size()) != p.unknowns.size())
    fail("guess vector size does not match unknown count");
}

std::vector<UnknownPoly> initialValues(const Problem& p) {
  std::vector<UnknownPoly> ics(static_cast<std::size_t>(p.order));
  for (const auto& [d, v] : p.knownICs) ics[static_cast<std::size_t>(d)] = UnknownPoly(v);
  for (std::size_t i = 0; i < p.unknowns.size(); ++i)
    ics[static_cast<std::size_t>(p.unknowns[i].derivOrder)] = UnknownPoly::variable(i);
  return ics;
}

TruncatedSeries buildZerothTerm(const Problem& p, std::vector<std::string>* warnings) {
  const auto ics = initialValues(p);
  bool dropped = false;
  auto u0 = antidifferentiate(p.forcing, p.order, std::span<const UnknownPoly>(ics), &dropped);
  note(warnings, dropped, 0, p.cap);
  return u0;
}

TruncatedSeries hesPolynomial(std::span<const TruncatedSeries> ladder, int n, int power) {
  if (n < 0 || static_cast<std::size_t>(n) >= ladder.size())
    throw std::invalid_argument("He polynomial of grade " + std::to_string(n) + " needs " +
                                std::to_string(n + 1) + " ladder terms");
  if (power < 1) throw std::invalid_argument("He polynomial power must be positive");
  const int cap = ladder[0].cap();

  // graded[g] holds the p^g part of (sum_k p^k u_k)^r for the current r.
  std::vector<TruncatedSeries> graded(ladder.begin(), ladder.begin() + n + 1);
  for (int r = 1; r < power; ++r) {
    std::vector<TruncatedSeries> next(static_cast<std::size_t>(n) + 1, TruncatedSeries(cap));
    for (int g = 0; g <= n; ++g)
      for (int i = 0; i <= g; ++i) next[g] += graded[i] * ladder[g - i];
    graded = std::move(next);
  }
  return graded[n];
}

TruncatedSeries rightHandSide(const Problem& p, std::span<const TruncatedSeries> ladder, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > ladder.size())
    throw std::invalid_argument("grade " + std::to_string(k) + " needs " + std::to_string(k) +
                                " earlier ladder terms");
  const auto& prev = ladder[k - 1];
  TruncatedSeries rhs(p.cap);
  for (const auto& t : p.linearTerms) rhs += t.coeff * differentiate(prev, t.derivOrder);
  for (const auto& t : p.nonlinearTerms)
    rhs += t.coeff * hesPolynomial(ladder.first(static_cast<std::size_t>(k)), k - 1, t.power);
  return rhs;
}

TruncatedSeries nextTerm(const Problem& p, std::span<const TruncatedSeries> ladder, int k,
                         std::vector<std::string>* warnings) {
  const auto rhs = rightHandSide(p, ladder, k);
  const std::vector<UnknownPoly> zeros(static_cast<std::size_t>(p.order));
  bool dropped = false;
  auto uk = antidifferentiate(rhs, p.order, std::span<const UnknownPoly>(zeros), &dropped);
  note(warnings, dropped, k, p.cap);
  return uk;
}

TermLadder buildLadder(const Problem& p) {
  validate(p);
  TermLadder ladder;
  ladder.terms.reserve(static_cast<std::size_t>(p.terms));
  ladder.terms.push_back(buildZerothTerm(p, &ladder.warnings));
  for (int k = 1; k < p.terms; ++k)
    ladder.terms.push_back(nextTerm(p, ladder.terms, k, &ladder.warnings));
  return ladder;
}

TruncatedSeries assemble(std::span<const TruncatedSeries> ladder) {
  if (ladder.empty()) return TruncatedSeries();
  TruncatedSeries u(ladder[0].cap());
  for (const auto& t : ladder) u += t;
  return u;
}

HpmSolution solve(const Problem& p, const NewtonOptions& opts) {
  HpmSolution s;
  s.ladder = buildLadder(p);
  s.warnings = s.ladder.warnings;
  s.series = assemble(s.ladder.terms);
  for (const auto& bc : p.closures) s.residuals.push_back(closureResidual(s.series, bc));

  Eigen::VectorXd guess = p.guess;
  if (guess.size() == 0) guess = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p.unknowns.size()));
  s.constants = solveConstants(s.residuals, p.unknowns.size(), guess, opts);
  s.numeric = substitute(s.series, s.constants.values);
  return s;
}

}  // namespace hpmbvp
