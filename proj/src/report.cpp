#include "hpmbvp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hpmbvp {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixedWidth(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::vector<double> uniformGrid(int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = double(i) / double(points - 1);
  return xs;
}

double residualDiagnostic(const ProblemFile& pf, const TruncatedSeries& numeric,
                          std::span<const double> grid) {
  if (!pf.order) throw SemanticError("missing 'order' statement");
  const int m = *pf.order;
  std::vector<TruncatedSeries> derivs;
  for (int d = 0; d <= m; ++d) derivs.push_back(differentiate(numeric, d));

  double sup = 0.0;
  for (double x : grid) {
    const double u = valueAt(derivs[0], x);
    double r = valueAt(derivs[static_cast<std::size_t>(m)], x);
    if (pf.forcing) r -= evalExprNumeric(*pf.forcing, x);
    for (const auto& l : pf.linear)
      r -= evalExprNumeric(l.coeff, x) * valueAt(derivs.at(static_cast<std::size_t>(l.derivOrder)), x);
    for (const auto& n : pf.nonlinear) r -= evalExprNumeric(n.coeff, x) * std::pow(u, n.power);
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

SolveReport solveProblemFile(const ProblemFile& pf, const SolveOverrides& overrides) {
  Problem problem = elaborate(pf, overrides.cap);
  if (overrides.terms) {
    problem.terms = *overrides.terms;
    validate(problem);
  }
  NewtonOptions opts;
  if (overrides.tol) opts.tol = *overrides.tol;

  const HpmSolution sol = solve(problem, opts);

  SolveReport report;
  report.problemName = problem.name;
  report.order = problem.order;
  report.terms = problem.terms;
  report.cap = problem.cap;
  for (const auto& u : problem.unknowns) report.unknownNames.push_back(u.name);
  report.constants = sol.constants;
  report.warnings = sol.warnings;
  for (int k = 0; k <= sol.numeric.cap(); ++k) {
    const double c = sol.numeric[k].constantTerm();
    if (c != 0.0) report.seriesCoeffs.emplace_back(k, c);
  }

  const auto grid = uniformGrid(overrides.grid.value_or(kDefaultGridPoints));
  for (double x : grid) {
    TableRow row;
    row.x = x;
    row.approx = valueAt(sol.numeric, x);
    if (pf.exact) {
      row.exact = evalExprNumeric(*pf.exact, x);
      row.absError = std::abs(row.approx - *row.exact);
    }
    report.table.push_back(row);
  }
  report.residualSup = residualDiagnostic(pf, sol.numeric, grid);
  return report;
}

SolveReport solveFile(const std::filesystem::path& path, const SolveOverrides& overrides) {
  return solveProblemFile(loadProblemFile(path), overrides);
}

std::string toCsv(const SolveReport& report) {
  const bool withExact = !report.table.empty() && report.table.front().exact.has_value();
  std::string out = withExact ? "x,exact,approx,abs_error\n" : "x,approx\n";
  for (const auto& row : report.table) {
    out += g17(row.x);
    if (withExact) out += "," + g17(*row.exact);
    out += "," + g17(row.approx);
    if (withExact) out += "," + g17(*row.absError);
    out += "\n";
  }
  return out;
}

void writeCsv(const SolveReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << toCsv(report);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void printReport(std::ostream& os, const SolveReport& report, const PrintOptions& opts) {
  os << "problem: " << report.problemName << "\n";
  os << "order " << report.order << ", terms " << report.terms << ", cap " << report.cap << "\n";
  os << "constants (" << methodName(report.constants.method) << ", "
     << report.constants.iterations << " iteration"
     << (report.constants.iterations == 1 ? "" : "s") << ", closure residual "
     << fixedWidth("%.3e", report.constants.residualNorm) << ")\n";
  for (std::size_t i = 0; i < report.unknownNames.size(); ++i)
    os << "  " << report.unknownNames[i] << " = "
       << g17(report.constants.values(static_cast<Eigen::Index>(i))) << "\n";

  if (opts.coefficients) {
    os << "series coefficients:\n";
    for (const auto& [k, c] : report.seriesCoeffs)
      os << "  x^" << k << (k < 10 ? "  " : " ") << fixedWidth("% .17g", c) << "\n";
  }

  const bool withExact = !report.table.empty() && report.table.front().exact.has_value();
  os << "\n     x";
  if (withExact) os << "            exact";
  os << "           approx";
  if (withExact) os << "     abs error";
  os << "\n";
  for (const auto& row : report.table) {
    os << fixedWidth("%6.3f", row.x);
    if (withExact) os << fixedWidth("  % 15.9g", *row.exact);
    os << fixedWidth("  % 15.9g", row.approx);
    if (withExact) os << fixedWidth("  %12.5e", *row.absError);
    os << "\n";
  }

  if (opts.residual)
    os << "\nODE residual sup over grid: " << fixedWidth("%.6e", report.residualSup) << "\n";
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
}

}  // namespace hpmbvp
