#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hpmbvp/probspec.hpp"

namespace hpmbvp {

/// 11 points, x = 0, 0.1, ..., 1.
inline constexpr int kDefaultGridPoints = 11;

struct SolveOverrides {
  std::optional<int> terms;
  std::optional<int> cap;
  std::optional<int> grid;
  std::optional<double> tol;
};

struct TableRow {
  double x = 0.0;
  std::optional<double> exact;
  double approx = 0.0;
  std::optional<double> absError;
};

struct SolveReport {
  std::string problemName;
  int order = 0;
  int terms = 0;
  int cap = 0;
  std::vector<std::string> unknownNames;
  ConstantSolution constants;
  std::vector<std::pair<int, double>> seriesCoeffs;  // nonzero coefficients only
  std::vector<TableRow> table;
  double residualSup = 0.0;
  std::vector<std::string> warnings;
};

/// x_i = i / (points - 1); points >= 2.
std::vector<double> uniformGrid(int points);

/// sup over grid of |U^(m) - f - sum c_j U^(d_j) - sum g_l U^q_l|, with f, c_j,
/// g_l evaluated from their expressions rather than their truncated series.
double residualDiagnostic(const ProblemFile& pf, const TruncatedSeries& numeric,
                          std::span<const double> grid);

SolveReport solveProblemFile(const ProblemFile& pf, const SolveOverrides& overrides = {});

SolveReport solveFile(const std::filesystem::path& path, const SolveOverrides& overrides = {});

/// Header x,exact,approx,abs_error (exact columns only when available),
/// 17 significant digits, LF line endings.
std::string toCsv(const SolveReport& report);

void writeCsv(const SolveReport& report, const std::filesystem::path& path);

struct PrintOptions {
  bool coefficients = false;
  bool residual = false;
};

void printReport(std::ostream& os, const SolveReport& report, const PrintOptions& opts = {});

}  // namespace hpmbvp
