// hpm-bvp: solve multi-point boundary value problems by homotopy perturbation.

#include <CLI11.hpp>
#include <iostream>

#include "hpmbvp/report.hpp"

namespace {

enum ExitCode { kOk = 0, kProblemError = 2, kSolverError = 3, kIoError = 4 };

int runSolve(const std::string& file, const hpmbvp::SolveOverrides& overrides,
             const std::string& csvPath, const hpmbvp::PrintOptions& print) {
  const auto report = hpmbvp::solveFile(file, overrides);
  hpmbvp::printReport(std::cout, report, print);
  if (!csvPath.empty()) hpmbvp::writeCsv(report, csvPath);
  return kOk;
}

int runCheck(const std::string& file) {
  const auto pf = hpmbvp::loadProblemFile(file);
  const auto problem = hpmbvp::elaborate(pf);
  std::cout << "problem: " << problem.name << "\n"
            << "order " << problem.order << ", terms " << problem.terms << ", cap " << problem.cap
            << "\n"
            << "unknowns: " << problem.unknowns.size();
  for (const auto& u : problem.unknowns) std::cout << " " << u.name << "=D" << u.derivOrder << "(0)";
  std::cout << "\nclosures: " << problem.closures.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy perturbation solver for multi-point boundary value problems", "hpm-bvp"};
  app.require_subcommand(1);

  std::string file;
  hpmbvp::SolveOverrides overrides;
  std::string csvPath;
  hpmbvp::PrintOptions print;

  auto* solve = app.add_subcommand("solve", "Run the full pipeline and print the comparison table");
  solve->add_option("file", file, "Problem file (.bvp)")->required();
  solve->add_option("--terms", overrides.terms, "Ladder length K")->check(CLI::PositiveNumber);
  solve->add_option("--cap", overrides.cap, "Series degree cap")->check(CLI::NonNegativeNumber);
  solve->add_option("--grid", overrides.grid, "Number of table points on [0, 1]")
      ->check(CLI::Range(2, 1000000));
  solve->add_option("--tol", overrides.tol, "Newton tolerance on the closure residual max-norm")
      ->check(CLI::PositiveNumber);
  solve->add_option("--csv", csvPath, "Write the table as CSV");
  solve->add_flag("--coeffs", print.coefficients, "Print the numeric series coefficients");
  solve->add_flag("--residual", print.residual, "Print the ODE residual diagnostic");

  std::string checkFile;
  auto* check = app.add_subcommand("check", "Parse and elaborate a problem file");
  check->add_option("file", checkFile, "Problem file (.bvp)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return runSolve(file, overrides, csvPath, print);
    return runCheck(checkFile);
  } catch (const hpmbvp::ProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProblemError;
  } catch (const hpmbvp::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const hpmbvp::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
}
