#pragma once

#include <stdexcept>
#include <string>

namespace hpmbvp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem definition errors (exit code 2).
class ProblemError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public ProblemError {
 public:
  SyntaxError(int line, int column, std::string token, const std::string& message)
      : ProblemError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": " + message + (token.empty() ? "" : " (near '" + token + "')")),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

class SemanticError : public ProblemError {
 public:
  using ProblemError::ProblemError;
};

// Failures while determining the unknown constants (exit code 3).
class SolverError : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public SolverError {
 public:
  using SolverError::SolverError;
};

class NoConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};

class DimensionMismatch : public SolverError {
 public:
  using SolverError::SolverError;
};

class MissingSymbol : public SolverError {
 public:
  using SolverError::SolverError;
};

// exit code 4
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpmbvp
