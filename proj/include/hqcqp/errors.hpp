#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hqcqp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization hit a non-positive pivot.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(int pivot, double value)
      : Error("not positive definite: pivot " + std::to_string(pivot) + " is " +
              std::to_string(value)),
        pivot_(pivot),
        value_(value) {}

  int pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  int pivot_;
  double value_;
};

/// Jacobi sweeps did not reduce the off-diagonal mass below tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
};

/// A line or plane search failed; carries the partial trace.
class SearchError : public Error {
 public:
  SearchError(const std::string& what, std::vector<TracePoint> trace, double best)
      : Error(what), trace_(std::move(trace)), best_(best) {}

  const std::vector<TracePoint>& trace() const noexcept { return trace_; }
  double best() const noexcept { return best_; }

 private:
  std::vector<TracePoint> trace_;
  double best_;
};

/// The min-max value c* is non-negative, so no finite x satisfies all constraints.
class InfeasibleError : public Error {
 public:
  InfeasibleError(double c_star, bool limit_case)
      : Error("infeasible: c* >= 0"), c_star_(c_star), limit_case_(limit_case) {}

  double c_star() const noexcept { return c_star_; }
  /// c* is zero to working precision: feasible only as p* tends to infinity.
  bool limit_case() const noexcept { return limit_case_; }

 private:
  double c_star_;
  bool limit_case_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqcqp
