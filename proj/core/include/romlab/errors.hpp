#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace romlab {

/// Non-finite value produced while evaluating an analytic function.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every correlation eigenvalue fell below the rank tolerance.
class DegenerateEnsembleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense linear solve failed (singular or non-finite system).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step failed: Picard did not converge, or the state blew up.
class StepDivergenceError : public std::runtime_error {
 public:
  StepDivergenceError(const std::string& what, std::size_t step, double residual)
      : std::runtime_error(what), step_(step), residual_(residual) {}

  std::size_t step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t step_;
  double residual_;
};

/// Malformed or mismatched POD cache file.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace romlab
