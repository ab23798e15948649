#pragma once

#include <stdexcept>
#include <string>

namespace phaseflow {

/// Fields or spectra that live on different grids were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the domain of a function (|s| > 1 for the potential,
/// nonzero mean for the inverse Laplacian, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation of a log-potential derivative at (or numerically at) |s| = 1.
class SingularArgument : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A time step could not be completed (Newton did not converge, NaN, ...).
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual)
  {
  }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The transported gradient exceeded the configured ceiling.
class GradientBlowUp : public StepFailure {
 public:
  GradientBlowUp(const std::string& what, double grad_max) : StepFailure(what, grad_max) {}
};

}  // namespace phaseflow
