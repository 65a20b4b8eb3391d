#pragma once

#include <stdexcept>
#include <string>

namespace frackernel {

/// Invalid argument for a mathematical operation (pole, out-of-range index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The quantity exists mathematically but is infinite at the requested point.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An asymptotic formula needs a finite profile moment that does not exist.
class UnsupportedProfileError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parameter combination not covered by any closed-form asymptotic case.
class UncoveredCaseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sample batch is unusable for a goodness-of-fit comparison.
class DegenerateSampleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature did not reach the requested tolerance. Carries the best estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_value, double best_log_value,
                   double est_error)
      : std::runtime_error(what),
        best_value_(best_value),
        best_log_value_(best_log_value),
        est_error_(est_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_log_value() const noexcept { return best_log_value_; }
  double est_error() const noexcept { return est_error_; }

 private:
  double best_value_;
  double best_log_value_;
  double est_error_;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace frackernel
