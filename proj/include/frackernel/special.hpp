#pragma once

// Gamma-family special functions and the classical identities behind the
// closed-form constants (duplication, reflection, Beta integral).

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frackernel/error.hpp"

namespace frackernel {

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs| / max(|lhs|, |rhs|); zero when both sides vanish.
  double residual = 0.0;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

inline IdentityResidual make_residual(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return {lhs, rhs, scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale};
}

}  // namespace detail

/// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
inline double gamma(double x) {
  detail::require(std::isfinite(x), "gamma: argument must be finite");
  if (detail::is_nonpositive_integer(x)) throw DomainError("gamma: pole at non-positive integer");
  return std::tgamma(x);
}

/// log|Gamma(x)|, usable far beyond the overflow point of gamma() (x > 171.6).
inline double log_gamma(double x) {
  detail::require(std::isfinite(x), "log_gamma: argument must be finite");
  if (detail::is_nonpositive_integer(x)) {
    throw DomainError("log_gamma: pole at non-positive integer");
  }
  return std::lgamma(x);
}

/// Gamma(a) / Gamma(b) for positive arguments, in log space when a factor would overflow.
inline double gamma_ratio(double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "gamma_ratio: arguments must be positive");
  if (a < 170.0 && b < 170.0) return gamma(a) / gamma(b);
  return std::exp(log_gamma(a) - log_gamma(b));
}

inline double beta_fn(double r, double s) {
  detail::require(r > 0.0 && s > 0.0, "beta_fn: arguments must be positive");
  if (r + s < 170.0) return gamma(r) * gamma(s) / gamma(r + s);
  return std::exp(log_gamma(r) + log_gamma(s) - log_gamma(r + s));
}

inline double log_beta_fn(double r, double s) {
  detail::require(r > 0.0 && s > 0.0, "log_beta_fn: arguments must be positive");
  return log_gamma(r) + log_gamma(s) - log_gamma(r + s);
}

/// Legendre duplication: Gamma(z) Gamma(z + 1/2) = 2^{1-2z} sqrt(pi) Gamma(2z).
inline IdentityResidual check_duplication(double z) {
  detail::require(z > 0.0, "check_duplication: z must be positive");
  if (2.0 * z < 170.0) {
    return detail::make_residual(gamma(z) * gamma(z + 0.5),
                                 std::exp2(1.0 - 2.0 * z) * std::sqrt(std::numbers::pi) *
                                     gamma(2.0 * z));
  }
  // compare logs for large z; the residual is then a relative error in the logs
  return detail::make_residual(
      log_gamma(z) + log_gamma(z + 0.5),
      (1.0 - 2.0 * z) * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) +
          log_gamma(2.0 * z));
}

/// Euler reflection: Gamma(beta) Gamma(1 - beta) = pi / sin(pi beta).
inline IdentityResidual check_reflection(double beta) {
  detail::require(beta > 0.0 && beta < 1.0, "check_reflection: beta must lie in (0,1)");
  return detail::make_residual(gamma(beta) * gamma(1.0 - beta),
                               std::numbers::pi / std::sin(std::numbers::pi * beta));
}

}  // namespace frackernel
