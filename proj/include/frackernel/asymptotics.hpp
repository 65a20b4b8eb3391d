#pragma once

// Leading-order asymptotics of subordinated and inverse-subordinated kernels,
// closed forms for the Gauss, Cauchy and space-time fractional cases, and the
// Laplace-method integrals behind the exponential regime.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "frackernel/error.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/special.hpp"

namespace frackernel {

enum class Regime {
  SubFar,
  SubNear,
  InvSubLargeT_dLtAlpha,
  InvSubLargeT_dEqAlpha,
  InvSubLargeT_dGtAlpha,
  InvSubSmallT_Poly,
  InvSubSmallT_Exp,
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SubFar: return "SubFar";
    case Regime::SubNear: return "SubNear";
    case Regime::InvSubLargeT_dLtAlpha: return "InvSubLargeT_dLtAlpha";
    case Regime::InvSubLargeT_dEqAlpha: return "InvSubLargeT_dEqAlpha";
    case Regime::InvSubLargeT_dGtAlpha: return "InvSubLargeT_dGtAlpha";
    case Regime::InvSubSmallT_Poly: return "InvSubSmallT_Poly";
    case Regime::InvSubSmallT_Exp: return "InvSubSmallT_Exp";
  }
  return "?";
}

struct AsymptoticResult {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  Regime regime = Regime::SubFar;
  /// the similarity variable the limit is taken in
  double similarity = 0.0;
};

namespace detail {

inline AsymptoticResult from_log(double log_value, Regime regime, double similarity) {
  return {std::exp(log_value), log_value, regime, similarity};
}

inline void check_beta(double beta) {
  require(beta > 0.0 && beta < 1.0, "asymptotics: beta must lie in (0,1)");
}

inline bool same(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

inline double log_pi() { return std::log(std::numbers::pi); }

}  // namespace detail

/// rho t^{-1/(alpha beta)}
inline double sub_similarity(double alpha, double beta, const EvalPoint& p) {
  return p.rho * std::pow(p.t, -1.0 / (alpha * beta));
}

/// rho^{-alpha/beta} t
inline double invsub_similarity(double alpha, double beta, const EvalPoint& p) {
  return std::exp(-alpha / beta * std::log(p.rho) + std::log(p.t));
}

/// rho t^{-beta/alpha}, the variable of the exponential small-time regime
inline double invsub_similarity_exp(double alpha, double beta, const EvalPoint& p) {
  return p.rho * std::pow(p.t, -beta / alpha);
}

// ---------------------------------------------------------------------------
// Generic profile-kernel asymptotics

/// p^S as rho t^{-1/(alpha beta)} -> infinity
inline AsymptoticResult sub_asym_far(const ProfileKernel& k, double beta, const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  detail::require(p.rho > 0.0, "sub_asym_far: rho must be positive");
  const double q = k.d + k.alpha * beta;
  const double m = profile_moment(k.profile, q);
  if (std::isinf(m)) throw UnsupportedProfileError("sub_asym_far: profile moment is infinite");
  const double lv = std::log(k.c1) + std::log(k.alpha * beta) - log_gamma(1.0 - beta) -
                    q * std::log(k.c2) + std::log(m) - q * std::log(p.rho) + std::log(p.t);
  return detail::from_log(lv, Regime::SubFar, sub_similarity(k.alpha, beta, p));
}

/// p^S as rho t^{-1/(alpha beta)} -> 0; independent of rho
inline AsymptoticResult sub_asym_near(const ProfileKernel& k, double beta, const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  const double lv = std::log(k.c1) + std::log(profile_at_zero(k.profile)) +
                    log_gamma(k.d / (k.alpha * beta)) - std::log(beta) -
                    log_gamma(k.d / k.alpha) - k.d / (k.alpha * beta) * std::log(p.t);
  return detail::from_log(lv, Regime::SubNear, sub_similarity(k.alpha, beta, p));
}

/// p^{S^-1} as rho^{-alpha/beta} t -> infinity
inline AsymptoticResult invsub_asym_large_t(const ProfileKernel& k, double beta,
                                            const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  const double a = k.alpha, d = k.d;
  const double lt = std::log(p.t);
  const double log_f0 = std::log(profile_at_zero(k.profile));
  if (detail::same(d, a)) {
    detail::require(p.rho > 0.0, "invsub_asym_large_t: rho must be positive when d = alpha");
    const double sim = invsub_similarity(a, beta, p);
    detail::require(sim > 1.0, "invsub_asym_large_t: log regime needs rho^{-alpha/beta} t > 1");
    const double lv = std::log(k.c1) + std::log(beta) - log_gamma(1.0 - beta) + log_f0 -
                      beta * lt + std::log(std::log(sim));
    return detail::from_log(lv, Regime::InvSubLargeT_dEqAlpha, sim);
  }
  const double sim = p.rho > 0.0 ? invsub_similarity(a, beta, p) : kInfinite;
  if (d < a) {
    const double lv = std::log(k.c1) + log_f0 + log_gamma(1.0 - d / a) -
                      log_gamma(1.0 - beta * d / a) - beta * d / a * lt;
    return detail::from_log(lv, Regime::InvSubLargeT_dLtAlpha, sim);
  }
  detail::require(p.rho > 0.0, "invsub_asym_large_t: rho must be positive when d > alpha");
  const double m = profile_moment(k.profile, d - a);
  if (std::isinf(m)) {
    throw UnsupportedProfileError("invsub_asym_large_t: profile moment is infinite");
  }
  const double lv = std::log(k.c1) + (a - d) * std::log(k.c2) + std::log(a) -
                    log_gamma(1.0 - beta) + std::log(m) + (a - d) * std::log(p.rho) - beta * lt;
  return detail::from_log(lv, Regime::InvSubLargeT_dGtAlpha, sim);
}

struct ExponentialConstants {
  double log_k1 = 0.0;
  double log_k2 = 0.0;
  double k1() const { return std::exp(log_k1); }
  double k2() const { return std::exp(log_k2); }
};

/// K1, K2 of the exponential small-time regime.
inline ExponentialConstants exponential_constants(double c1, double c2, double d, double alpha,
                                                  double beta) {
  detail::check_beta(beta);
  detail::require(alpha >= 2.0, "exponential_constants: alpha must be >= 2");
  const double a = alpha, b = beta;
  ExponentialConstants k;
  k.log_k1 = std::log(c1) - d * (1.0 - b) / (a - b) * std::log(c2) +
             0.5 * (std::log(a - 1.0) - std::log((a - b) * b)) +
             d * (a - 1.0) * (1.0 - b) / (a * (a - b)) * std::log(a - 1.0) +
             d * (a - 1.0) * b / (a * (a - b)) * std::log(b);
  k.log_k2 = a / (a - b) * std::log(c2) + std::log(a - b) -
             (a - 1.0) / (a - b) * std::log(a - 1.0) + b / (a - b) * std::log(b);
  return k;
}

/// p^{S^-1} as rho^{-alpha/beta} t -> 0
inline AsymptoticResult invsub_asym_small_t(const ProfileKernel& k, double beta,
                                            const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  detail::require(p.rho > 0.0, "invsub_asym_small_t: rho must be positive");
  const double a = k.alpha, d = k.d, b = beta;
  const double lr = std::log(p.rho), lt = std::log(p.t);
  if (k.exponential_type()) {
    const auto kc = exponential_constants(k.c1, k.c2, d, a, b);
    const double lv = kc.log_k1 - d * (1.0 - b) / (a - b) * lr -
                      d * (a - 1.0) * b / (a * (a - b)) * lt -
                      std::exp(kc.log_k2 + a / (a - b) * lr - b / (a - b) * lt);
    return detail::from_log(lv, Regime::InvSubSmallT_Exp, invsub_similarity_exp(a, b, p));
  }
  // polynomial far field F(r) ~ L r^{-d-alpha}
  const double lv = std::log(k.c1) + std::log(far_field_coefficient(k.profile)) -
                    (d + a) * std::log(k.c2) - std::log(b) - log_gamma(b) - (d + a) * lr +
                    b * lt;
  return detail::from_log(lv, Regime::InvSubSmallT_Poly, invsub_similarity(a, b, p));
}

/// The exponential small-time asymptotics written in A = rho t^{-beta/alpha}.
inline double log_invsub_asym_small_t_in_a(const ProfileKernel& k, double beta, double t,
                                           double A) {
  const double a = k.alpha, d = k.d, b = beta;
  const auto kc = exponential_constants(k.c1, k.c2, d, a, b);
  return kc.log_k1 - b * d / a * std::log(t) - d * (1.0 - b) / (a - b) * std::log(A) -
         std::exp(kc.log_k2 + a / (a - b) * std::log(A));
}

// ---------------------------------------------------------------------------
// Laplace method and I(B)

struct LaplaceProblem {
  std::function<double(double)> h;
  double h_second_at_r0 = 1.0;
  double r0 = 0.0;
  double h_at_r0 = 0.0;
  double c = 1.0;
  double v = -std::numeric_limits<double>::infinity();
  double w = std::numeric_limits<double>::infinity();
};

/// log of e^{-C h(r0)} sqrt(2 pi / (C h''(r0)))
inline double log_laplace_approx(const LaplaceProblem& pr) {
  detail::require(pr.h_second_at_r0 > 0.0, "laplace_approx: h''(r0) must be positive");
  detail::require(pr.h_at_r0 >= 0.0, "laplace_approx: h(r0) must be non-negative");
  detail::require(pr.c > 0.0, "laplace_approx: C must be positive");
  detail::require(pr.r0 > pr.v && pr.r0 < pr.w, "laplace_approx: r0 must lie in (v, w)");
  return -pr.c * pr.h_at_r0 + 0.5 * std::log(2.0 * std::numbers::pi / (pr.c * pr.h_second_at_r0));
}

inline double laplace_approx(const LaplaceProblem& pr) { return std::exp(log_laplace_approx(pr)); }

/// log I(B), the large-B asymptotics of ∫ s^a exp(-B s^b - c s^{-dd}) ds
inline double log_ib_asym(double a, double b, double c, double dd, double B) {
  detail::require(b > 0.0 && c > 0.0 && dd > 0.0 && B > 0.0,
                  "ib_asym: b, c, dd, B must be positive");
  const double s = b + dd;
  return 0.5 * std::log(2.0 * std::numbers::pi / s) -
         (2.0 * (a + 1.0) + dd) / (2.0 * s) * std::log(b * B) +
         (2.0 * (a + 1.0) - b) / (2.0 * s) * std::log(c * dd) -
         s * std::exp(b / s * std::log(c / b) + dd / s * std::log(B / dd));
}

inline double ib_asym(double a, double b, double c, double dd, double B) {
  return std::exp(log_ib_asym(a, b, c, dd, B));
}

/// The exponential small-time asymptotics assembled from I(B): the kernel integral
/// against the small-s form of p_beta is C1 t^{-beta d/alpha} (prefactor) ∫ s^a e^{-B s^b - c s^{-dd}} ds.
inline double log_invsub_small_t_via_ib(const ProfileKernel& k, double beta, const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  detail::require(k.exponential_type(), "log_invsub_small_t_via_ib: needs an exponential profile");
  const double a = k.alpha, d = k.d, b = beta;
  const double ia = b * d / a - (2.0 - b) / (2.0 * (1.0 - b));
  const double ib = b / (a - 1.0);
  const double ic = (1.0 - b) * std::exp(b / (1.0 - b) * std::log(b));
  const double idd = b / (1.0 - b);
  const double log_sim = std::log(invsub_similarity(a, b, p));
  const double log_big_b = a / (a - 1.0) * std::log(k.c2) - b / (a - 1.0) * log_sim;
  const double log_pref = std::log(k.c1) - 0.5 * std::log(2.0 * std::numbers::pi * (1.0 - b)) +
                          std::log(b) / (2.0 * (1.0 - b)) - b * d / a * std::log(p.t);
  // I(B) at log B without forming B itself
  const double s = ib + idd;
  const double log_ib = 0.5 * std::log(2.0 * std::numbers::pi / s) -
                        (2.0 * (ia + 1.0) + idd) / (2.0 * s) * (std::log(ib) + log_big_b) +
                        (2.0 * (ia + 1.0) - ib) / (2.0 * s) * std::log(ic * idd) -
                        s * std::exp(ib / s * std::log(ic / ib) +
                                     idd / s * (log_big_b - std::log(idd)));
  return log_pref + log_ib;
}

// ---------------------------------------------------------------------------
// Closed forms for Gauss and Cauchy base kernels and the space-time fractional case

enum class Part { A, B, C, D };

namespace closed_form {

/// c(d, beta) of the classical far-field law c t / (rho^2 + t^{1/beta})^{(d+2beta)/2}
inline double polya_constant(double d, double beta) {
  return beta * std::pow(4.0, beta) * std::pow(std::numbers::pi, -1.0 - 0.5 * d) *
         std::sin(std::numbers::pi * beta) * gamma(0.5 * d + beta) * gamma(beta);
}

inline double gauss_sub_far_constant(double d, double beta) {
  return std::exp(std::log(beta) + beta * std::log(4.0) + log_gamma(0.5 * d + beta) -
                  0.5 * d * detail::log_pi() - log_gamma(1.0 - beta));
}

inline double gauss_sub_near_constant(double d, double beta) {
  return std::exp(log_gamma(0.5 * (d + 1.0)) + log_gamma(d / (2.0 * beta)) -
                  std::log(2.0 * beta) - 0.5 * (d + 1.0) * detail::log_pi() - log_gamma(d));
}

inline ExponentialConstants gauss_exponential_constants(double d, double beta) {
  const double b = beta;
  ExponentialConstants k;
  k.log_k1 = -0.5 * std::log(b * (2.0 - b)) - 0.5 * d * detail::log_pi() -
             d / (2.0 - b) * std::log(2.0) + d * b / (2.0 * (2.0 - b)) * std::log(b);
  k.log_k2 = std::log(2.0 - b) - 2.0 / (2.0 - b) * std::log(2.0) + b / (2.0 - b) * std::log(b);
  return k;
}

inline double cauchy_sub_far_constant(double d, double beta) {
  return std::exp(std::log(beta) + (beta - 1.0) * std::log(2.0) + log_gamma(0.5 * (d + beta)) -
                  0.5 * d * detail::log_pi() - log_gamma(1.0 - 0.5 * beta));
}

inline double cauchy_sub_near_constant(double d, double beta) {
  return std::exp(log_gamma(0.5 * (d + 1.0)) + log_gamma(d / beta) - std::log(beta) -
                  0.5 * (d + 1.0) * detail::log_pi() - log_gamma(d));
}

}  // namespace closed_form

/// Time-changed Brownian motion in R^d (d integer for part C).
inline AsymptoticResult gauss_asym(Part part, double d, double beta, const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  detail::require(d > 0.0, "gauss_asym: d must be positive");
  const double b = beta, lt = std::log(p.t);
  switch (part) {
    case Part::A: {
      detail::require(p.rho > 0.0, "gauss_asym: rho must be positive");
      const double lv = std::log(closed_form::gauss_sub_far_constant(d, b)) -
                        (d + 2.0 * b) * std::log(p.rho) + lt;
      return detail::from_log(lv, Regime::SubFar, sub_similarity(2.0, b, p));
    }
    case Part::B: {
      const double lv = std::log(closed_form::gauss_sub_near_constant(d, b)) - d / (2.0 * b) * lt;
      return detail::from_log(lv, Regime::SubNear, sub_similarity(2.0, b, p));
    }
    case Part::C: {
      if (d == 1.0) {
        const double lv = -std::log(2.0) - log_gamma(1.0 - 0.5 * b) - 0.5 * b * lt;
        const double sim = p.rho > 0.0 ? invsub_similarity(2.0, b, p) : kInfinite;
        return detail::from_log(lv, Regime::InvSubLargeT_dLtAlpha, sim);
      }
      detail::require(p.rho > 0.0, "gauss_asym: rho must be positive");
      const double sim = invsub_similarity(2.0, b, p);
      if (d == 2.0) {
        detail::require(sim > 1.0, "gauss_asym: log regime needs |x-y|^{-2/beta} t > 1");
        const double lv = std::log(b) - std::log(4.0 * std::numbers::pi) -
                          log_gamma(1.0 - b) - b * lt + std::log(std::log(sim));
        return detail::from_log(lv, Regime::InvSubLargeT_dEqAlpha, sim);
      }
      detail::require(d >= 3.0 && d == std::floor(d), "gauss_asym: part C needs integer d");
      const double lv = log_gamma(0.5 * d - 1.0) - std::log(4.0) - 0.5 * d * detail::log_pi() -
                        log_gamma(1.0 - b) + (2.0 - d) * std::log(p.rho) - b * lt;
      return detail::from_log(lv, Regime::InvSubLargeT_dGtAlpha, sim);
    }
    case Part::D: {
      detail::require(p.rho > 0.0, "gauss_asym: rho must be positive");
      const auto kc = closed_form::gauss_exponential_constants(d, b);
      const double lr = std::log(p.rho);
      const double lv = kc.log_k1 - d * (1.0 - b) / (2.0 - b) * lr -
                        d * b / (2.0 * (2.0 - b)) * lt -
                        std::exp(kc.log_k2 + 2.0 / (2.0 - b) * lr - b / (2.0 - b) * lt);
      return detail::from_log(lv, Regime::InvSubSmallT_Exp, invsub_similarity_exp(2.0, b, p));
    }
  }
  throw DomainError("gauss_asym: unknown part");
}

/// Time-changed Cauchy process in R^d (d integer for part C).
inline AsymptoticResult cauchy_asym(Part part, double d, double beta, const EvalPoint& p) {
  detail::check_beta(beta);
  validate(p);
  detail::require(d > 0.0, "cauchy_asym: d must be positive");
  const double b = beta, lt = std::log(p.t);
  switch (part) {
    case Part::A: {
      detail::require(p.rho > 0.0, "cauchy_asym: rho must be positive");
      const double lv = std::log(closed_form::cauchy_sub_far_constant(d, b)) -
                        (d + b) * std::log(p.rho) + lt;
      return detail::from_log(lv, Regime::SubFar, sub_similarity(1.0, b, p));
    }
    case Part::B: {
      const double lv = std::log(closed_form::cauchy_sub_near_constant(d, b)) - d / b * lt;
      return detail::from_log(lv, Regime::SubNear, sub_similarity(1.0, b, p));
    }
    case Part::C: {
      detail::require(p.rho > 0.0, "cauchy_asym: rho must be positive");
      const double sim = invsub_similarity(1.0, b, p);
      if (d == 1.0) {
        detail::require(sim > 1.0, "cauchy_asym: log regime needs |x-y|^{-1/beta} t > 1");
        const double lv = std::log(b) - detail::log_pi() - log_gamma(1.0 - b) - b * lt +
                          std::log(std::log(sim));
        return detail::from_log(lv, Regime::InvSubLargeT_dEqAlpha, sim);
      }
      detail::require(d >= 2.0 && d == std::floor(d), "cauchy_asym: part C needs integer d");
      const double lv = log_gamma(0.5 * (d - 1.0)) - std::log(2.0) -
                        0.5 * (d + 1.0) * detail::log_pi() - log_gamma(1.0 - b) +
                        (1.0 - d) * std::log(p.rho) - b * lt;
      return detail::from_log(lv, Regime::InvSubLargeT_dGtAlpha, sim);
    }
    case Part::D: {
      detail::require(p.rho > 0.0, "cauchy_asym: rho must be positive");
      const double lv = log_gamma(0.5 * (d + 1.0)) - 0.5 * (d + 1.0) * detail::log_pi() -
                        std::log(b) - log_gamma(b) - (d + 1.0) * std::log(p.rho) + b * lt;
      return detail::from_log(lv, Regime::InvSubSmallT_Poly, invsub_similarity(1.0, b, p));
    }
  }
  throw DomainError("cauchy_asym: unknown part");
}

enum class Direction { LargeT, SmallT };

/// Fundamental solution of d^beta u / dt^beta = -(-Laplace)^gamma u in R^n.
inline AsymptoticResult frac_frac_asym(double beta, double gamma_, double n, const EvalPoint& p,
                                       Direction dir) {
  detail::check_beta(beta);
  detail::require(gamma_ > 0.0 && gamma_ < 1.0, "frac_frac_asym: gamma must lie in (0,1)");
  detail::require(n > 0.0, "frac_frac_asym: n must be positive");
  validate(p);
  const double b = beta, g = gamma_, lt = std::log(p.t);
  if (dir == Direction::SmallT) {
    detail::require(p.rho > 0.0, "frac_frac_asym: rho must be positive");
    const double lv = std::log(g) + g * std::log(4.0) + log_gamma(0.5 * n + g) -
                      0.5 * n * detail::log_pi() - log_gamma(1.0 - g) - std::log(b) -
                      log_gamma(b) - (n + 2.0 * g) * std::log(p.rho) + b * lt;
    return detail::from_log(lv, Regime::InvSubSmallT_Poly, invsub_similarity(2.0 * g, b, p));
  }
  const double sim = p.rho > 0.0 ? invsub_similarity(2.0 * g, b, p) : kInfinite;
  const bool n_is_one = n == 1.0;
  if (n_is_one && detail::same(g, 0.5)) {
    detail::require(p.rho > 0.0, "frac_frac_asym: rho must be positive in the log case");
    detail::require(sim > 1.0, "frac_frac_asym: log regime needs |x-y|^{-1/beta} t > 1");
    const double lv = std::log(b) - detail::log_pi() - log_gamma(1.0 - b) - b * lt +
                      std::log(std::log(sim));
    return detail::from_log(lv, Regime::InvSubLargeT_dEqAlpha, sim);
  }
  if (n_is_one && g > 0.5) {
    const double lv = log_gamma(1.0 / (2.0 * g)) + log_gamma(1.0 - 1.0 / (2.0 * g)) -
                      std::log(2.0 * std::numbers::pi * g) - log_gamma(1.0 - b / (2.0 * g)) -
                      b / (2.0 * g) * lt;
    return detail::from_log(lv, Regime::InvSubLargeT_dLtAlpha, sim);
  }
  if (n > 2.0 * g && !detail::same(n, 2.0 * g)) {
    detail::require(p.rho > 0.0, "frac_frac_asym: rho must be positive");
    const double lv = std::log(2.0 * g) + log_gamma(0.5 * (n - 2.0 * g)) -
                      (1.0 + 2.0 * g) * std::log(2.0) - 0.5 * n * detail::log_pi() -
                      log_gamma(1.0 - b) - log_gamma(1.0 + g) + (2.0 * g - n) * std::log(p.rho) -
                      b * lt;
    return detail::from_log(lv, Regime::InvSubLargeT_dGtAlpha, sim);
  }
  throw UncoveredCaseError("frac_frac_asym: (n, gamma) outside the covered large-time cases");
}

}  // namespace frackernel
