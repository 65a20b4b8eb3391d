#pragma once

// Subordinated and inverse-subordinated kernels
//   p^S(t, rho)      = ∫ p(t^{1/beta} s, rho) p_beta(s) ds
//   p^{S^-1}(t, rho) = ∫ p(t^beta s^{-beta}, rho) p_beta(s) ds
// integrated in y = log s with the whole integrand kept in log space.

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <variant>

#include "frackernel/error.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/quadrature.hpp"
#include "frackernel/stable.hpp"

namespace frackernel {

struct AnalyticTail {};
/// Integrate only up to s = M, no tail beyond.
struct HardTruncate {
  double m = 1e12;
};

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_depth = 40;
  std::variant<AnalyticTail, HardTruncate> tail_policy = AnalyticTail{};

  void validate() const {
    detail::require(rel_tol > 0.0 && abs_tol > 0.0, "QuadConfig: tolerances must be positive");
    detail::require(max_depth >= 4, "QuadConfig: max_depth must be at least 4");
    if (const auto* h = std::get_if<HardTruncate>(&tail_policy)) {
      detail::require(h->m > 0.0, "QuadConfig: truncation point must be positive");
    }
  }
};

struct KernelValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  double est_error = 0.0;
  /// value fell below 1e-300; only log_value is meaningful
  bool underflow = false;
};

namespace detail {

inline constexpr double kUnderflow = 1e-300;

template <class H>
KernelValue integrate_kernel(H&& h, double log_prefactor, double y_start,
                             std::span<const double> hints, const QuadConfig& cfg,
                             const char* what) {
  cfg.validate();
  quad::LineOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_depth = cfg.max_depth;
  if (const auto* ht = std::get_if<HardTruncate>(&cfg.tail_policy)) opt.y_max = std::log(ht->m);
  const auto res = quad::integrate_exp_line(h, y_start, hints, opt);
  if (res.diverged) throw DivergenceError(std::string(what) + ": integral diverges");

  KernelValue out;
  out.log_value = log_prefactor + res.log_value;
  out.value = std::exp(out.log_value);
  out.est_error = res.rel_error * out.value;
  if (out.value < kUnderflow) {
    out.underflow = true;
    out.value = 0.0;
  }
  if (!res.converged) {
    throw ConvergenceError(std::string(what) + ": tolerance not reached", out.value,
                           out.log_value, out.est_error);
  }
  return out;
}

// Start the scan at whichever candidate peak carries more mass.
template <class H>
double pick_start(H& h, std::span<const double> hints) {
  double best = hints[0], hb = -std::numeric_limits<double>::infinity();
  for (double y : hints) {
    if (!std::isfinite(y)) continue;
    const double v = h(y);
    if (v > hb) hb = v, best = y;
  }
  return best;
}

}  // namespace detail

/// Kernel of the subordinated process X_{S_t}.
inline KernelValue subordinated_density(const ProfileKernel& kernel, const StableLaw& law,
                                        const EvalPoint& point, const QuadConfig& cfg = {}) {
  kernel.validate();
  validate(point);
  const double beta = law.beta(), a = kernel.alpha, d = kernel.d;
  const double log_t = std::log(point.t);
  // similarity variable rho t^{-1/(alpha beta)}, scaled by C2
  const double log_ca = point.rho > 0.0 ? std::log(kernel.c2 * point.rho) - log_t / (a * beta)
                                        : -std::numeric_limits<double>::infinity();
  auto h = [&](double y) {
    const double r = std::exp(log_ca - y / a);
    return -(d / a) * y + log_profile_value(kernel.profile, r) + law.log_density_at_log(y) + y;
  };
  const double hints[] = {std::log(law.mode()), a * log_ca};
  const double log_pref = std::log(kernel.c1) - d / (a * beta) * log_t;
  return detail::integrate_kernel(h, log_pref, detail::pick_start(h, hints), hints, cfg,
                                  "subordinated_density");
}

/// Kernel of the time-changed process X_{S^{-1}_t}.
inline KernelValue inverse_subordinated_density(const ProfileKernel& kernel, const StableLaw& law,
                                                const EvalPoint& point,
                                                const QuadConfig& cfg = {}) {
  kernel.validate();
  validate(point);
  const double beta = law.beta(), a = kernel.alpha, d = kernel.d;
  if (point.rho == 0.0 && d >= a) {
    throw DivergenceError("inverse_subordinated_density: infinite at rho = 0 when d >= alpha");
  }
  const double log_t = std::log(point.t);
  // rho t^{-beta/alpha}, scaled by C2
  const double log_ca = point.rho > 0.0 ? std::log(kernel.c2 * point.rho) - beta * log_t / a
                                        : -std::numeric_limits<double>::infinity();
  auto h = [&](double y) {
    const double r = std::exp(log_ca + beta * y / a);
    return (beta * d / a) * y + log_profile_value(kernel.profile, r) + law.log_density_at_log(y) +
           y;
  };
  const double hints[] = {std::log(law.mode()), -(a / beta) * log_ca};
  const double log_pref = std::log(kernel.c1) - beta * d / a * log_t;
  return detail::integrate_kernel(h, log_pref, detail::pick_start(h, hints), hints, cfg,
                                  "inverse_subordinated_density");
}

}  // namespace frackernel
