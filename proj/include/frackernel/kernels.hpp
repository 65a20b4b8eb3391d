#pragma once

// Base heat kernels of profile form
//   p(t, rho) = C1 t^{-d/alpha} F(C2 rho t^{-1/alpha})
// with exponential, polynomial or symmetric-stable profile F.

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <variant>
#include <vector>

#include "frackernel/error.hpp"
#include "frackernel/quadrature.hpp"
#include "frackernel/special.hpp"
#include "frackernel/stable.hpp"

namespace frackernel {

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// F(r) = exp(-r^{alpha/(alpha-1)}), alpha >= 2
struct ExponentialProfile {
  double alpha = 2.0;
};

/// F(r) = (1 + r^2)^{-(d+alpha)/2}
struct PolynomialProfile {
  double d = 1.0;
  double alpha = 1.0;
};

/// F(r) = p_{2 gamma}(1, r), the rotationally symmetric 2gamma-stable density in R^n
/// at time 1, obtained by subordinating the Gauss kernel with a gamma-stable law.
class StableProfile {
 public:
  static constexpr int kGridPoints = 512;
  static constexpr double kRMin = 1e-4;
  static constexpr double kRMax = 1e8;

  StableProfile(double gamma, double n) : data_(std::make_shared<Data>(gamma, n)) {}

  double gamma() const { return data_->gamma; }
  double n() const { return data_->n; }

  /// F(0) = (4 pi)^{-n/2} E S^{-n/2}
  double value_at_zero() const { return std::exp(data_->log_f0); }

  /// F(r) ~ far_field_coefficient * r^{-n-2gamma} as r -> infinity
  double far_field_coefficient() const {
    const double g = data_->gamma, n = data_->n;
    return g * std::pow(4.0, g) * gamma_ratio(0.5 * n + g, 1.0 - g) /
           std::pow(std::numbers::pi, 0.5 * n);
  }

  double log_value(double r) const {
    detail::require(r >= 0.0, "StableProfile: r must be non-negative");
    const Data& D = *data_;
    if (r == 0.0) return D.log_f0;
    const double x = std::log(r);
    if (x < D.x0) {
      // even in r near the origin: interpolate in r^2 towards F(0)
      const double f0 = std::exp(D.log_f0), f1 = std::exp(D.logf.front());
      return std::log(f0 + (f1 - f0) * (r / kRMin) * (r / kRMin));
    }
    if (x > D.x0 + D.h * (kGridPoints - 1)) return direct_log_value(r);
    return D.interpolate(x);
  }

  double value(double r) const { return std::exp(log_value(r)); }

  /// Uncached quadrature value of log F(r).
  double direct_log_value(double r) const { return data_->direct(r, 0); }

 private:
  struct Data {
    double gamma, n;
    StableLaw law;
    double log_f0;
    double x0, h;
    std::vector<double> logf, slope;  // log F and d log F / d log r on the grid

    Data(double g, double dim) : gamma(checked_gamma(g)), n(checked_n(dim)), law(g) {
      log_f0 = -0.5 * n * std::log(4.0 * std::numbers::pi) + log_gamma(1.0 + n / (2.0 * gamma)) -
               log_gamma(1.0 + 0.5 * n);
      x0 = std::log(kRMin);
      h = (std::log(kRMax) - x0) / (kGridPoints - 1);
      logf.resize(kGridPoints);
      slope.resize(kGridPoints);
      for (int i = 0; i < kGridPoints; ++i) {
        const double r = std::exp(x0 + i * h);
        logf[i] = direct(r, 0);
        // r F'(r) = -E[(r^2 / 2S) g_S(r)]
        slope[i] = -std::exp(direct(r, 1) - logf[i]);
      }
      limit_slopes();
    }

    static double checked_gamma(double g) {
      detail::require(g > 0.0 && g < 1.0, "StableProfile: gamma must lie in (0,1)");
      return g;
    }
    static double checked_n(double dim) {
      detail::require(dim > 0.0, "StableProfile: n must be positive");
      return dim;
    }

    // log E[(r^2/(2S))^k (4 pi S)^{-n/2} exp(-r^2/(4S))], k in {0, 1}
    double direct(double r, int k) const {
      const double lr2 = 2.0 * std::log(r);
      auto hf = [&](double y) {
        double v = -0.5 * n * y - 0.25 * std::exp(lr2 - y) + law.log_density_at_log(y) + y;
        if (k == 1) v += lr2 - std::log(2.0) - y;
        return v;
      };
      const double hints[] = {std::log(law.mode()), lr2 - std::log(4.0)};
      quad::LineOptions opt;
      opt.rel_tol = 1e-12;
      const double y0 = std::max(hints[0], hints[1]);
      const auto res = quad::integrate_exp_line(hf, y0, hints, opt);
      return -0.5 * n * std::log(4.0 * std::numbers::pi) + res.log_value;
    }

    // Fritsch-Carlson limiter keeps the Hermite interpolant monotone
    void limit_slopes() {
      for (int i = 0; i + 1 < kGridPoints; ++i) {
        const double delta = (logf[i + 1] - logf[i]) / h;
        if (delta == 0.0) {
          slope[i] = slope[i + 1] = 0.0;
          continue;
        }
        double a = slope[i] / delta, b = slope[i + 1] / delta;
        if (a < 0.0) slope[i] = 0.0, a = 0.0;
        if (b < 0.0) slope[i + 1] = 0.0, b = 0.0;
        const double norm = a * a + b * b;
        if (norm > 9.0) {
          const double tau = 3.0 / std::sqrt(norm);
          slope[i] = tau * a * delta;
          slope[i + 1] = tau * b * delta;
        }
      }
    }

    double interpolate(double x) const {
      int i = static_cast<int>((x - x0) / h);
      i = std::clamp(i, 0, kGridPoints - 2);
      const double u = (x - (x0 + i * h)) / h;
      const double u2 = u * u, u3 = u2 * u;
      const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
      const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
      return h00 * logf[i] + h10 * h * slope[i] + h01 * logf[i + 1] + h11 * h * slope[i + 1];
    }
  };

  std::shared_ptr<const Data> data_;
};

using Profile = std::variant<ExponentialProfile, PolynomialProfile, StableProfile>;

inline double log_profile_value(const Profile& profile, double r) {
  detail::require(r >= 0.0, "profile_value: r must be non-negative");
  if (const auto* e = std::get_if<ExponentialProfile>(&profile)) {
    if (r == 0.0) return 0.0;
    return -std::exp(e->alpha / (e->alpha - 1.0) * std::log(r));
  }
  if (const auto* p = std::get_if<PolynomialProfile>(&profile)) {
    const double lg = r <= 1.0 ? std::log1p(r * r) : 2.0 * std::log(r) + std::log1p(1.0 / (r * r));
    return -0.5 * (p->d + p->alpha) * lg;
  }
  return std::get<StableProfile>(profile).log_value(r);
}

inline double profile_value(const Profile& profile, double r) {
  return std::exp(log_profile_value(profile, r));
}

inline double profile_at_zero(const Profile& profile) {
  if (const auto* s = std::get_if<StableProfile>(&profile)) return s->value_at_zero();
  return 1.0;
}

/// Coefficient L in F(r) ~ L r^{-(d+alpha)}; 0 for exponential profiles.
inline double far_field_coefficient(const Profile& profile) {
  if (std::holds_alternative<ExponentialProfile>(profile)) return 0.0;
  if (std::holds_alternative<PolynomialProfile>(profile)) return 1.0;
  return std::get<StableProfile>(profile).far_field_coefficient();
}

struct ProfileKernel {
  double c1 = 1.0;
  double c2 = 1.0;
  double d = 1.0;
  double alpha = 2.0;
  Profile profile = ExponentialProfile{2.0};

  ProfileKernel() = default;
  ProfileKernel(double c1_, double c2_, double d_, double alpha_, Profile profile_)
      : c1(c1_), c2(c2_), d(d_), alpha(alpha_), profile(std::move(profile_)) {
    validate();
  }

  void validate() const {
    detail::require(c1 > 0.0 && c2 > 0.0 && d > 0.0 && alpha > 0.0,
                    "ProfileKernel: C1, C2, d, alpha must be positive");
    if (const auto* e = std::get_if<ExponentialProfile>(&profile)) {
      detail::require(e->alpha >= 2.0, "ProfileKernel: exponential profile needs alpha >= 2");
      detail::require(e->alpha == alpha, "ProfileKernel: profile alpha differs from kernel alpha");
    } else if (const auto* p = std::get_if<PolynomialProfile>(&profile)) {
      detail::require(p->d == d && p->alpha == alpha,
                      "ProfileKernel: polynomial profile (d, alpha) differs from kernel");
    } else {
      const auto& s = std::get<StableProfile>(profile);
      detail::require(s.n() == d && 2.0 * s.gamma() == alpha,
                      "ProfileKernel: stable profile needs d = n and alpha = 2 gamma");
    }
  }

  bool exponential_type() const { return std::holds_alternative<ExponentialProfile>(profile); }

  double log_value(double t, double rho) const {
    detail::require(t > 0.0, "kernel: t must be positive");
    detail::require(rho >= 0.0, "kernel: rho must be non-negative");
    return std::log(c1) - d / alpha * std::log(t) +
           log_profile_value(profile, c2 * rho * std::pow(t, -1.0 / alpha));
  }

  double value(double t, double rho) const { return std::exp(log_value(t, rho)); }
};

struct EvalPoint {
  double t = 1.0;
  double rho = 0.0;
};

inline void validate(const EvalPoint& p) {
  detail::require(p.t > 0.0, "EvalPoint: t must be positive");
  detail::require(p.rho >= 0.0, "EvalPoint: rho must be non-negative");
}

inline double gauss_kernel(const EvalPoint& p, double d) {
  validate(p);
  detail::require(d > 0.0, "gauss_kernel: d must be positive");
  return std::pow(4.0 * std::numbers::pi * p.t, -0.5 * d) * std::exp(-p.rho * p.rho / (4.0 * p.t));
}

/// c(d) = pi^{-(d+1)/2} Gamma((d+1)/2)
inline double cauchy_constant(double d) {
  return gamma(0.5 * (d + 1.0)) * std::pow(std::numbers::pi, -0.5 * (d + 1.0));
}

inline double cauchy_kernel(const EvalPoint& p, double d) {
  validate(p);
  detail::require(d > 0.0, "cauchy_kernel: d must be positive");
  return cauchy_constant(d) * p.t * std::pow(p.t * p.t + p.rho * p.rho, -0.5 * (d + 1.0));
}

struct Gauss {
  double d = 1.0;
};
struct Cauchy {
  double d = 1.0;
};
struct Stable2Gamma {
  double gamma = 0.5;
  double d = 1.0;
};

inline ProfileKernel as_profile(const Gauss& g) {
  return {std::pow(4.0 * std::numbers::pi, -0.5 * g.d), 0.5, g.d, 2.0, ExponentialProfile{2.0}};
}

inline ProfileKernel as_profile(const Cauchy& c) {
  return {cauchy_constant(c.d), 1.0, c.d, 1.0, PolynomialProfile{c.d, 1.0}};
}

inline ProfileKernel as_profile(const Stable2Gamma& s) {
  detail::require(s.gamma > 0.0 && s.gamma < 1.0, "Stable2Gamma: gamma must lie in (0,1)");
  return {1.0, 1.0, s.d, 2.0 * s.gamma, StableProfile(s.gamma, s.d)};
}

/// ∫_0^∞ s^{p-1} F(s) ds, or kInfinite when the integral diverges.
inline double profile_moment(const Profile& profile, double p) {
  detail::require(p > 0.0, "profile_moment: p must be positive");
  if (const auto* e = std::get_if<ExponentialProfile>(&profile)) {
    const double q = (e->alpha - 1.0) / e->alpha;
    return q * gamma(p * q);
  }
  if (const auto* poly = std::get_if<PolynomialProfile>(&profile)) {
    const double total = poly->d + poly->alpha;
    if (p >= total) return kInfinite;
    return 0.5 * beta_fn(0.5 * p, 0.5 * (total - p));
  }
  const auto& s = std::get<StableProfile>(profile);
  if (p >= s.n() + 2.0 * s.gamma()) return kInfinite;
  // in x = log r; beyond the cache the exact profile is used
  auto h = [&](double x) { return p * x + s.log_value(std::exp(x)); };
  const double hints[] = {std::log(StableProfile::kRMin), 0.0, std::log(StableProfile::kRMax)};
  quad::LineOptions opt;
  opt.rel_tol = 1e-10;
  opt.max_span = 1e5;
  const auto res = quad::integrate_exp_line(h, 0.0, hints, opt);
  if (res.diverged) return kInfinite;
  return std::exp(res.log_value);
}

/// E|X_t|^kappa for the rotationally symmetric alpha-stable process in R^n.
inline double levy_moment(double alpha, double n, double kappa, double t) {
  detail::require(alpha > 0.0 && alpha < 2.0, "levy_moment: alpha must lie in (0,2)");
  detail::require(n > 0.0, "levy_moment: n must be positive");
  detail::require(t > 0.0, "levy_moment: t must be positive");
  if (kappa <= -n || kappa >= alpha) return kInfinite;
  if (kappa == 0.0) return 1.0;
  const double lg = kappa * std::log(2.0) + log_gamma(0.5 * (n + kappa)) +
                    log_gamma(1.0 - kappa / alpha) - log_gamma(0.5 * n) -
                    log_gamma(1.0 - 0.5 * kappa) + kappa / alpha * std::log(t);
  return std::exp(lg);
}

}  // namespace frackernel
