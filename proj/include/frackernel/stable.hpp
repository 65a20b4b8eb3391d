#pragma once

// One-sided beta-stable law with Laplace transform E exp(-r S_1) = exp(-r^beta).
//
// The density and distribution function come from Kanter's integral over
// phi in (0, pi):
//   G(x) = (1/pi) ∫ exp(-c A(phi)) dphi,         c = x^{-beta/(1-beta)}
//   p(x) = beta/((1-beta) pi) x^{-1/(1-beta)} ∫ A exp(-c A) dphi
//   A(phi) = sin(beta phi)^{beta/(1-beta)} sin((1-beta) phi) / sin(phi)^{1/(1-beta)}
// evaluated in log space. For repeated use, log p(e^y) is cached as a piecewise
// Chebyshev interpolant; beyond the cache the convergent large-s series
//   p(s) = (1/pi) sum_k (-1)^{k+1} Gamma(k beta + 1)/k! sin(k pi beta) s^{-k beta - 1}
// is exact to rounding.

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "frackernel/error.hpp"
#include "frackernel/quadrature.hpp"
#include "frackernel/special.hpp"

namespace frackernel {

enum class DensityRegime { Zero, Infinity };

namespace detail {

inline constexpr double kPi = std::numbers::pi;

/// log A(phi) on both halves of (0, pi); the upper half is parametrised by u = pi - phi.
struct KanterFunction {
  double beta;
  double pw;   // beta / (1 - beta)
  double qw;   // 1 / (1 - beta)
  double la0;  // log A(0+)

  explicit KanterFunction(double b)
      : beta(b),
        pw(b / (1.0 - b)),
        qw(1.0 / (1.0 - b)),
        la0(b / (1.0 - b) * std::log(b) + std::log1p(-b)) {}

  // log(sin(x)/x) for 0 <= x < pi, without cancellation near 0
  static double log_sinc(double x) {
    if (x < 0.5) {
      // -sum_n zeta(2n)/(n pi^2n) x^2n
      static constexpr std::array<double, 14> c = {
          0.16666666666666666667,  0.0055555555555555555556, 0.00035273368606701940035,
          2.6455026455026455026e-5, 2.1377799155576933355e-6, 1.8036702340053310071e-7,
          1.5661391322766984143e-8, 1.3884130493737299423e-9, 1.250435917600499603e-10,
          1.1402575602296091433e-11, 1.0502923908637556408e-12, 9.7548778415937016497e-14,
          9.1234682308590978058e-15, 8.5837197618956093497e-16};
      const double x2 = x * x;
      double sum = 0.0;
      for (int n = 13; n >= 0; --n) sum = sum * x2 + c[n];
      return -sum * x2;
    }
    return std::log(std::sin(x) / x);
  }

  /// log A(phi) - log A(0+) for phi in [0, pi/2]
  double delta_phi(double phi) const {
    return pw * log_sinc(beta * phi) + log_sinc((1.0 - beta) * phi) - qw * log_sinc(phi);
  }

  double log_a_phi(double phi) const { return la0 + delta_phi(phi); }

  double log_a_u(double u) const {
    const double r = kPi - u;
    const double a1 = beta * r;
    const double s1 = a1 < 0.5 * kPi ? std::sin(a1) : std::sin((1.0 - beta) * kPi + beta * u);
    const double a2 = (1.0 - beta) * r;
    const double s2 = a2 < 0.5 * kPi ? std::sin(a2) : std::sin(beta * kPi + (1.0 - beta) * u);
    return pw * std::log(s1) + std::log(s2) - qw * std::log(std::sin(u));
  }

  // Scale points for the two half-integrals: where c A = 1, or the width of
  // the Gaussian-like spike at phi = 0 when c A(0) > 1.
  struct Scales {
    double phi_scale = 0.0;  // 0 = none
    double u_scale = 0.0;
  };

  Scales scales(double log_c) const {
    Scales sc;
    const double target = -log_c;
    if (la0 >= target) {
      const double ca0 = std::exp(std::min(la0 + log_c, 700.0));
      sc.phi_scale = std::min(0.5 * kPi, 1.0 / std::sqrt(ca0 * beta));
      return sc;
    }
    if (log_a_phi(0.5 * kPi) >= target) {
      double lo = 0.0, hi = 0.5 * kPi;
      for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (lo + hi);
        (log_a_phi(mid) < target ? lo : hi) = mid;
      }
      sc.phi_scale = 0.5 * (lo + hi);
      return sc;
    }
    double lo = std::log(1e-300), hi = std::log(0.5 * kPi);  // log u; log A decreasing in u
    for (int i = 0; i < 36; ++i) {
      const double mid = 0.5 * (lo + hi);
      (log_a_u(std::exp(mid)) > target ? lo : hi) = mid;
    }
    sc.u_scale = std::exp(0.5 * (lo + hi));
    return sc;
  }

  static std::vector<double> geometric_cuts(double scale) {
    std::vector<double> cuts;
    if (scale <= 0.0) return cuts;
    for (double x = scale * std::ldexp(1.0, -12); x < 0.5 * kPi; x *= 2.0) cuts.push_back(x);
    return cuts;
  }

  /// log[(1/pi) ∫_0^pi A^m exp(-c A) dphi] for m in {0, 1}.
  double log_integral(int m, double log_c, double rel_tol = 1e-13) const {
    const double ca0 = std::exp(la0 + log_c);
    double gmax;
    if (m == 0) {
      gmax = -ca0;
    } else {
      gmax = (la0 + log_c >= 0.0) ? la0 - ca0 : -log_c - 1.0;
    }
    if (!std::isfinite(gmax)) return -std::numeric_limits<double>::infinity();

    const Scales sc = scales(log_c);
    const auto phi_cuts = geometric_cuts(sc.phi_scale);
    const auto u_cuts = geometric_cuts(sc.u_scale);
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 0.0;
    opt.max_depth = 60;
    auto g = [&](double la) { return std::exp(m * la - std::exp(la + log_c) - gmax); };
    // near phi = 0 the exponent is a difference of two large terms; expand around A(0+)
    const bool spike = m == 0 || la0 + log_c >= 0.0;
    auto g_phi = [&](double phi) {
      const double d = delta_phi(phi);
      if (spike) return std::exp(m * d - ca0 * std::expm1(d));
      return g(la0 + d);
    };
    const auto r1 = quad::integrate(g_phi, 0.0, 0.5 * kPi, phi_cuts, opt);
    const auto r2 =
        quad::integrate([&](double u) { return g(log_a_u(u)); }, 0.0, 0.5 * kPi, u_cuts, opt);
    return gmax + std::log((r1.value + r2.value) / kPi);
  }

  /// (1/pi) ∫_0^pi (1 - exp(-c A)) dphi, accurate when it is small.
  double complement_integral(double log_c, double rel_tol = 1e-13) const {
    const Scales sc = scales(log_c);
    const auto phi_cuts = geometric_cuts(sc.phi_scale);
    const auto u_cuts = geometric_cuts(sc.u_scale);
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 0.0;
    opt.max_depth = 60;
    auto g = [&](double la) { return -std::expm1(-std::exp(la + log_c)); };
    const auto r1 = quad::integrate([&](double phi) { return g(log_a_phi(phi)); }, 0.0, 0.5 * kPi,
                                    phi_cuts, opt);
    const auto r2 =
        quad::integrate([&](double u) { return g(log_a_u(u)); }, 0.0, 0.5 * kPi, u_cuts, opt);
    return (r1.value + r2.value) / kPi;
  }
};

/// Piecewise Chebyshev interpolant on a uniform partition of [lo, hi].
class ChebyshevTable {
 public:
  static constexpr int kNodes = 32;

  ChebyshevTable() = default;

  template <class F>
  ChebyshevTable(F&& f, double lo, double hi, double max_width) : lo_(lo) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
    width_ = (hi - lo) / pieces;
    coeffs_.resize(static_cast<std::size_t>(pieces));
    std::array<double, kNodes> values{};
    for (int p = 0; p < pieces; ++p) {
      const double a = lo + p * width_;
      for (int j = 0; j < kNodes; ++j) {
        const double x = std::cos(kPi * (j + 0.5) / kNodes);
        values[j] = f(a + 0.5 * width_ * (x + 1.0));
      }
      auto& c = coeffs_[static_cast<std::size_t>(p)];
      for (int n = 0; n < kNodes; ++n) {
        double sum = 0.0;
        for (int j = 0; j < kNodes; ++j) sum += values[j] * std::cos(kPi * n * (j + 0.5) / kNodes);
        c[n] = 2.0 * sum / kNodes;
      }
      c[0] *= 0.5;
    }
    hi_ = hi;
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double operator()(double y) const {
    int p = static_cast<int>((y - lo_) / width_);
    p = std::clamp(p, 0, static_cast<int>(coeffs_.size()) - 1);
    const double x = 2.0 * (y - (lo_ + p * width_)) / width_ - 1.0;
    const auto& c = coeffs_[static_cast<std::size_t>(p)];
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int n = kNodes - 1; n >= 1; --n) {
      const double b0 = 2.0 * x * b1 - b2 + c[n];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + c[0];
  }

 private:
  double lo_ = 0.0, hi_ = 0.0, width_ = 1.0;
  std::vector<std::array<double, kNodes>> coeffs_;
};

struct StableCache {
  std::once_flag once;
  ChebyshevTable log_density;
  double mode = 0.0;
};

}  // namespace detail

class StableLaw {
 public:
  explicit StableLaw(double beta) : beta_(beta), kanter_(checked(beta)) {
    const double k = beta / (1.0 - beta);
    series_from_ = std::log(10.0) / beta;  // s^{-beta} <= 0.1
    table_from_ = std::log(beta) - std::log(700.0 / (1.0 - beta)) / k;
    series_.reserve(kMaxTerms);
    for (int j = 1; j <= kMaxTerms; ++j) {
      const double mag = std::exp(std::lgamma(j * beta + 1.0) - std::lgamma(j + 1.0));
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      series_.push_back(sign * mag * std::sin(j * detail::kPi * beta) / detail::kPi);
    }
    cache_ = std::make_shared<detail::StableCache>();
  }

  double beta() const { return beta_; }

  double density(double s) const { return std::exp(log_density(s)); }

  double log_density(double s) const {
    detail::require(s > 0.0, "StableLaw::density: s must be positive");
    if (std::isinf(s)) return -std::numeric_limits<double>::infinity();
    return log_density_at_log(std::log(s));
  }

  /// log p(e^y); the workhorse for log-space integration in y = log s.
  double log_density_at_log(double y) const {
    if (y >= series_from_) return log_density_series(y);
    if (y < table_from_) return log_density_kanter(y);
    ensure_cache();
    return cache_->log_density(y);
  }

  /// Uncached evaluation straight from the Kanter integral.
  double density_direct(double s) const {
    detail::require(s > 0.0, "StableLaw::density_direct: s must be positive");
    return std::exp(log_density_kanter(std::log(s)));
  }

  double cdf(double x) const {
    detail::require(x >= 0.0, "StableLaw::cdf: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return cdf_at_log(std::log(x)).first;
  }

  /// 1 - G(x), accurate in the upper tail.
  double ccdf(double x) const {
    detail::require(x >= 0.0, "StableLaw::ccdf: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return cdf_at_log(std::log(x)).second;
  }

  /// P(S_t^{-1} <= s) = 1 - G(s^{-1/beta} t).
  double inverse_cdf_time(double t, double s) const {
    detail::require(t > 0.0, "StableLaw::inverse_cdf_time: t must be positive");
    detail::require(s >= 0.0, "StableLaw::inverse_cdf_time: s must be non-negative");
    if (s == 0.0) return 0.0;
    if (std::isinf(s)) return 1.0;
    return cdf_at_log(std::log(t) - std::log(s) / beta_).second;
  }

  /// E S_t^kappa; +infinity for kappa >= beta.
  double moment(double kappa, double t = 1.0) const {
    detail::require(t > 0.0, "StableLaw::moment: t must be positive");
    if (kappa >= beta_) return std::numeric_limits<double>::infinity();
    return gamma_ratio(1.0 - kappa / beta_, 1.0 - kappa) * std::pow(t, kappa / beta_);
  }

  double log_density_asym(double s, DensityRegime regime) const {
    detail::require(s > 0.0, "StableLaw::density_asym: s must be positive");
    const double b = beta_;
    if (regime == DensityRegime::Infinity) {
      return std::log(b) - log_gamma(1.0 - b) - (b + 1.0) * std::log(s);
    }
    return -0.5 * std::log(2.0 * detail::kPi * (1.0 - b)) + std::log(b) / (2.0 * (1.0 - b)) -
           (2.0 - b) / (2.0 * (1.0 - b)) * std::log(s) -
           (1.0 - b) * std::exp(b / (1.0 - b) * (std::log(b) - std::log(s)));
  }

  double density_asym(double s, DensityRegime regime) const {
    return std::exp(log_density_asym(s, regime));
  }

  /// psi(s) = p(s) / asym_infinity(s) - 1
  double correction_psi(double s) const {
    return std::expm1(log_density(s) - log_density_asym(s, DensityRegime::Infinity));
  }

  /// phi(s) = p(s) / asym_zero(s) - 1
  double correction_phi(double s) const {
    return std::expm1(log_density(s) - log_density_asym(s, DensityRegime::Zero));
  }

  /// Location of the maximum of p.
  double mode() const {
    ensure_cache();
    return cache_->mode;
  }

 private:
  static constexpr int kMaxTerms = 120;

  static double checked(double beta) {
    detail::require(beta > 0.0 && beta < 1.0, "StableLaw: beta must lie in (0,1)");
    return beta;
  }

  double log_density_kanter(double y) const {
    const double b = beta_;
    return std::log(b / (1.0 - b)) - y / (1.0 - b) + kanter_.log_integral(1, -kanter_.pw * y);
  }

  double series_sum(double x, double weight_power) const {
    // sum_k c_k x^{k-1} / (k beta)^weight_power
    double sum = 0.0, xk = 1.0;
    int small = 0;
    for (int j = 1; j <= kMaxTerms; ++j) {
      double term = series_[static_cast<std::size_t>(j - 1)] * xk;
      if (weight_power != 0.0) term /= j * beta_;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) {
        if (++small == 2) break;
      } else {
        small = 0;
      }
      xk *= x;
    }
    return sum;
  }

  double log_density_series(double y) const {
    return -(1.0 + beta_) * y + std::log(series_sum(std::exp(-beta_ * y), 0.0));
  }

  // {G(e^y), 1 - G(e^y)}
  std::pair<double, double> cdf_at_log(double y) const {
    if (y >= series_from_) {
      const double x = std::exp(-beta_ * y);
      const double q = x * series_sum(x, 1.0);
      return {1.0 - q, q};
    }
    const double log_c = -kanter_.pw * y;
    const double g = std::exp(kanter_.log_integral(0, log_c));
    if (g <= 0.5) return {g, 1.0 - g};
    const double q = kanter_.complement_integral(log_c);
    return {1.0 - q, q};
  }

  void ensure_cache() const {
    std::call_once(cache_->once, [this] {
      const double k = beta_ / (1.0 - beta_);
      const double width = std::min(1.0, 0.75 / k);
      cache_->log_density = detail::ChebyshevTable(
          [this](double y) { return log_density_kanter(y); }, table_from_, series_from_, width);
      const double y_mode = quad::argmax_golden(
          [this](double y) { return cache_->log_density(y); }, table_from_, series_from_, 200);
      cache_->mode = std::exp(y_mode);
    });
  }

  double beta_;
  detail::KanterFunction kanter_;
  double series_from_ = 0.0;
  double table_from_ = 0.0;
  std::vector<double> series_;
  std::shared_ptr<detail::StableCache> cache_;
};

}  // namespace frackernel
