#pragma once

// Samplers for stable subordinators, their inverses and time-changed Gauss/Cauchy
// radii, plus empirical CDF and moment comparisons.
//
// Every batch is split into fixed-size blocks; block k draws from an mt19937_64
// seeded with splitmix64(seed, k). Uniforms, exponentials and normals are built
// from raw 64-bit output, so batches are bitwise reproducible across platforms
// and thread counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "frackernel/error.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/parallel.hpp"
#include "frackernel/stable.hpp"

namespace frackernel {

struct SampleBatch {
  std::vector<double> values;
  std::string law_tag;
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

struct EcdfPoint {
  double x, empirical, reference;
};

struct EcdfReport {
  double ks_statistic = 0.0;
  std::size_t n = 0;
  std::vector<EcdfPoint> grid;
};

/// 1% critical value of the one-sample Kolmogorov-Smirnov statistic
inline double ks_critical_1pct(std::size_t n) { return 1.627 / std::sqrt(static_cast<double>(n)); }

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : eng_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  /// uniform on the open interval (0, 1)
  double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential() { return -std::log(uniform()); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline constexpr std::size_t kBlock = 1 << 15;

template <class Draw>
std::vector<double> fill_blocks(std::size_t n, std::uint64_t seed, Draw&& draw) {
  std::vector<double> out(n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng(seed, b);
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) out[i] = draw(rng);
  });
  return out;
}

/// log S_1 via Kanter: S_1 = (A(U)/E)^{(1-beta)/beta}, U ~ U(0, pi), E ~ Exp(1)
inline double log_stable_unit(const KanterFunction& k, Rng& rng) {
  const double phi = std::numbers::pi * rng.uniform();
  const double la = phi <= 0.5 * std::numbers::pi ? k.log_a_phi(phi)
                                                  : k.log_a_u(std::numbers::pi - phi);
  return (la - std::log(rng.exponential())) / k.pw;
}

inline void check_batch_args(std::size_t n, double t) {
  require(n >= 1, "sampler: n must be at least 1");
  require(t > 0.0, "sampler: t must be positive");
}

inline std::string tag(const char* what, double beta, double t) {
  return std::string(what) + "(beta=" + std::to_string(beta) + ",t=" + std::to_string(t) + ")";
}

}  // namespace detail

/// i.i.d. copies of S_t = t^{1/beta} S_1
inline SampleBatch sample_subordinator(const StableLaw& law, double t, std::size_t n,
                                       std::uint64_t seed) {
  detail::check_batch_args(n, t);
  const detail::KanterFunction k(law.beta());
  const double lt = std::log(t) / law.beta();
  auto v = detail::fill_blocks(n, seed, [&](detail::Rng& rng) {
    return std::exp(lt + detail::log_stable_unit(k, rng));
  });
  return {std::move(v), detail::tag("subordinator", law.beta(), t), seed, n};
}

/// i.i.d. copies of S^{-1}_t = (t / S_1)^beta
inline SampleBatch sample_inverse_subordinator(const StableLaw& law, double t, std::size_t n,
                                               std::uint64_t seed) {
  detail::check_batch_args(n, t);
  const detail::KanterFunction k(law.beta());
  const double b = law.beta(), lt = std::log(t);
  auto v = detail::fill_blocks(n, seed, [&](detail::Rng& rng) {
    return std::exp(b * (lt - detail::log_stable_unit(k, rng)));
  });
  return {std::move(v), detail::tag("inverse_subordinator", b, t), seed, n};
}

enum class TimeChange { Subordinate, InverseSubordinate };

using BaseProcess = std::variant<Gauss, Cauchy>;

/// Radii |X_T| of a Gauss or Cauchy process in R^d at the random time T = S_t or S^{-1}_t.
/// The Cauchy process at time T is Brownian motion at time T^2 S'_1 with S' a 1/2-stable
/// subordinator. Integer d only.
inline SampleBatch sample_timechanged(const BaseProcess& base, const StableLaw& law,
                                      TimeChange mode, double t, std::size_t n,
                                      std::uint64_t seed) {
  detail::check_batch_args(n, t);
  const bool cauchy = std::holds_alternative<Cauchy>(base);
  const double d = cauchy ? std::get<Cauchy>(base).d : std::get<Gauss>(base).d;
  detail::require(d >= 1.0 && d == std::floor(d) && d <= 1e6,
                  "sample_timechanged: d must be a positive integer");
  const int dim = static_cast<int>(d);
  const detail::KanterFunction k(law.beta());
  const detail::KanterFunction half(0.5);
  const double b = law.beta(), lt = std::log(t);
  auto v = detail::fill_blocks(n, seed, [&](detail::Rng& rng) {
    const double ls = detail::log_stable_unit(k, rng);
    double log_time = mode == TimeChange::Subordinate ? lt / b + ls : b * (lt - ls);
    if (cauchy) log_time = 2.0 * log_time + detail::log_stable_unit(half, rng);
    double sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double z = rng.normal();
      sq += z * z;
    }
    // generator Laplacian: X_T ~ N(0, 2T I)
    return std::sqrt(2.0 * sq) * std::exp(0.5 * log_time);
  });
  std::string tag = std::string(cauchy ? "cauchy" : "gauss") + "(d=" + std::to_string(dim) + ")/" +
                    (mode == TimeChange::Subordinate ? "sub" : "invsub");
  return {std::move(v), tag + detail::tag("", b, t), seed, n};
}

/// One-sample Kolmogorov-Smirnov comparison against a reference CDF.
inline EcdfReport compare_ecdf(const SampleBatch& batch,
                               const std::function<double(double)>& reference_cdf,
                               std::size_t grid_points = 50) {
  detail::require(batch.values.size() >= 100, "compare_ecdf: need at least 100 samples");
  std::vector<double> x = batch.values;
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) throw DegenerateSampleError("compare_ecdf: all samples are equal");
  const double n = static_cast<double>(x.size());
  EcdfReport rep;
  rep.n = x.size();
  double ks = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = reference_cdf(x[i]);
    ks = std::max({ks, (i + 1) / n - f, f - i / n});
  }
  rep.ks_statistic = std::clamp(ks, 0.0, 1.0);
  const std::size_t g = std::min(grid_points, x.size());
  for (std::size_t j = 0; j < g; ++j) {
    const std::size_t i = (j * (x.size() - 1)) / std::max<std::size_t>(1, g - 1);
    // empirical CDF at x[i], counting ties
    const auto hi = std::upper_bound(x.begin(), x.end(), x[i]);
    rep.grid.push_back({x[i], static_cast<double>(hi - x.begin()) / n, reference_cdf(x[i])});
  }
  return rep;
}

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean of f(X) with its standard error from the sample variance.
inline MomentEstimate estimate_mean(const SampleBatch& batch,
                                    const std::function<double(double)>& f) {
  detail::require(batch.values.size() >= 2, "estimate_mean: need at least 2 samples");
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : batch.values) {
    const double v = f(x);
    ++k;
    const double delta = v - mean;
    mean += delta / k;
    m2 += delta * (v - mean);
  }
  const double var = m2 / (k - 1);
  return {mean, std::sqrt(var / k)};
}

}  // namespace frackernel
