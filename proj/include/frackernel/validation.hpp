#pragma once

// Ratio sweeps: quadrature value over asymptotic value along a log-spaced grid of
// the similarity variable.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "frackernel/asymptotics.hpp"
#include "frackernel/error.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/parallel.hpp"
#include "frackernel/stable.hpp"
#include "frackernel/transform.hpp"

namespace frackernel {

/// Which limit is checked.
///   SubFar / SubNear:     A = rho t^{-1/(alpha beta)} -> infinity / 0
///   InvLargeT / InvSmallT: A = rho^{-alpha/beta} t -> infinity / 0
///   InvSmallTExp:          A = rho t^{-beta/alpha} -> infinity (exponential profiles)
enum class SweepCase { SubFar, SubNear, InvLargeT, InvSmallT, InvSmallTExp };

inline const char* sweep_case_name(SweepCase c) {
  switch (c) {
    case SweepCase::SubFar: return "sub-far";
    case SweepCase::SubNear: return "sub-near";
    case SweepCase::InvLargeT: return "invsub-large-t";
    case SweepCase::InvSmallT: return "invsub-small-t";
    case SweepCase::InvSmallTExp: return "invsub-small-t-exp";
  }
  return "?";
}

struct SweepSpec {
  SweepCase which = SweepCase::SubFar;
  ProfileKernel kernel;
  double beta = 0.5;
  double t = 1.0;
  double a_from = 10.0;
  double a_to = 1e4;
  int per_decade = 4;
  QuadConfig quad;
};

struct SweepRow {
  double similarity = 0.0;
  double t = 0.0;
  double rho = 0.0;
  double quad_log = 0.0;
  double asym_log = 0.0;
  double ratio = 0.0;
  Regime regime = Regime::SubFar;
  bool ok = true;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// max |ratio - 1| over the decade ending at a_to
  double dev_last_decade = std::numeric_limits<double>::quiet_NaN();
  /// max |ratio - 1| over the decade two decades before a_to
  double dev_two_decades_earlier = std::numeric_limits<double>::quiet_NaN();
  /// |log quad - log asym| / |log asym| at the final point
  double log_rel_dev_last = std::numeric_limits<double>::quiet_NaN();
  bool all_ok = true;
};

inline std::vector<double> log_grid(double from, double to, int per_decade) {
  detail::require(from > 0.0 && to > 0.0, "log_grid: endpoints must be positive");
  detail::require(per_decade >= 1, "log_grid: need at least one point per decade");
  const double l0 = std::log10(from), l1 = std::log10(to);
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(l1 - l0) * per_decade - 1e-9)));
  std::vector<double> g(steps + 1);
  for (int i = 0; i <= steps; ++i) g[i] = std::pow(10.0, l0 + (l1 - l0) * i / steps);
  return g;
}

/// Evaluation point with similarity A at time t for the given case.
inline EvalPoint sweep_point(SweepCase c, double alpha, double beta, double t, double a) {
  switch (c) {
    case SweepCase::SubFar:
    case SweepCase::SubNear: return {t, a * std::pow(t, 1.0 / (alpha * beta))};
    case SweepCase::InvLargeT:
    case SweepCase::InvSmallT:
      // A = rho^{-alpha/beta} t  =>  rho = (t / A)^{beta/alpha}
      return {t, std::exp(beta / alpha * (std::log(t) - std::log(a)))};
    case SweepCase::InvSmallTExp: return {t, a * std::pow(t, beta / alpha)};
  }
  return {t, a};
}

/// Rejects (case, kernel) combinations with no asymptotic formula.
inline void check_sweep(const SweepSpec& s) {
  s.kernel.validate();
  detail::require(s.beta > 0.0 && s.beta < 1.0, "sweep: beta must lie in (0,1)");
  detail::require(s.t > 0.0, "sweep: t must be positive");
  if (s.which == SweepCase::InvSmallT && s.kernel.exponential_type()) {
    throw UncoveredCaseError("sweep: invsub-small-t needs a polynomial-type profile");
  }
  if (s.which == SweepCase::InvSmallTExp && !s.kernel.exponential_type()) {
    throw UncoveredCaseError("sweep: invsub-small-t-exp needs an exponential profile");
  }
}

inline SweepResult run_sweep(const SweepSpec& s) {
  check_sweep(s);
  const StableLaw law(s.beta);
  const auto grid = log_grid(s.a_from, s.a_to, s.per_decade);
  SweepResult res;
  res.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    SweepRow& row = res.rows[i];
    row.similarity = grid[i];
    const EvalPoint p = sweep_point(s.which, s.kernel.alpha, s.beta, s.t, grid[i]);
    row.t = p.t;
    row.rho = p.rho;
    try {
      AsymptoticResult asym;
      KernelValue q;
      switch (s.which) {
        case SweepCase::SubFar:
          asym = sub_asym_far(s.kernel, s.beta, p);
          q = subordinated_density(s.kernel, law, p, s.quad);
          break;
        case SweepCase::SubNear:
          asym = sub_asym_near(s.kernel, s.beta, p);
          q = subordinated_density(s.kernel, law, p, s.quad);
          break;
        case SweepCase::InvLargeT:
          asym = invsub_asym_large_t(s.kernel, s.beta, p);
          q = inverse_subordinated_density(s.kernel, law, p, s.quad);
          break;
        case SweepCase::InvSmallT:
        case SweepCase::InvSmallTExp:
          asym = invsub_asym_small_t(s.kernel, s.beta, p);
          q = inverse_subordinated_density(s.kernel, law, p, s.quad);
          break;
      }
      row.regime = asym.regime;
      row.quad_log = q.log_value;
      row.asym_log = asym.log_value;
      row.ratio = std::exp(q.log_value - asym.log_value);
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  const double l_end = std::log10(s.a_to);
  auto band_max = [&](double lo, double hi) {
    double m = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : res.rows) {
      const double dist = std::abs(std::log10(r.similarity) - l_end);
      if (r.ok && dist >= lo - 1e-9 && dist <= hi + 1e-9) {
        const double dev = std::abs(r.ratio - 1.0);
        m = std::isnan(m) ? dev : std::max(m, dev);
      }
    }
    return m;
  };
  res.dev_last_decade = band_max(0.0, 1.0);
  res.dev_two_decades_earlier = band_max(2.0, 3.0);
  for (const auto& r : res.rows) res.all_ok = res.all_ok && r.ok;
  const auto& last = res.rows.back();
  if (last.ok) res.log_rel_dev_last = std::abs(last.quad_log - last.asym_log) / std::abs(last.asym_log);
  return res;
}

}  // namespace frackernel
