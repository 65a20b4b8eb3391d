#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature and a log-space integrator for
// ∫ exp(h(y)) dy over the real line, used by every kernel transform.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace frackernel::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_depth = 40;  // bisection depth below an initial subinterval
  int max_intervals = 20000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

namespace detail {

// Kronrod abscissae (descending), Kronrod weights and the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  int depth;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece gk15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double result = kronrod * half;
  double err = std::abs((kronrod - gauss) * half);
  asc *= std::abs(half);
  abs_sum *= std::abs(half);
  // QUADPACK error scaling
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * abs_sum);
  }
  return {a, b, result, err, depth};
}

}  // namespace detail

/// Globally adaptive GK15 over [a,b] with optional interior breakpoints.
template <class F>
Result integrate(F&& f, double a, double b, std::span<const double> breakpoints = {},
                 const Options& opt = {}) {
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Piece> active;
  std::vector<detail::Piece> frozen;  // hit max_depth
  Result out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    active.push(detail::gk15(f, cuts[i], cuts[i + 1], 0));
    out.evaluations += 15;
  }

  auto totals = [&](double& value, double& error) {
    value = 0.0;
    error = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    for (const auto& p : frozen) {
      value += p.value;
      error += p.error;
    }
  };

  double value = 0.0, error = 0.0;
  totals(value, error);
  int count = static_cast<int>(active.size());
  while (!active.empty() && error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    if (count >= opt.max_intervals) {
      out.converged = false;
      break;
    }
    const detail::Piece worst = active.top();
    active.pop();
    if (worst.depth >= opt.max_depth) {
      frozen.push_back(worst);
      out.converged = false;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15(f, worst.a, mid, worst.depth + 1);
    const auto right = detail::gk15(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++count;
    // refresh the running sums now and then to shed accumulated cancellation
    if (count % 64 == 0) totals(value, error);
  }
  totals(value, error);
  out.value = value;
  out.abs_error = error;
  if (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) out.converged = false;
  return out;
}

/// Golden-section search for the maximum of a unimodal function on [a,b].
template <class F>
double argmax_golden(F&& f, double a, double b, int iterations = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return f1 < f2 ? x2 : x1;
}

struct LineOptions {
  double rel_tol = 1e-10;
  int max_depth = 40;
  int max_intervals = 20000;
  double scan_step = 0.5;
  /// Scanning stops once the remaining tail is below exp(-tail_drop) times the peak.
  double tail_drop = 40.0;
  /// Give up (divergence) if the integrand has not decayed within this span.
  double max_span = 3000.0;
  /// Hard upper limit for y; no tail completion beyond it.
  double y_max = std::numeric_limits<double>::infinity();
};

struct LineResult {
  double log_value = -std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
  bool converged = true;
  bool diverged = false;
  long evaluations = 0;
};

/// log ∫ exp(h(y)) dy over the real line for a log-integrand that is unimodal
/// with decaying tails. `y_start` seeds the scan, `hints` become breakpoints.
/// Tails beyond the scanned window are completed with the local exponential rate.
template <class H>
LineResult integrate_exp_line(H&& h, double y_start, std::span<const double> hints,
                              const LineOptions& opt = {}) {
  LineResult out;
  const double step = opt.scan_step;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  auto eval = [&](double y) {
    ++out.evaluations;
    const double v = h(y);
    return std::isnan(v) ? neg_inf : v;
  };

  y_start = std::min(y_start, opt.y_max);
  double hmax = eval(y_start);
  double ybest = y_start;

  // right scan
  double y_hi = y_start, h_hi = hmax, rate_hi = 0.0;
  bool right_open = true;  // false once the hard limit was hit
  for (;;) {
    double y = y_hi + step;
    if (y >= opt.y_max) {
      y_hi = opt.y_max;
      h_hi = eval(y_hi);
      if (h_hi > hmax) hmax = h_hi, ybest = y_hi;
      right_open = false;
      break;
    }
    const double hv = eval(y);
    const double rate = (h_hi - hv) / step;
    y_hi = y;
    h_hi = hv;
    if (hv > hmax) hmax = hv, ybest = y;
    if (hv == neg_inf) {
      rate_hi = std::numeric_limits<double>::infinity();
      break;
    }
    if (rate > 0.0 && hv - hmax - std::log(rate) < -opt.tail_drop) {
      rate_hi = rate;
      break;
    }
    if (y - y_start > opt.max_span) {
      out.diverged = true;
      out.converged = false;
      return out;
    }
  }
  // left scan
  double y_lo = y_start, h_lo = eval(y_start), rate_lo = 0.0;
  for (;;) {
    const double y = y_lo - step;
    const double hv = eval(y);
    const double rate = (h_lo - hv) / step;
    y_lo = y;
    h_lo = hv;
    if (hv > hmax) hmax = hv, ybest = y;
    if (hv == neg_inf) {
      rate_lo = std::numeric_limits<double>::infinity();
      break;
    }
    if (rate > 0.0 && hv - hmax - std::log(rate) < -opt.tail_drop) {
      rate_lo = rate;
      break;
    }
    if (y_start - y > opt.max_span) {
      out.diverged = true;
      out.converged = false;
      return out;
    }
  }
  if (hmax == neg_inf) return out;

  // locate the peak precisely; the grid may straddle a narrow spike
  const double a = std::max(y_lo, ybest - step), b = std::min(y_hi, ybest + step);
  const double ypk = argmax_golden(eval, a, b);
  const double hpk = eval(ypk);
  if (hpk > hmax) hmax = hpk;

  // curvature scale at the peak
  double width = step;
  for (double d = step / 4; d > 1e-300; d *= 0.5) {
    const double drop = hmax - 0.5 * (eval(ypk - d) + eval(ypk + d));
    if (drop < 2.0) {
      width = drop > 1e-12 ? d / std::sqrt(2.0 * drop) : step;
      break;
    }
  }

  std::vector<double> cuts;
  for (double y = y_lo + 2.0; y < y_hi; y += 2.0) cuts.push_back(y);
  cuts.push_back(ypk);
  for (double w = width; w < 2.0; w *= 2.0) {
    cuts.push_back(ypk - w);
    cuts.push_back(ypk + w);
  }
  for (double y : hints) {
    if (std::isfinite(y)) cuts.push_back(y);
  }

  auto integrand = [&](double y) { return std::exp(eval(y) - hmax); };
  Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.abs_tol = 0.0;
  qo.max_depth = opt.max_depth;
  qo.max_intervals = opt.max_intervals;
  const Result r = integrate(integrand, y_lo, y_hi, cuts, qo);

  double total = r.value;
  if (right_open && std::isfinite(rate_hi)) total += std::exp(h_hi - hmax) / rate_hi;
  if (std::isfinite(rate_lo)) total += std::exp(h_lo - hmax) / rate_lo;
  out.log_value = hmax + std::log(total);
  out.rel_error = total > 0.0 ? r.abs_error / total : 0.0;
  out.converged = r.converged;
  return out;
}

}  // namespace frackernel::quad
