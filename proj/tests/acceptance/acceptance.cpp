// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "frackernel/cli.hpp"
#include "frackernel/frackernel.hpp"

using namespace frackernel;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

// --- 1 -----------------------------------------------------------------------
Verdict cauchy_identity() {
  Verdict v;
  double worst = 0.0;
  for (double d : {1.0, 2.0, 3.0}) {
    const auto k = as_profile(Gauss{d});
    const StableLaw law(0.5);
    for (double t : {0.1, 1.0, 10.0}) {
      for (double rho : {0.0, 0.5, 1.0, 5.0}) {
        const double q = subordinated_density(k, law, {t, rho}).value;
        worst = std::max(worst, rel(q, cauchy_kernel({t, rho}, d)));
      }
    }
  }
  v.check(worst <= 1e-6, "max rel err " + fmt("%.3g", worst));
  if (v.pass) v.detail = "max rel err " + fmt("%.3g", worst);
  return v;
}

// --- 2 -----------------------------------------------------------------------
Verdict origin_identities() {
  Verdict v;
  double worst = 0.0;
  const auto k = as_profile(Gauss{1.0});
  const double f0 = profile_at_zero(k.profile), d = k.d, a = k.alpha;
  for (double beta : {0.3, 0.5, 0.8}) {
    const StableLaw law(beta);
    for (double t : {0.5, 1.0, 3.0}) {
      const double sub = subordinated_density(k, law, {t, 0.0}).value;
      const double sub_exact = k.c1 * f0 * std::pow(t, -d / (a * beta)) * law.moment(-d / a);
      const double inv = inverse_subordinated_density(k, law, {t, 0.0}).value;
      const double inv_exact = k.c1 * f0 * std::pow(t, -beta * d / a) * law.moment(beta * d / a);
      worst = std::max({worst, rel(sub, sub_exact), rel(inv, inv_exact)});
    }
  }
  v.check(worst <= 1e-8, "max rel err " + fmt("%.3g", worst));
  if (v.pass) v.detail = "max rel err " + fmt("%.3g", worst);
  return v;
}

// --- 3 -----------------------------------------------------------------------
Verdict constant_identities() {
  Verdict v;
  double worst = 0.0;
  auto log_close = [&](double x, double y, const std::string& what) {
    const double e = std::abs(x - y) / std::max(1.0, std::abs(y));
    worst = std::max(worst, e);
    v.check(e <= 1e-12, what + " off by " + fmt("%.3g", e));
  };
  const std::vector<EvalPoint> pts = {{0.3, 2.0}, {7.0, 0.4}, {200.0, 3.0}};
  for (double beta : {0.15, 0.5, 0.85}) {
    for (double d : {1.0, 2.0, 3.0, 4.0}) {
      // reflection: far-field constant vs the classical one
      log_close(std::log(closed_form::gauss_sub_far_constant(d, beta)),
                std::log(closed_form::polya_constant(d, beta)), "gauss far vs classical");
      const auto g = as_profile(Gauss{d});
      const auto c = as_profile(Cauchy{d});
      for (const auto& p : pts) {
        // duplication: near-field closed form vs generic
        log_close(gauss_asym(Part::B, d, beta, p).log_value, sub_asym_near(g, beta, p).log_value,
                  "gauss near");
        log_close(cauchy_asym(Part::A, d, beta, p).log_value, sub_asym_far(c, beta, p).log_value,
                  "cauchy a");
        log_close(cauchy_asym(Part::B, d, beta, p).log_value, sub_asym_near(c, beta, p).log_value,
                  "cauchy b");
        if (d > 1.0 || invsub_similarity(1.0, beta, p) > 1.0) {
          log_close(cauchy_asym(Part::C, d, beta, p).log_value,
                    invsub_asym_large_t(c, beta, p).log_value, "cauchy c");
        }
        log_close(cauchy_asym(Part::D, d, beta, p).log_value,
                  invsub_asym_small_t(c, beta, p).log_value, "cauchy d");
        // space-time fractional case at gamma = 1/2
        if (d > 1.0 || invsub_similarity(1.0, beta, p) > 1.0) {
          log_close(frac_frac_asym(beta, 0.5, d, p, Direction::LargeT).log_value,
                    cauchy_asym(Part::C, d, beta, p).log_value, "frac-frac large t");
        }
        log_close(frac_frac_asym(beta, 0.5, d, p, Direction::SmallT).log_value,
                  cauchy_asym(Part::D, d, beta, p).log_value, "frac-frac small t");
      }
    }
  }
  if (v.pass) v.detail = "max rel err " + fmt("%.3g", worst);
  return v;
}

// --- 4 -----------------------------------------------------------------------
struct SweepCheck {
  const char* name;
  SweepCase which;
  ProfileKernel kernel;
  double beta, from, to, tol;
};

Verdict ratio_convergence() {
  Verdict v;
  const std::vector<SweepCheck> checks = {
      {"1a gauss d=1", SweepCase::SubFar, as_profile(Gauss{1.0}), 0.5, 10.0, 1e4, 0.02},
      {"1a cauchy d=2", SweepCase::SubFar, as_profile(Cauchy{2.0}), 0.7, 10.0, 1e4, 0.02},
      {"1b gauss d=2", SweepCase::SubNear, as_profile(Gauss{2.0}), 0.5, 0.1, 1e-4, 0.02},
      {"1b cauchy d=1", SweepCase::SubNear, as_profile(Cauchy{1.0}), 0.6, 0.1, 1e-4, 0.02},
      {"2a d<alpha", SweepCase::InvLargeT, as_profile(Gauss{1.0}), 0.5, 1e2, 1e8, 0.02},
      {"2a d=alpha", SweepCase::InvLargeT, as_profile(Cauchy{1.0}), 0.5, 1e2, 1e12, 0.05},
      {"2a d>alpha", SweepCase::InvLargeT, as_profile(Gauss{3.0}), 0.5, 1e2, 1e8, 0.02},
      {"2b cauchy d=1", SweepCase::InvSmallT, as_profile(Cauchy{1.0}), 0.5, 1.0, 1e-6, 0.02},
      {"2b cauchy d=3", SweepCase::InvSmallT, as_profile(Cauchy{3.0}), 0.7, 1.0, 1e-6, 0.02},
  };
  std::string summary;
  for (const auto& c : checks) {
    SweepSpec s;
    s.which = c.which;
    s.kernel = c.kernel;
    s.beta = c.beta;
    s.a_from = c.from;
    s.a_to = c.to;
    const auto r = run_sweep(s);
    const bool ok = r.all_ok && r.dev_last_decade <= c.tol &&
                    r.dev_last_decade < r.dev_two_decades_earlier;
    v.check(ok, std::string(c.name) + " last " + fmt("%.3g", r.dev_last_decade) + " earlier " +
                    fmt("%.3g", r.dev_two_decades_earlier));
    summary += std::string(summary.empty() ? "" : ", ") + c.name + " " +
               fmt("%.2g", r.dev_last_decade);
  }
  // exponential regime in log space
  SweepSpec s;
  s.which = SweepCase::InvSmallTExp;
  s.beta = 0.5;
  s.a_from = 1.0;
  s.a_to = 1e3;
  for (double d : {1.0, 3.0}) {
    s.kernel = as_profile(Gauss{d});
    const auto r = run_sweep(s);
    v.check(r.all_ok && r.log_rel_dev_last <= 0.02,
            "2c d=" + fmt("%g", d) + " log dev " + fmt("%.3g", r.log_rel_dev_last));
    summary += ", 2c d=" + fmt("%g", d) + " log " + fmt("%.2g", r.log_rel_dev_last);
  }
  if (v.pass) v.detail = summary;
  return v;
}

// --- 5 -----------------------------------------------------------------------
Verdict monte_carlo() {
  Verdict v;
  double worst_z = 0.0;
  std::uint64_t seed = 100;
  for (double beta : {0.3, 0.5, 0.8}) {
    const StableLaw law(beta);
    const auto batch = sample_subordinator(law, 1.0, 1000000, seed++);
    for (double kappa : {-1.0, -0.5}) {
      const auto e = estimate_mean(batch, [kappa](double x) { return std::pow(x, kappa); });
      const double z = std::abs(e.mean - law.moment(kappa)) / e.std_error;
      worst_z = std::max(worst_z, z);
      v.check(z <= 4.0, "beta=" + fmt("%g", beta) + " kappa=" + fmt("%g", kappa) + " z=" +
                            fmt("%.2f", z));
    }
  }
  // Brownian motion in the plane subordinated at 1/2 is the Cauchy process
  const auto planar =
      sample_timechanged(Gauss{2.0}, StableLaw(0.5), TimeChange::Subordinate, 1.0, 1000000, seed++);
  const auto e = estimate_mean(planar, [](double r) { return 1.0 / r; });
  const double zl = std::abs(e.mean - levy_moment(1.0, 2.0, -1.0, 1.0)) / e.std_error;
  v.check(zl <= 4.0, "levy moment z=" + fmt("%.2f", zl));

  const StableLaw half(0.5);
  const auto inv = sample_inverse_subordinator(half, 1.0, 100000, seed++);
  const auto rep = compare_ecdf(inv, [&](double s) { return half.inverse_cdf_time(1.0, s); });
  const double crit = ks_critical_1pct(rep.n);
  v.check(rep.ks_statistic < crit, "KS " + fmt("%.4f", rep.ks_statistic));
  if (v.pass) {
    v.detail = "max |z| moments " + fmt("%.2f", worst_z) + ", levy z " + fmt("%.2f", zl) +
               ", KS " + fmt("%.4f", rep.ks_statistic) + " < " + fmt("%.4f", crit);
  }
  return v;
}

// --- 6 -----------------------------------------------------------------------
Verdict laplace_and_ib() {
  Verdict v;
  const double c = 1e4;
  LaplaceProblem pr;
  pr.h = [](double r) { return (r - 0.3) * (r - 0.3); };
  pr.r0 = 0.3;
  pr.h_at_r0 = 0.0;
  pr.h_second_at_r0 = 2.0;
  pr.c = c;
  pr.v = -1.0;
  pr.w = 2.0;
  const auto q = quad::integrate([&](double r) { return std::exp(-c * pr.h(r)); }, pr.v, pr.w,
                                 std::vector<double>{pr.r0}, {.rel_tol = 1e-13});
  const double e1 = rel(laplace_approx(pr), q.value);
  v.check(e1 <= 0.01, "laplace " + fmt("%.3g", e1));

  const double B = 1e4;
  const double bessel = 2.0 / std::sqrt(B) * std::cyl_bessel_k(1.0, 2.0 * std::sqrt(B));
  const double e2 = rel(ib_asym(0.0, 1.0, 1.0, 1.0, B), bessel);
  v.check(e2 <= 0.01, "I(B) vs Bessel " + fmt("%.3g", e2));

  const double a = -1.0, b = 2.0, cc = 1.0, dd = 0.5;
  auto h = [=](double y) { return (a + 1.0) * y - B * std::exp(b * y) - cc * std::exp(-dd * y); };
  const double y0 = std::log(cc * dd / (B * b)) / (b + dd);
  const double hints[] = {y0};
  quad::LineOptions opt;
  opt.rel_tol = 1e-12;
  const double log_q = quad::integrate_exp_line(h, y0, hints, opt).log_value;
  const double e3 = std::abs(std::exp(log_ib_asym(a, b, cc, dd, B) - log_q) - 1.0);
  v.check(e3 <= 0.02, "I(B) vs quadrature " + fmt("%.3g", e3));
  if (v.pass) {
    v.detail = "laplace " + fmt("%.2g", e1) + ", bessel " + fmt("%.2g", e2) + ", quadrature " +
               fmt("%.2g", e3);
  }
  return v;
}

// --- 7 -----------------------------------------------------------------------
template <class LogF>
double radial_mass(LogF&& log_f, double d) {
  auto h = [&](double x) { return d * x + log_f(std::exp(x)); };
  const double hints[] = {0.0};
  quad::LineOptions opt;
  opt.rel_tol = 1e-10;
  const double omega = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  return omega * std::exp(quad::integrate_exp_line(h, 0.0, hints, opt).log_value);
}

Verdict normalization() {
  Verdict v;
  struct Item {
    const char* name;
    ProfileKernel k;
  };
  const std::vector<Item> items = {{"gauss d=1", as_profile(Gauss{1.0})},
                                   {"gauss d=2", as_profile(Gauss{2.0})},
                                   {"cauchy d=1", as_profile(Cauchy{1.0})}};
  double worst = 0.0;
  for (const auto& it : items) {
    for (double beta : {0.5, 0.7}) {
      const StableLaw law(beta);
      const double ms = radial_mass(
          [&](double r) { return subordinated_density(it.k, law, {1.0, r}).log_value; }, it.k.d);
      const double mi = radial_mass(
          [&](double r) { return inverse_subordinated_density(it.k, law, {1.0, r}).log_value; },
          it.k.d);
      worst = std::max({worst, std::abs(ms - 1.0), std::abs(mi - 1.0)});
      v.check(std::abs(ms - 1.0) <= 1e-6 && std::abs(mi - 1.0) <= 1e-6,
              std::string(it.name) + " beta=" + fmt("%g", beta) + " masses " + fmt("%.10f", ms) +
                  " / " + fmt("%.10f", mi));
    }
  }
  if (v.pass) v.detail = "max |mass-1| " + fmt("%.3g", worst);
  return v;
}

// --- 8 -----------------------------------------------------------------------
std::string run_cli(const cli::RunConfig& c, int* code) {
  std::ostringstream out, err;
  *code = cli::run(c, out, err);
  return out.str();
}

Verdict determinism() {
  Verdict v;
  cli::RunConfig val;
  val.command = "validate";
  val.sweep_case = "2a";
  val.base = "gauss";
  val.d = 3.0;
  val.a_to = 1e8;
  val.format = "json";
  cli::RunConfig smp;
  smp.command = "sample";
  smp.sample_kind = "timechanged";
  smp.base = "cauchy";
  smp.d = 2.0;
  smp.beta = 0.6;
  smp.mode = "invsub";
  smp.n = 100000;
  smp.seed = 2024;
  for (const auto* c : {&val, &smp}) {
    int c1 = 0, c2 = 0, c3 = 0;
    ::setenv("FRACKERNEL_THREADS", "1", 1);
    const std::string a = run_cli(*c, &c1);
    const std::string b = run_cli(*c, &c2);
    ::setenv("FRACKERNEL_THREADS", "8", 1);
    const std::string d = run_cli(*c, &c3);
    ::unsetenv("FRACKERNEL_THREADS");
    v.check(c1 == 0 && c2 == 0 && c3 == 0, c->command + " exit codes");
    v.check(!a.empty() && a == b && a == d, c->command + " output differs");
  }
  if (v.pass) v.detail = "validate and sample byte-identical across runs and thread counts";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Cauchy identity", 5.0, cauchy_identity},
      {2, "rho=0 identities", 2.0, origin_identities},
      {3, "constant identities", 1.0, constant_identities},
      {4, "asymptotic ratio convergence", 60.0, ratio_convergence},
      {5, "Monte Carlo agreement", 30.0, monte_carlo},
      {6, "Laplace and I(B) approximations", 10.0, laplace_and_ib},
      {7, "normalization", 20.0, normalization},
      {8, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      v.pass = false;
      v.detail += " (over the " + fmt("%g", c.budget_s) + " s budget)";
    }
    std::printf("criterion %d %-34s %s  [%.2f s]  %s\n", c.id, c.title, v.pass ? "PASS" : "FAIL",
                secs, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
