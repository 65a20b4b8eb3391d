#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "frackernel/asymptotics.hpp"
#include "frackernel/quadrature.hpp"
#include "frackernel/transform.hpp"

using namespace frackernel;

namespace {

constexpr double kPi = std::numbers::pi;

double sub(const ProfileKernel& k, double beta, double t, double rho) {
  return subordinated_density(k, StableLaw(beta), {t, rho}).value;
}
double inv(const ProfileKernel& k, double beta, double t, double rho) {
  return inverse_subordinated_density(k, StableLaw(beta), {t, rho}).value;
}

template <class LogF>
double radial_mass(LogF&& log_f, double d) {
  auto h = [&](double x) { return d * x + log_f(std::exp(x)); };
  const double hints[] = {0.0};
  quad::LineOptions opt;
  opt.rel_tol = 1e-10;
  const double omega = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  return omega * std::exp(quad::integrate_exp_line(h, 0.0, hints, opt).log_value);
}

}  // namespace

TEST(Subordinated, GaussAtHalfIsCauchy) {
  const auto g = as_profile(Gauss{1.0});
  EXPECT_NEAR(sub(g, 0.5, 1.0, 1.0), 1.0 / (2.0 * kPi), 1e-10);
  EXPECT_NEAR(sub(g, 0.5, 1.0, 0.0), 1.0 / kPi, 1e-10);
  for (double d : {1.0, 2.0, 3.0}) {
    for (double t : {0.1, 1.0, 10.0}) {
      for (double r : {0.0, 0.5, 1.0, 5.0}) {
        EXPECT_NEAR(sub(as_profile(Gauss{d}), 0.5, t, r) / cauchy_kernel({t, r}, d), 1.0, 1e-9)
            << "d=" << d << " t=" << t << " rho=" << r;
      }
    }
  }
}

TEST(Subordinated, FourierOracleValues) {
  // inverse Fourier transform of exp(-t |xi|^{2 beta}), or its convergent series when 2 beta < 1
  struct Case {
    double d, beta, t, rho, value;
  };
  const Case cases[] = {
      {2.0, 0.7, 1.0, 1.0, 0.063091330277532875817},
      {1.0, 0.3, 2.0, 0.5, 0.1208164597953823114556},
      {3.0, 0.8, 0.5, 2.0, 0.0054878693021774633648},
      {2.0, 0.7, 1.0, 0.0, 0.10073103403546518152},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(sub(as_profile(Gauss{c.d}), c.beta, c.t, c.rho) / c.value, 1.0, 1e-8)
        << "d=" << c.d << " beta=" << c.beta;
  }
}

TEST(Subordinated, CompositionOfSubordinators) {
  // Cauchy = Gauss subordinated by 1/2, so Cauchy subordinated by beta = Gauss by beta/2
  for (double d : {1.0, 2.0}) {
    for (double beta : {0.4, 0.9}) {
      for (double r : {0.0, 0.7, 6.0}) {
        const double c = sub(as_profile(Cauchy{d}), beta, 1.3, r);
        const double g = sub(as_profile(Gauss{d}), 0.5 * beta, 1.3, r);
        EXPECT_NEAR(c / g, 1.0, 1e-7) << "d=" << d << " beta=" << beta << " rho=" << r;
      }
    }
  }
}

TEST(Subordinated, SelfSimilarity) {
  // p^S(t, rho) = t^{-d/(alpha beta)} p^S(1, rho t^{-1/(alpha beta)})
  const auto k = as_profile(Gauss{2.0});
  const double beta = 0.6, ab = 2.0 * beta;
  for (double t : {0.05, 20.0}) {
    for (double r : {0.3, 3.0}) {
      EXPECT_NEAR(sub(k, beta, t, r) / (std::pow(t, -2.0 / ab) * sub(k, beta, 1.0, r * std::pow(t, -1.0 / ab))),
                  1.0, 1e-9);
    }
  }
}

TEST(Subordinated, DecreasingInRho) {
  const auto k = as_profile(Cauchy{2.0});
  double prev = sub(k, 0.35, 1.0, 0.0);
  for (double r = 0.01; r < 1e4; r *= 2.5) {
    const double v = sub(k, 0.35, 1.0, r);
    EXPECT_LT(v, prev) << "rho=" << r;
    prev = v;
  }
}

TEST(Subordinated, RadialNormalization) {
  const StableLaw law(0.7);
  const auto k = as_profile(Gauss{1.0});
  const double m = radial_mass(
      [&](double r) { return subordinated_density(k, law, {1.0, r}).log_value; }, 1.0);
  EXPECT_NEAR(m, 1.0, 1e-6);
}

TEST(Subordinated, StableProfileBase) {
  // 1-stable profile equals the Cauchy kernel, so both transforms must agree
  const auto s = as_profile(Stable2Gamma{0.5, 1.0});
  const auto c = as_profile(Cauchy{1.0});
  for (double r : {0.0, 0.8, 30.0}) {
    EXPECT_NEAR(sub(s, 0.6, 1.0, r) / sub(c, 0.6, 1.0, r), 1.0, 1e-6);
    EXPECT_NEAR(inv(s, 0.6, 1.0, r + 0.1) / inv(c, 0.6, 1.0, r + 0.1), 1.0, 1e-6);
  }
}

TEST(InverseSubordinated, HalfNormalOracleValues) {
  // at beta = 1/2, S^{-1}_t = sqrt(2t)|Z|; one-dimensional quadrature at 30 digits
  EXPECT_NEAR(inv(as_profile(Gauss{1.0}), 0.5, 1.0, 0.0), 0.40802446954913148829, 1e-10);
  EXPECT_NEAR(inv(as_profile(Gauss{1.0}), 0.5, 1.0, 0.0), 1.0 / (2.0 * std::tgamma(0.75)), 1e-10);
  EXPECT_NEAR(inv(as_profile(Gauss{3.0}), 0.5, 1.0, 1.0) / 0.024852423879502757748, 1.0, 1e-9);
  EXPECT_NEAR(inv(as_profile(Cauchy{1.0}), 0.5, 1.0, 1.0) / 0.1204028790683968641, 1.0, 1e-9);
  EXPECT_NEAR(inv(as_profile(Cauchy{2.0}), 0.5, 3.0, 0.2) / 0.23432921565040744971, 1.0, 1e-9);
}

TEST(InverseSubordinated, MWrightOracleValues) {
  // in one dimension the kernel is t^{-beta/2} M_{beta/2}(rho t^{-beta/2}) / 2 with M the
  // M-Wright function; entire series at 50 digits
  struct Case {
    double beta, t, rho, value;
  };
  const Case cases[] = {
      {0.7, 1.0, 0.5, 0.2769856600585338885201},
      {0.3, 2.0, 1.5, 0.1223206093016125980572},
      {0.8, 0.5, 3.0, 0.01237928323115309747673},
      {0.7, 1.0, 0.0, 0.3610642464493842505013},
      {0.5, 1.0, 1.0, 0.19166770828534176789},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(inv(as_profile(Gauss{1.0}), c.beta, c.t, c.rho) / c.value, 1.0, 1e-9)
        << "beta=" << c.beta << " rho=" << c.rho;
  }
}

TEST(InverseSubordinated, MomentIdentityAtOrigin) {
  // d < alpha: p^{S^-1}(t, 0) = C1 F(0) t^{-beta d/alpha} E S_1^{beta d/alpha}
  for (double beta : {0.3, 0.5, 0.8}) {
    const StableLaw law(beta);
    const double t = 2.0;
    const double exact = std::pow(4.0 * kPi, -0.5) * std::pow(t, -beta / 2.0) * law.moment(beta / 2.0);
    EXPECT_NEAR(inverse_subordinated_density(as_profile(Gauss{1.0}), law, {t, 0.0}).value / exact,
                1.0, 1e-9)
        << "beta=" << beta;
  }
}

TEST(InverseSubordinated, DivergesAtOriginWhenDAtLeastAlpha) {
  const StableLaw law(0.5);
  EXPECT_THROW(inverse_subordinated_density(as_profile(Gauss{2.0}), law, {1.0, 0.0}),
               DivergenceError);
  EXPECT_THROW(inverse_subordinated_density(as_profile(Cauchy{1.0}), law, {1.0, 0.0}),
               DivergenceError);
}

TEST(InverseSubordinated, SelfSimilarity) {
  // p^{S^-1}(t, rho) = t^{-beta d/alpha} p^{S^-1}(1, rho t^{-beta/alpha})
  const auto k = as_profile(Cauchy{1.0});
  const double beta = 0.45;
  for (double t : {0.02, 30.0}) {
    for (double r : {0.3, 3.0}) {
      EXPECT_NEAR(inv(k, beta, t, r) /
                      (std::pow(t, -beta) * inv(k, beta, 1.0, r * std::pow(t, -beta))),
                  1.0, 1e-9);
    }
  }
}

TEST(InverseSubordinated, RadialNormalization) {
  const StableLaw law(0.5);
  const auto k = as_profile(Gauss{2.0});
  const double m = radial_mass(
      [&](double r) { return inverse_subordinated_density(k, law, {1.0, r}).log_value; }, 2.0);
  EXPECT_NEAR(m, 1.0, 1e-6);
}

TEST(InverseSubordinated, CauchySmallTimeAgainstAsymptotic) {
  const double q = inv(as_profile(Cauchy{1.0}), 0.5, 1e-3, 1.0);
  const double a = cauchy_asym(Part::D, 1.0, 0.5, {1e-3, 1.0}).value;
  EXPECT_NEAR(q / a, 1.0, 2e-2);
}

TEST(InverseSubordinated, UnderflowKeepsLogValue) {
  // Gaussian tail far beyond the similarity scale
  const auto r = inverse_subordinated_density(as_profile(Gauss{1.0}), StableLaw(0.5), {1e-3, 500.0});
  EXPECT_TRUE(r.underflow);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(std::isfinite(r.log_value));
  EXPECT_LT(r.log_value, std::log(1e-300));
}

TEST(QuadConfig, TailPolicy) {
  const auto k = as_profile(Cauchy{1.0});
  const StableLaw law(0.5);
  const EvalPoint p{1.0, 1.0};
  QuadConfig full, cut, far_cut;
  cut.tail_policy = HardTruncate{10.0};
  far_cut.tail_policy = HardTruncate{1e12};
  const double v_full = subordinated_density(k, law, p, full).value;
  const double v_cut = subordinated_density(k, law, p, cut).value;
  const double v_far = subordinated_density(k, law, p, far_cut).value;
  EXPECT_LT(v_cut, v_full);
  EXPECT_NEAR(v_far / v_full, 1.0, 1e-5);
}

TEST(QuadConfig, Validation) {
  QuadConfig bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(bad.validate(), DomainError);
  QuadConfig shallow;
  shallow.max_depth = 2;
  EXPECT_THROW(subordinated_density(as_profile(Gauss{1.0}), StableLaw(0.5), {1.0, 1.0}, shallow),
               DomainError);
  QuadConfig neg;
  neg.tail_policy = HardTruncate{-1.0};
  EXPECT_THROW(neg.validate(), DomainError);
}

TEST(QuadConfig, UnreachableToleranceReportsBestEstimate) {
  QuadConfig strict;
  strict.rel_tol = 1e-17;
  strict.max_depth = 4;
  try {
    subordinated_density(as_profile(Gauss{2.0}), StableLaw(0.7), {1.0, 1.0}, strict);
    FAIL() << "expected a convergence error";
  } catch (const ConvergenceError& e) {
    EXPECT_NEAR(e.best_value() / 0.063091330277532875817, 1.0, 1e-4);
    EXPECT_GT(e.est_error(), 0.0);
  }
}

TEST(Transforms, RejectBadPoints) {
  const StableLaw law(0.5);
  EXPECT_THROW(subordinated_density(as_profile(Gauss{1.0}), law, {0.0, 1.0}), DomainError);
  EXPECT_THROW(inverse_subordinated_density(as_profile(Gauss{1.0}), law, {1.0, -1.0}), DomainError);
}
