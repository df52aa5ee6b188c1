#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "foursplit/stepsize.hpp"

using namespace foursplit;

namespace {

CurvatureParams mc_params() {
  CurvatureParams p;
  p.l_f = 10.0;
  p.l_h = 1.0;
  return p;
}

// Independent reference for the tau <= 1 rule, valid for any tau in (0, 2).
double small_tau_rule(const CurvatureParams& p, double tau) {
  const double s = p.l_f + p.l_h;
  if ((2.0 - tau) * p.l_f - 2.0 * p.rho_f >= tau * p.l_h) return 1.0 / s;
  const double a = 2.0 * (2.0 - tau);
  const double b = -tau * ((2.0 - tau) * p.l_h + p.rho_f * tau);
  const double c = -tau * tau * (p.rho_f * p.rho_f + p.l_f * p.l_h);
  const double eta = (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
  return tau / (2.0 * eta);
}

CurvatureParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CurvatureParams p;
  p.l_f = std::pow(10.0, 4.0 * u(rng) - 2.0);
  p.l_h = std::pow(10.0, 4.0 * u(rng) - 2.0);
  if (u(rng) < 0.1) p.l_f = 0.0;
  else if (u(rng) < 0.1) p.l_h = 0.0;
  p.rho_f = p.l_f * u(rng);
  p.rho_h = p.l_h * u(rng);
  p.sigma_h = p.l_h * (2.0 * u(rng) - 1.0);
  return p;
}

}  // namespace

TEST(AlphaBar, MatrixCompletionAtTauOne) {
  const auto b = compute_alpha_bar(mc_params(), 1.0);
  EXPECT_EQ(b.regime, Regime::kTauUpTo1Case1);
  EXPECT_NEAR(b.alpha_bar, 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(0.99 * b.alpha_bar, 0.09, 5e-4);
}

TEST(AlphaBar, WeaklyConvexFWithoutH) {
  CurvatureParams p;
  p.l_f = 4.0;
  p.rho_f = 1.0;
  const auto b = compute_alpha_bar(p, 1.5);
  EXPECT_NEAR(b.alpha_bar, 0.25, 1e-12);
  EXPECT_NEAR(b.alpha_bar, std::min(1.0 / p.l_f, (2.0 - 1.5) / (2.0 * p.rho_f)), 1e-12);
}

TEST(AlphaBar, CaseTwoRootOfQuadratic) {
  CurvatureParams p;
  p.l_h = 2.0;
  const auto b = compute_alpha_bar(p, 0.5);
  EXPECT_EQ(b.regime, Regime::kTauUpTo1Case2);
  EXPECT_NEAR(b.diag.eta_star, 0.5, 1e-14);
  EXPECT_NEAR(b.alpha_bar, 0.5, 1e-14);
}

TEST(AlphaBar, TauTwoClosedForm) {
  CurvatureParams p;
  p.l_f = 2.0;
  p.sigma_f = 1.5;
  p.l_h = 0.25;
  p.rho_h = 0.0;
  const auto b = compute_alpha_bar(p, 2.0);
  EXPECT_EQ(b.regime, Regime::kTauAtLeast2Interval);
  EXPECT_NEAR(b.lower, 0.0, 1e-15);
  const double closed = 2.0 * (1.5 - 0.25) / (0.25 * (4.0 - 2.25) + 1.5 * 2.0 * 2.25);
  EXPECT_NEAR(b.upper, closed, 1e-12);
  EXPECT_NEAR(b.upper, 0.34783, 1e-5);
}

TEST(AlphaBar, TauAboveTwoIntervalHasNegativeDescentPolynomial) {
  CurvatureParams p;
  p.l_f = 1.0;
  p.sigma_f = 0.9;
  p.l_h = 0.05;
  const auto b = compute_alpha_bar(p, 2.3);
  ASSERT_LT(b.lower, b.upper);
  EXPECT_GT(b.lower, 0.0);
  const double mid = 0.5 * (b.lower + b.upper);
  EXPECT_LT(b.c(mid), 0.0);
  EXPECT_NEAR(b.diag.mu_lower * b.diag.mu_upper,
              2.0 * (2.3 - 2.0) / (2.3 * 2.3 * (b.diag.theta0 + b.diag.nu)), 1e-12);
}

TEST(AlphaBar, TauTwoNeedsStrongConvexity) {
  EXPECT_THROW(compute_alpha_bar(mc_params(), 2.0), InfeasibleTau);
  CurvatureParams p;
  p.l_f = 1.0;
  p.sigma_f = 0.1;
  p.l_h = 1.0;  // sigma_f <= l_h + rho_h
  p.rho_h = 1.0;
  EXPECT_THROW(compute_alpha_bar(p, 2.0), InfeasibleTau);
}

TEST(AlphaBar, SmoothFree) {
  CurvatureParams p;
  p.rho_p = 2.0;
  const auto b = compute_alpha_bar(p, 1.0);
  EXPECT_EQ(b.regime, Regime::kSmoothFree);
  EXPECT_TRUE(std::isinf(b.alpha_bar));
}

TEST(AlphaBar, RejectsBadInput) {
  EXPECT_THROW(compute_alpha_bar(mc_params(), 0.0), ArgumentError);
  CurvatureParams p = mc_params();
  p.rho_f = 11.0;
  EXPECT_THROW(compute_alpha_bar(p, 1.0), ArgumentError);
}

TEST(AlphaBar, MatrixCompletionTauSweepShape) {
  // The bound stays in case 1 up to tau = 1.7 and drops sharply after.
  const auto p = mc_params();
  EXPECT_EQ(compute_alpha_bar(p, 1.7).regime, Regime::kTauBelow2Case1);
  EXPECT_EQ(compute_alpha_bar(p, 1.9).regime, Regime::kTauBelow2Case2);
  EXPECT_GT(compute_alpha_bar(p, 1.5).alpha_bar, compute_alpha_bar(p, 1.7).alpha_bar);
  EXPECT_GT(compute_alpha_bar(p, 1.7).alpha_bar, 2.0 * compute_alpha_bar(p, 1.9).alpha_bar);
}

TEST(AlphaBarProperty, NeverExceedsInverseSmoothness) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 4000; ++i) {
    const auto p = random_params(rng);
    if (p.l_f + p.l_h == 0.0) continue;
    for (double tau : {0.25, 0.5, 1.0, 1.3, 1.7, 1.9}) {
      const auto b = compute_alpha_bar(p, tau);
      EXPECT_LE(b.alpha_bar, (1.0 / (p.l_f + p.l_h)) * (1.0 + 1e-12));
      EXPECT_LT(b.c(0.99 * b.alpha_bar), 0.0);
      if (b.regime == Regime::kTauUpTo1Case2 || b.regime == Regime::kTauBelow2Case2)
        EXPECT_LE(std::abs(b.c_at_bar), 1e-9 * (1.0 + p.l_f + p.l_h));
      if (b.regime == Regime::kTauUpTo1Case2)
        EXPECT_GE(b.alpha_bar, (2.0 - tau) / (2.0 * (p.l_h + p.rho_f)) * (1.0 - 1e-12));
    }
  }
}

TEST(AlphaBarProperty, MidRangeTauMatchesSmallTauRuleWhenSigmaEqualsLh) {
  for (double lh : {0.0, 0.1, 0.5, 1.0, 3.0}) {
    for (double rho : {0.0, 0.2, 0.5, 1.0}) {
      CurvatureParams p;
      p.l_f = 1.0;
      p.rho_f = rho;
      p.l_h = lh;
      p.sigma_h = lh;
      for (double tau : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        const double got = compute_alpha_bar(p, tau).alpha_bar;
        EXPECT_NEAR(got, small_tau_rule(p, tau), 1e-12 * (1.0 + got)) << lh << ' ' << rho << ' ' << tau;
      }
    }
  }
}

TEST(BianZhang, MatrixCompletion) {
  const double a = bian_zhang_alpha(mc_params());
  EXPECT_NEAR(a, 0.0213896949848536, 1e-12);  // high-precision root of the cubic
  EXPECT_NEAR(100 * a * a * a + 220 * a * a + 42 * a - 1.0, 0.0, 1e-12);
  EXPECT_NEAR(0.99 * a, 0.0212, 5e-4);
}

TEST(BianZhang, QuadraticCase) {
  CurvatureParams p;
  p.l_f = 1.0;
  EXPECT_NEAR(bian_zhang_alpha(p), (-2.0 + std::sqrt(6.0)) / 2.0, 1e-10);
}

TEST(BianZhang, NeedsSmoothPart) { EXPECT_THROW(bian_zhang_alpha(CurvatureParams{}), ArgumentError); }

TEST(BianZhangProperty, OursIsLargerOnRandomSweep) {
  std::mt19937_64 rng(5);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = random_params(rng);
    if (p.l_f + p.l_h == 0.0) continue;
    if (!(bian_zhang_alpha(p) < compute_alpha_bar(p, 1.0).alpha_bar)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(StepConfigTest, MatrixCompletionDefaults) {
  const auto cfg = make_step_config(mc_params(), 1.0, 0.99);
  EXPECT_NEAR(cfg.alpha, 0.09, 5e-4);
  EXPECT_TRUE(std::isinf(cfg.beta));
  EXPECT_EQ(cfg.gamma, cfg.alpha);
}

TEST(StepConfigTest, HarmonicSum) {
  const auto cfg = make_config(1.0, 1.0, 0.25);
  EXPECT_NEAR(cfg.gamma, 0.2, 1e-15);
  CurvatureParams p;
  p.l_f = 0.5;
  p.rho_p = 4.0;
  EXPECT_DOUBLE_EQ(make_step_config(p, 1.0, 0.5).beta, 0.25);
}

TEST(StepConfigTest, SmoothFreeUsesInfiniteAlpha) {
  CurvatureParams p;
  p.rho_p = 2.0;
  const auto cfg = make_step_config(p, 1.0, 0.99);
  EXPECT_TRUE(std::isinf(cfg.alpha));
  EXPECT_DOUBLE_EQ(cfg.beta, 0.5);
  EXPECT_DOUBLE_EQ(cfg.gamma, 0.5);
  EXPECT_THROW(make_step_config(CurvatureParams{}, 1.0, 0.99), ArgumentError);
}

TEST(StepConfigTest, TauTwoPicksInteriorPoint) {
  CurvatureParams p;
  p.l_f = 2.0;
  p.sigma_f = 1.5;
  p.l_h = 0.25;
  const auto b = compute_alpha_bar(p, 2.0);
  EXPECT_NEAR(make_step_config(p, 2.0, 1.0).alpha, 0.5 * (b.lower + b.upper), 1e-15);
  const double a = make_step_config(p, 2.0, 0.99).alpha;
  EXPECT_GT(a, b.lower);
  EXPECT_LT(a, b.upper);
}

TEST(StepConfigTest, RejectsBadSafety) {
  EXPECT_THROW(make_step_config(mc_params(), 1.0, 0.0), ArgumentError);
  EXPECT_THROW(make_step_config(mc_params(), 1.0, 1.5), ArgumentError);
  EXPECT_THROW(make_config(1.0, kInfinity, kInfinity), ArgumentError);
}

TEST(Certificate, CoefficientsAreNonnegativeInsideTheBound) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    auto p = random_params(rng);
    if (p.l_f + p.l_h == 0.0) continue;
    for (double tau : {0.5, 1.0, 1.5, 1.9}) {
      const auto cfg = make_step_config(p, tau, 0.99);
      const auto cert = decrease_certificate(p, cfg);
      EXPECT_GT(cert.x_coeff, 0.0);
      EXPECT_EQ(cert.y_coeff, 0.0);
    }
  }
}

TEST(Certificate, InfiniteBetaWithWeaklyConcaveP) {
  CurvatureParams p;
  p.l_f = 1.0;
  p.rho_p = 2.0;
  const auto cert = decrease_certificate(p, make_config(1.0, 0.4, kInfinity));
  EXPECT_DOUBLE_EQ(cert.y_coeff, -1.0);
}
