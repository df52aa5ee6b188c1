#pragma once

#include <limits>
#include <string>

#include "foursplit/oracles.hpp"

namespace foursplit {

/// (tau, alpha, beta, gamma) with 1/gamma = 1/alpha + 1/beta; alpha or beta
/// (not both) may be infinite.
struct StepConfig {
  double tau = 1.0;
  double alpha = kInfinity;
  double beta = kInfinity;
  double gamma = 0.0;
};

/// Builds a config from tau, alpha and beta. When one stepsize is infinite
/// gamma is set to the other one exactly.
StepConfig make_config(double tau, double alpha, double beta);

enum class Regime {
  kTauUpTo1Case1,
  kTauUpTo1Case2,
  kTauBelow2Case1,
  kTauBelow2Case2,
  kTauAtLeast2Interval,
  kSmoothFree,
};

std::string to_string(Regime regime);

/// Intermediate quantities of the bound computation. Entries that do not
/// apply to the chosen regime are NaN.
struct StepsizeDiagnostics {
  double eta_star = std::numeric_limits<double>::quiet_NaN();
  double l_star = std::numeric_limits<double>::quiet_NaN();
  double alpha1 = std::numeric_limits<double>::quiet_NaN();
  double nu = std::numeric_limits<double>::quiet_NaN();
  double theta0 = std::numeric_limits<double>::quiet_NaN();
  double theta1 = std::numeric_limits<double>::quiet_NaN();
  double theta2 = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double mu_lower = std::numeric_limits<double>::quiet_NaN();
  double mu_upper = std::numeric_limits<double>::quiet_NaN();
};

/// Largest certified alpha for a given tau (for tau >= 2 an admissible
/// interval instead). `c(alpha)` is the descent polynomial of the branch: the
/// merit decreases by at least -c(alpha)/(2 tau alpha) |dx|^2 per iteration.
struct StepsizeBound {
  double alpha_bar = kInfinity;
  Regime regime = Regime::kSmoothFree;
  double lower = 0.0;
  double upper = kInfinity;
  double c_at_bar = std::numeric_limits<double>::quiet_NaN();
  StepsizeDiagnostics diag;
  CurvatureParams params;
  double tau = 1.0;

  double c(double alpha) const;
};

StepsizeBound compute_alpha_bar(const CurvatureParams& params, double tau);

/// Unique positive root of
///   d(a) = l_f^2 l_h a^3 + 2(l_f^2 + l_h l_f + rho_f l_h) a^2
///          + (5 rho_f + 2 l_h + 4 l_f) a - 1,
/// the earlier DYS stepsize bound used for comparison.
double bian_zhang_alpha(const CurvatureParams& params);

/// alpha = safety * alpha_bar (tau < 2) or a point inside the tau >= 2
/// interval, beta = 1/rho_p (infinite when rho_p = 0).
StepConfig make_step_config(const CurvatureParams& params, double tau, double safety = 0.99);

/// Coefficients of the per-iteration sufficient decrease
///   V_{k-1} - V_k >= x_coeff |x^k - x^{k-1}|^2 + y_coeff |y^k - y^{k-1}|^2.
struct DecreaseCertificate {
  double x_coeff = 0.0;
  double y_coeff = 0.0;
};

DecreaseCertificate decrease_certificate(const CurvatureParams& params, const StepConfig& cfg);

}  // namespace foursplit
