#include "foursplit/stepsize.hpp"

#include <algorithm>
#include <cmath>

namespace foursplit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Largest real root of a x^2 + b x + c, computed without cancellation.
// Returns NaN when there is no real root.
double largest_root(double a, double b, double c) {
  if (a == 0.0) return b != 0.0 ? -c / b : kNaN;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return kNaN;
  const double sq = std::sqrt(disc);
  if (a > 0.0) return b >= 0.0 ? (sq > 0.0 || c != 0.0 ? -2.0 * c / (b + sq) : 0.0) : (-b + sq) / (2.0 * a);
  return b >= 0.0 ? (-b - sq) / (2.0 * a) : 2.0 * c / (-b + sq);
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("tau must be positive and finite");
}

}  // namespace

StepConfig make_config(double tau, double alpha, double beta) {
  check_tau(tau);
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ArgumentError("stepsizes must be positive");
  if (std::isinf(alpha) && std::isinf(beta)) throw ArgumentError("alpha and beta cannot both be infinite");
  StepConfig cfg{tau, alpha, beta, 0.0};
  if (std::isinf(beta))
    cfg.gamma = alpha;
  else if (std::isinf(alpha))
    cfg.gamma = beta;
  else
    cfg.gamma = 1.0 / (1.0 / alpha + 1.0 / beta);
  return cfg;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kTauUpTo1Case1: return "tau<=1-case1";
    case Regime::kTauUpTo1Case2: return "tau<=1-case2";
    case Regime::kTauBelow2Case1: return "tau in (1,2)-case1";
    case Regime::kTauBelow2Case2: return "tau in (1,2)-case2";
    case Regime::kTauAtLeast2Interval: return "tau>=2-interval";
    case Regime::kSmoothFree: return "smooth-free";
  }
  return "unknown";
}

double StepsizeBound::c(double alpha) const {
  const double lf = params.l_f, lh = params.l_h, rf = params.rho_f;
  const double s = lf + lh;
  const double t = tau;
  switch (regime) {
    case Regime::kSmoothFree:
      return 0.0;
    case Regime::kTauUpTo1Case1:
      return 2.0 * lf * s * alpha * alpha + ((2.0 - t) * lh - t * lf) * alpha - (2.0 - t);
    case Regime::kTauBelow2Case1:
      return 2.0 * lf * s * alpha * alpha + (t * lh - 2.0 * (t - 1.0) * params.sigma_h - t * lf) * alpha - (2.0 - t);
    case Regime::kTauUpTo1Case2:
    case Regime::kTauBelow2Case2: {
      const double eta = diag.eta_star;
      const double base = regime == Regime::kTauUpTo1Case2 ? (2.0 - t) * lh
                                                            : t * lh - 2.0 * (t - 1.0) * params.sigma_h;
      // rho_f (eta + rho_f) / eta with the rho_f = 0 limit taken exactly.
      const double extra = rf == 0.0 ? 0.0 : rf * t * (eta + rf) / eta;
      return 2.0 * lf * lh * alpha * alpha + (base + extra) * alpha - (2.0 - t);
    }
    case Regime::kTauAtLeast2Interval: {
      const double mu = 2.0 * alpha * s / t;
      const double lin = t * diag.nu - t * diag.theta1 - 2.0 * (t - 1.0) * diag.theta2;
      const double r = t * t * (diag.theta0 + diag.nu) * mu * mu - t * lin * mu + 2.0 * (t - 2.0);
      return 0.5 * r;
    }
  }
  return kNaN;
}

StepsizeBound compute_alpha_bar(const CurvatureParams& params, double tau) {
  check_tau(tau);
  params.validate();
  StepsizeBound out;
  out.params = params;
  out.tau = tau;
  const double lf = params.l_f, lh = params.l_h, rf = params.rho_f;
  const double s = lf + lh;
  if (s == 0.0) {
    out.regime = Regime::kSmoothFree;
    out.alpha_bar = kInfinity;
    out.lower = 0.0;
    out.upper = kInfinity;
    out.c_at_bar = 0.0;
    return out;
  }

  auto finish_case2 = [&](Regime regime, double lin) {
    const double qa = 2.0 * (2.0 - tau);
    const double qb = -tau * lin;
    const double qc = -tau * tau * (rf * rf + lf * lh);
    const double eta = largest_root(qa, qb, qc);
    if (!(eta > 0.0)) throw InfeasibleTau("no positive root for the case-2 quadratic at this tau");
    out.regime = regime;
    out.diag.eta_star = eta;
    out.alpha_bar = tau / (2.0 * eta);
  };

  if (tau <= 1.0) {
    out.diag.l_star = (2.0 - tau) * lf - 2.0 * rf;
    if (out.diag.l_star >= tau * lh) {
      out.regime = Regime::kTauUpTo1Case1;
      out.alpha_bar = 1.0 / s;
    } else {
      finish_case2(Regime::kTauUpTo1Case2, (2.0 - tau) * lh + rf * tau);
    }
  } else if (tau < 2.0) {
    const double b1 = tau * lh - 2.0 * (tau - 1.0) * params.sigma_h - tau * lf;
    const double alpha1 = largest_root(2.0 * lf * s, b1, -(2.0 - tau));
    out.diag.alpha1 = alpha1;
    if (alpha1 > 0.0 && tau <= 2.0 * alpha1 * (lf - rf)) {
      out.regime = Regime::kTauBelow2Case1;
      out.alpha_bar = alpha1;
    } else {
      finish_case2(Regime::kTauBelow2Case2, tau * lh - 2.0 * (tau - 1.0) * params.sigma_h + rf * tau);
    }
  } else {
    if (!(params.sigma_f > 0.0)) throw InfeasibleTau("tau >= 2 requires a strongly convex f");
    const double nu = params.sigma_f / s;
    const double theta0 = lh * (lf * lf - params.sigma_f * params.sigma_f) / (lf * s * s);
    const double theta1 = lh / s;
    const double theta2 = params.rho_h / s;
    const double lin = tau * nu - tau * theta1 - 2.0 * (tau - 1.0) * theta2;
    const double a = theta0 + nu;
    const double delta = lin * lin - 8.0 * a * (tau - 2.0);
    out.diag.nu = nu;
    out.diag.theta0 = theta0;
    out.diag.theta1 = theta1;
    out.diag.theta2 = theta2;
    out.diag.delta = delta;
    if (!(lin > 0.0)) throw InfeasibleTau("tau >= 2: linear coefficient condition fails");
    if (!(delta > 0.0)) throw InfeasibleTau("tau >= 2: discriminant condition fails");
    const double mu_upper = (lin + std::sqrt(delta)) / (2.0 * tau * a);
    // Product of the roots is 2(tau-2)/(tau^2 a); avoids cancellation near tau = 2.
    const double mu_lower = 2.0 * (tau - 2.0) / (tau * tau * a) / mu_upper;
    out.diag.mu_lower = mu_lower;
    out.diag.mu_upper = mu_upper;
    out.regime = Regime::kTauAtLeast2Interval;
    out.lower = std::max(0.0, tau * mu_lower / (2.0 * s));
    out.upper = std::min(1.0 / s, tau * mu_upper / (2.0 * s));
    if (!(out.lower < out.upper)) throw InfeasibleTau("tau >= 2: admissible stepsize interval is empty");
    out.alpha_bar = out.upper;
    out.c_at_bar = out.c(out.alpha_bar);
    return out;
  }
  out.lower = 0.0;
  out.upper = out.alpha_bar;
  out.c_at_bar = out.c(out.alpha_bar);
  return out;
}

double bian_zhang_alpha(const CurvatureParams& params) {
  params.validate();
  const double lf = params.l_f, lh = params.l_h, rf = params.rho_f;
  const double s = lf + lh;
  if (s == 0.0) throw ArgumentError("bian_zhang_alpha: needs l_f + l_h > 0");
  const double c3 = lf * lf * lh;
  const double c2 = 2.0 * (lf * lf + lh * lf + rf * lh);
  const double c1 = 5.0 * rf + 2.0 * lh + 4.0 * lf;
  auto d = [&](double a) { return ((c3 * a + c2) * a + c1) * a - 1.0; };
  auto dd = [&](double a) { return (3.0 * c3 * a + 2.0 * c2) * a + c1; };
  // d(0) = -1 and d(1/s) >= 1, and d is increasing on [0, inf).
  double lo = 0.0, hi = 1.0 / s;
  for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (d(mid) < 0.0 ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double step = d(a) / dd(a);
    double next = a - step;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    (d(next) < 0.0 ? lo : hi) = next;
    const double moved = std::abs(next - a);
    a = next;
    if (moved <= 1e-15 * (1.0 + a)) break;
  }
  return a;
}

StepConfig make_step_config(const CurvatureParams& params, double tau, double safety) {
  if (!(safety > 0.0) || safety > 1.0) throw ArgumentError("safety factor must lie in (0, 1]");
  const StepsizeBound bound = compute_alpha_bar(params, tau);
  const double beta = params.rho_p > 0.0 ? 1.0 / params.rho_p : kInfinity;
  if (bound.regime == Regime::kSmoothFree) {
    if (std::isinf(beta)) throw ArgumentError("smooth-free problem needs rho_p > 0 to fix a stepsize");
    return make_config(tau, kInfinity, beta);
  }
  double alpha;
  if (bound.regime == Regime::kTauAtLeast2Interval) {
    const double mid = 0.5 * (bound.lower + bound.upper);
    const double half = 0.5 * (bound.upper - bound.lower);
    alpha = mid + (safety - 1.0) * half;
  } else {
    alpha = safety * bound.alpha_bar;
  }
  return make_config(tau, alpha, beta);
}

DecreaseCertificate decrease_certificate(const CurvatureParams& params, const StepConfig& cfg) {
  DecreaseCertificate cert;
  cert.y_coeff = (std::isinf(cfg.beta) ? 0.0 : 1.0 / (2.0 * cfg.beta)) - 0.5 * params.rho_p;
  if (std::isinf(cfg.alpha) || params.l_f + params.l_h == 0.0) return cert;
  const StepsizeBound bound = compute_alpha_bar(params, cfg.tau);
  double a = cfg.alpha;
  // Case-1 polynomials certify the descent only above tau / (2 (l_f - rho_f));
  // below it the value at that point is used, which is weaker since c(a)/a increases.
  if ((bound.regime == Regime::kTauUpTo1Case1 || bound.regime == Regime::kTauBelow2Case1) &&
      a <= bound.alpha_bar)
    a = std::max(a, cfg.tau / (2.0 * (params.l_f - params.rho_f)));
  cert.x_coeff = -bound.c(a) / (2.0 * cfg.tau * a);
  return cert;
}

}  // namespace foursplit
