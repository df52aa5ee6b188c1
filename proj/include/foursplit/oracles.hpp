#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "foursplit/errors.hpp"
#include "foursplit/numerics.hpp"

namespace foursplit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Curvature constants of the four terms.
///
///   l_f, l_h   Lipschitz constants of grad f and grad h
///   rho_f      f + rho_f/2 |.|^2 is convex
///   rho_h      h + rho_h/2 |.|^2 is convex
///   rho_p      rho_p/2 |.|^2 - p is convex
///   sigma_f    f - sigma_f/2 |.|^2 is convex (0 when f is not strongly convex)
///   sigma_h    h - sigma_h/2 |.|^2 is convex (-l_h is always admissible)
struct CurvatureParams {
  double l_f = 0.0;
  double l_h = 0.0;
  double rho_f = 0.0;
  double rho_h = 0.0;
  double rho_p = 0.0;
  double sigma_f = 0.0;
  double sigma_h = 0.0;

  /// Throws ArgumentError when a constant is negative, non-finite or
  /// inconsistent with the others.
  void validate() const;
};

/// Output of the proximal map of g together with g at that point, so the
/// solver never re-evaluates an expensive g (e.g. a nuclear norm).
struct GProxResult {
  Vector point;
  double value = 0.0;
};

/// The four-term problem min f + g + h + p over R^n.
///
/// Any term whose oracles are left empty is treated as identically zero.
/// The p selector must be deterministic: equal inputs give equal outputs.
struct ProblemSpec {
  std::string name;
  Index dimension = 0;
  CurvatureParams params;

  std::function<double(const Vector&)> f_value;
  std::function<Vector(const Vector&)> f_grad;
  std::function<Vector(const Vector&, double)> f_prox;

  std::function<double(const Vector&)> g_value;
  std::function<GProxResult(const Vector&, double)> g_prox;

  std::function<double(const Vector&)> h_value;
  std::function<Vector(const Vector&)> h_grad;

  std::function<double(const Vector&)> p_value;
  std::function<Vector(const Vector&)> p_subgrad;

  /// Starting y; empty means the origin.
  Vector initial_point;

  bool has_f() const { return static_cast<bool>(f_grad); }
  bool has_g() const { return static_cast<bool>(g_prox); }
  bool has_h() const { return static_cast<bool>(h_grad); }
  bool has_p() const { return static_cast<bool>(p_subgrad); }

  double eval_f(const Vector& x) const;
  double eval_g(const Vector& x) const;
  double eval_h(const Vector& x) const;
  double eval_p(const Vector& x) const;

  Vector grad_f(const Vector& x) const;
  Vector grad_h(const Vector& x) const;
  Vector subgrad_p(const Vector& y) const;

  /// prox of alpha*f; the identity when alpha is infinite or f is absent.
  Vector prox_f(const Vector& z, double alpha) const;
  /// prox of gamma*g with g evaluated at the result.
  GProxResult prox_g(const Vector& u, double gamma) const;

  Vector start() const;
};

struct ObjectiveValue {
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double p = 0.0;
  double total = 0.0;
};

/// Psi(x) and its components. An infinite g is reported as an infinite total;
/// NaN from any term throws OracleFailure naming the term.
ObjectiveValue evaluate_objective(const ProblemSpec& spec, const Vector& x);

struct AuditReport {
  double f_grad_deviation = 0.0;
  double h_grad_deviation = 0.0;
  double f_prox_residual = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

class AuditFailure : public Error {
 public:
  explicit AuditFailure(AuditReport report);
  const AuditReport& report() const { return report_; }

 private:
  AuditReport report_;
};

/// Checks the f and h gradient oracles against central finite differences
/// (step 1e-6 * (1 + |x|)) and the prox of f against z = x + alpha grad f(x)
/// at random points. Small problems are differenced coordinate by coordinate;
/// large ones along random unit directions. Deviations are relative,
/// |fd - analytic| / (1 + |analytic|). Throws AuditFailure when any deviation
/// exceeds `tolerance`.
AuditReport audit_oracles(const ProblemSpec& spec, int samples, std::uint64_t seed,
                          double tolerance = 1e-4);

}  // namespace foursplit
