#include "foursplit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace foursplit {

namespace {

void require_finite_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw ArgumentError(std::string("curvature: ") + name + " must be finite and nonnegative");
}

double checked(double v, const char* component) {
  if (std::isnan(v)) throw OracleFailure(component, std::string("oracle ") + component + " returned NaN");
  return v;
}

Vector checked(Vector v, const char* component) {
  if (!v.allFinite())
    throw OracleFailure(component, std::string("oracle ") + component + " returned a non-finite vector");
  return v;
}

}  // namespace

void CurvatureParams::validate() const {
  require_finite_nonneg(l_f, "l_f");
  require_finite_nonneg(l_h, "l_h");
  require_finite_nonneg(rho_f, "rho_f");
  require_finite_nonneg(rho_h, "rho_h");
  require_finite_nonneg(rho_p, "rho_p");
  if (!std::isfinite(sigma_f) || !std::isfinite(sigma_h))
    throw ArgumentError("curvature: sigma_f and sigma_h must be finite");
  // Small slack absorbs rounding in derived constants (e.g. eigenvalues).
  const double tol = 1e-12 * (1.0 + l_f + l_h);
  if (rho_f > l_f + tol) throw ArgumentError("curvature: rho_f exceeds l_f");
  if (rho_h > l_h + tol) throw ArgumentError("curvature: rho_h exceeds l_h");
  if (sigma_h > l_h + tol || sigma_h < -l_h - tol) throw ArgumentError("curvature: sigma_h outside [-l_h, l_h]");
  if (sigma_f > l_f + tol) throw ArgumentError("curvature: sigma_f exceeds l_f");
}

double ProblemSpec::eval_f(const Vector& x) const { return f_value ? checked(f_value(x), "f") : 0.0; }
double ProblemSpec::eval_g(const Vector& x) const { return g_value ? checked(g_value(x), "g") : 0.0; }
double ProblemSpec::eval_h(const Vector& x) const { return h_value ? checked(h_value(x), "h") : 0.0; }
double ProblemSpec::eval_p(const Vector& x) const { return p_value ? checked(p_value(x), "p") : 0.0; }

Vector ProblemSpec::grad_f(const Vector& x) const {
  return f_grad ? checked(f_grad(x), "f") : Vector::Zero(x.size());
}

Vector ProblemSpec::grad_h(const Vector& x) const {
  return h_grad ? checked(h_grad(x), "h") : Vector::Zero(x.size());
}

Vector ProblemSpec::subgrad_p(const Vector& y) const {
  return p_subgrad ? checked(p_subgrad(y), "p") : Vector::Zero(y.size());
}

Vector ProblemSpec::prox_f(const Vector& z, double alpha) const {
  if (!f_prox || std::isinf(alpha)) return z;
  return checked(f_prox(z, alpha), "f");
}

GProxResult ProblemSpec::prox_g(const Vector& u, double gamma) const {
  if (!g_prox) return {u, 0.0};
  GProxResult r = g_prox(u, gamma);
  checked(r.point, "g");
  checked(r.value, "g");
  return r;
}

Vector ProblemSpec::start() const {
  if (initial_point.size() == 0) return Vector::Zero(dimension);
  if (initial_point.size() != dimension) throw ArgumentError("initial point has the wrong dimension");
  return initial_point;
}

ObjectiveValue evaluate_objective(const ProblemSpec& spec, const Vector& x) {
  ObjectiveValue v;
  v.f = spec.eval_f(x);
  v.g = spec.eval_g(x);
  v.h = spec.eval_h(x);
  v.p = spec.eval_p(x);
  v.total = v.f + v.g + v.h + v.p;
  return v;
}

AuditFailure::AuditFailure(AuditReport report)
    : Error([&report] {
        std::ostringstream os;
        os << "oracle audit failed:";
        for (const auto& f : report.failures) os << ' ' << f << ';';
        return os.str();
      }()),
      report_(std::move(report)) {}

namespace {

Vector gaussian_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

// Largest relative deviation of `grad` from central differences of `value`.
double gradient_deviation(const std::function<double(const Vector&)>& value,
                          const std::function<Vector(const Vector&)>& grad, const Vector& x,
                          std::mt19937_64& rng) {
  const Index n = x.size();
  const double step = 1e-6 * (1.0 + x.norm());
  const Vector g = grad(x);
  constexpr Index kCoordinateLimit = 200;
  constexpr int kDirections = 8;
  double worst = 0.0;
  if (n <= kCoordinateLimit) {
    Vector xp = x, xm = x;
    for (Index i = 0; i < n; ++i) {
      xp(i) = x(i) + step;
      xm(i) = x(i) - step;
      const double fd = (value(xp) - value(xm)) / (2.0 * step);
      xp(i) = x(i);
      xm(i) = x(i);
      worst = std::max(worst, std::abs(fd - g(i)) / (1.0 + std::abs(g(i))));
    }
  } else {
    for (int d = 0; d < kDirections; ++d) {
      Vector dir = gaussian_vector(rng, n);
      dir /= dir.norm();
      const double fd = (value(x + step * dir) - value(x - step * dir)) / (2.0 * step);
      const double an = g.dot(dir);
      worst = std::max(worst, std::abs(fd - an) / (1.0 + std::abs(an)));
    }
  }
  return worst;
}

}  // namespace

AuditReport audit_oracles(const ProblemSpec& spec, int samples, std::uint64_t seed, double tolerance) {
  if (spec.dimension < 1) throw ArgumentError("audit_oracles: empty problem");
  if (samples < 1) throw ArgumentError("audit_oracles: need at least one sample");
  std::mt19937_64 rng(seed);
  AuditReport report;
  const bool audit_f = spec.f_value && spec.f_grad;
  const bool audit_h = spec.h_value && spec.h_grad;
  for (int s = 0; s < samples; ++s) {
    const Vector x = gaussian_vector(rng, spec.dimension);
    if (audit_f)
      report.f_grad_deviation =
          std::max(report.f_grad_deviation, gradient_deviation(spec.f_value, spec.f_grad, x, rng));
    if (audit_h)
      report.h_grad_deviation =
          std::max(report.h_grad_deviation, gradient_deviation(spec.h_value, spec.h_grad, x, rng));
    if (spec.f_prox && spec.f_grad) {
      for (double alpha : {0.1, 1.0}) {
        const Vector p = spec.f_prox(x, alpha);
        const double r = (x - p - alpha * spec.f_grad(p)).norm() / (1.0 + x.norm());
        report.f_prox_residual = std::max(report.f_prox_residual, r);
      }
    }
  }
  if (report.f_grad_deviation > tolerance) report.failures.push_back("f gradient");
  if (report.h_grad_deviation > tolerance) report.failures.push_back("h gradient");
  if (report.f_prox_residual > tolerance) report.failures.push_back("f prox");
  if (!report.passed()) throw AuditFailure(report);
  return report;
}

}  // namespace foursplit
