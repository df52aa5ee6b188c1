#include "foursplit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace foursplit {

namespace {

// Same oracles, same order: the y-step input shared by split_step and the
// stationarity measure.
Vector y_step_input(const ProblemSpec& spec, const StepConfig& cfg, const Vector& x, const Vector& z,
                    const Vector& y, const Vector& xi) {
  Vector u;
  if (std::isinf(cfg.alpha)) {
    u = -cfg.gamma * (spec.grad_f(y) + spec.grad_h(y));
  } else {
    const double ratio = cfg.gamma / cfg.alpha;
    Vector w = 2.0 * x - z;
    if (spec.has_h()) w -= cfg.alpha * spec.grad_h(x);
    u = ratio * w;
  }
  if (!std::isinf(cfg.beta)) u += (cfg.gamma / cfg.beta) * y;
  if (spec.has_p()) u -= cfg.gamma * xi;
  return u;
}

double sq(double v) { return v * v; }

}  // namespace

SolverState initial_state(const ProblemSpec& spec, const StepConfig& cfg) {
  return initial_state(spec, cfg, spec.start());
}

SolverState initial_state(const ProblemSpec& spec, const StepConfig& cfg, const Vector& y0) {
  if (y0.size() != spec.dimension) throw ArgumentError("initial point has the wrong dimension");
  SolverState s;
  s.y = y0;
  s.x = y0;
  s.z = (std::isinf(cfg.alpha) || !spec.has_f()) ? Vector(y0) : Vector(y0 + cfg.alpha * spec.grad_f(y0));
  s.xi = spec.subgrad_p(y0);
  s.g_at_y = spec.eval_g(y0);
  s.k = 0;
  return s;
}

SolverState split_step(const ProblemSpec& spec, const StepConfig& cfg, const SolverState& state) {
  SolverState next;
  next.k = state.k + 1;
  try {
    if (std::isinf(cfg.alpha)) {
      next.x = state.x;
      next.z = state.z;
    } else {
      next.x = spec.prox_f(state.z, cfg.alpha);
    }
    const Vector u = y_step_input(spec, cfg, next.x, state.z, state.y, state.xi);
    GProxResult g = spec.prox_g(u, cfg.gamma);
    next.y = std::move(g.point);
    next.g_at_y = g.value;
    if (!std::isinf(cfg.alpha)) next.z = state.z + cfg.tau * (next.y - next.x);
    next.xi = spec.subgrad_p(next.y);
  } catch (const OracleFailure& e) {
    throw OracleFailure(e.component(), e.what(), state.k);
  }
  return next;
}

double merit_value(const ProblemSpec& spec, const StepConfig& cfg, const SolverState& before,
                   const SolverState& after) {
  if (std::isinf(after.g_at_y)) return kInfinity;
  const Vector& yp = after.y;
  double smooth;
  if (std::isinf(cfg.alpha)) {
    smooth = spec.eval_f(yp) + spec.eval_h(yp);
  } else {
    const Vector& x = after.x;
    const Vector d = yp - x;
    smooth = spec.eval_f(x) + spec.eval_h(x) + (spec.grad_f(x) + spec.grad_h(x)).dot(d) +
             d.squaredNorm() / (2.0 * cfg.alpha);
  }
  double concave = 0.0;
  if (spec.has_p() || spec.p_value) {
    const Vector d = yp - before.y;
    concave = spec.eval_p(before.y) + before.xi.dot(d);
    if (!std::isinf(cfg.beta)) concave += d.squaredNorm() / (2.0 * cfg.beta);
  } else if (!std::isinf(cfg.beta)) {
    concave = (yp - before.y).squaredNorm() / (2.0 * cfg.beta);
  }
  return smooth + concave + after.g_at_y;
}

double residual(const StepConfig& cfg, const SolverState& before, const SolverState& after) {
  const double a = (before.y - after.y).squaredNorm();
  if (std::isinf(cfg.alpha)) return std::sqrt(a);
  return std::sqrt(a + sq(cfg.tau) * (after.y - after.x).squaredNorm());
}

double residual(const ProblemSpec& spec, const StepConfig& cfg, const Vector& y, const Vector& z) {
  SolverState s;
  s.y = y;
  s.z = z;
  s.x = y;
  s.xi = spec.subgrad_p(y);
  return residual(cfg, s, split_step(spec, cfg, s));
}

double stationarity_measure(const ProblemSpec& spec, const StepConfig& reference, const Vector& y) {
  return stationarity_measure(spec, reference, y, spec.subgrad_p(y));
}

double stationarity_measure(const ProblemSpec& spec, const StepConfig& ref, const Vector& y,
                            const Vector& xi) {
  Vector u;
  if (std::isinf(ref.alpha)) {
    u = y_step_input(spec, ref, y, y, y, xi);
  } else {
    Vector w = y;
    if (spec.has_f()) w -= ref.alpha * spec.grad_f(y);
    if (spec.has_h()) w -= ref.alpha * spec.grad_h(y);
    u = (ref.gamma / ref.alpha) * w;
    if (!std::isinf(ref.beta)) u += (ref.gamma / ref.beta) * y;
    if (spec.has_p()) u -= ref.gamma * xi;
  }
  return (y - spec.prox_g(u, ref.gamma).point).norm();
}

double sufficient_decrease_gap(const IterationRecord& prev, const IterationRecord& cur,
                               const DecreaseCertificate& cert) {
  return (prev.merit - cur.merit) -
         (cert.x_coeff * sq(cur.dx_norm) + cert.y_coeff * sq(prev.dy_norm));
}

StoppingCriterion make_stopping(const CurvatureParams& params, double eps, long max_iter, double safety) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
  if (max_iter < 0) throw ArgumentError("max_iter must be nonnegative");
  StoppingCriterion stop;
  stop.eps = eps;
  stop.max_iter = max_iter;
  stop.reference = make_step_config(params, 1.0, safety);
  return stop;
}

RunReport run(const ProblemSpec& spec, const StepConfig& cfg, const StoppingCriterion& stop,
              const RunOptions& options) {
  return run(spec, cfg, stop, initial_state(spec, cfg), options);
}

RunReport run(const ProblemSpec& spec, const StepConfig& cfg, const StoppingCriterion& stop,
              SolverState state, const RunOptions& options) {
  if (!(stop.eps > 0.0)) throw ArgumentError("eps must be positive");
  if (stop.stride < 1) throw ArgumentError("stride must be at least 1");
  using Clock = std::chrono::steady_clock;

  RunReport report;
  const CurvatureParams& prm = spec.params;
  const double s = prm.l_f + prm.l_h;
  DecreaseCertificate cert;
  if (options.monitor) {
    const bool beta_ok = prm.rho_p == 0.0 || cfg.beta <= 1.0 / prm.rho_p;
    try {
      const StepsizeBound bound = compute_alpha_bar(prm, cfg.tau);
      const bool alpha_ok = bound.regime == Regime::kSmoothFree ||
                            (cfg.alpha <= bound.upper && cfg.alpha >= bound.lower);
      report.certificate_applies = beta_ok && alpha_ok;
    } catch (const InfeasibleTau&) {
      report.certificate_applies = false;
    }
    if (report.certificate_applies) cert = decrease_certificate(prm, cfg);
  }

  IterationRecord prev;
  bool have_prev = false;
  const auto t0 = Clock::now();
  long it = 0;
  try {
    for (;; ++it) {
      double measure = std::numeric_limits<double>::quiet_NaN();
      const bool check = it % stop.stride == 0 || it == stop.max_iter;
      if (check) {
        measure = stop.measure_spec ? stationarity_measure(*stop.measure_spec, stop.reference, state.y)
                                    : stationarity_measure(spec, stop.reference, state.y, state.xi);
        if (measure <= stop.eps) {
          report.reason = Termination::kConverged;
          report.final_measure = measure;
          break;
        }
      }
      if (it == stop.max_iter) {
        report.reason = Termination::kIterationCap;
        report.final_measure = measure;
        break;
      }

      SolverState next = split_step(spec, cfg, state);
      IterationRecord rec;
      rec.k = it;
      rec.measure = measure;
      rec.residual = residual(cfg, state, next);
      rec.dx_norm = (next.x - state.x).norm();
      rec.dy_norm = (next.y - state.y).norm();
      if (options.monitor) {
        rec.merit = merit_value(spec, cfg, state, next);
        rec.objective = spec.eval_f(next.y) + next.g_at_y + spec.eval_h(next.y) + spec.eval_p(next.y);
        if (!std::isinf(cfg.alpha) && s > 0.0) {
          rec.lower_bound_gap = rec.merit - rec.objective -
                                (1.0 - cfg.alpha * s) / (2.0 * cfg.alpha) * (next.y - next.x).squaredNorm();
          if (rec.lower_bound_gap < -options.decrease_tol * (1.0 + std::abs(rec.merit)))
            ++report.lower_bound_violations;
        }
        if (have_prev && report.certificate_applies) {
          const double scale = 1.0 + std::abs(prev.merit);
          const double excess = (rec.merit - prev.merit) / scale;
          report.worst_monotone_excess = std::max(report.worst_monotone_excess, excess);
          if (excess > options.monotone_tol) ++report.monotone_violations;
          const double gap = sufficient_decrease_gap(prev, rec, cert) / scale;
          report.worst_decrease_gap = std::min(report.worst_decrease_gap, gap);
          if (gap < -options.decrease_tol) ++report.decrease_violations;
        }
      }
      rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      state = std::move(next);
      if (options.on_step) options.on_step(rec, state);
      if (options.keep_trace) report.trace.push_back(rec);
      prev = rec;
      have_prev = true;
      report.iterations = it + 1;
    }
  } catch (const OracleFailure& e) {
    if (e.iteration() >= 0) throw;
    throw OracleFailure(e.component(), e.what(), it);
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  report.final_state = std::move(state);
  return report;
}

double complexity_product(const std::vector<IterationRecord>& trace, std::size_t t) {
  if (t == 0 || t > trace.size()) throw ArgumentError("complexity_product: T out of range");
  double best = kInfinity;
  for (std::size_t i = 0; i < t; ++i) best = std::min(best, trace[i].residual);
  return static_cast<double>(t) * best * best;
}

}  // namespace foursplit
