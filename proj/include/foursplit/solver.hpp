#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "foursplit/oracles.hpp"
#include "foursplit/stepsize.hpp"

namespace foursplit {

/// Iterate of the splitting scheme. `y` and `z` drive the next step; `x` is
/// the x-output of the step that produced them (the initial state uses x = y).
/// `xi` is the selected subgradient of p at y and `g_at_y` caches g(y).
struct SolverState {
  Vector x;
  Vector y;
  Vector z;
  Vector xi;
  double g_at_y = 0.0;
  long k = 0;
};

/// y0 = the problem's start point (origin by default), z0 = y0 + alpha grad f(y0).
SolverState initial_state(const ProblemSpec& spec, const StepConfig& cfg);
SolverState initial_state(const ProblemSpec& spec, const StepConfig& cfg, const Vector& y0);

/// One iteration:
///   x+ = prox_{alpha f}(z)
///   y+ = prox_{gamma g}((gamma/alpha)(2x+ - z - alpha grad h(x+)) + (gamma/beta) y - gamma xi)
///   z+ = z + tau (y+ - x+)
///   xi+ = selector(y+)
/// With alpha infinite, x and z are carried and the y-step linearizes f + h at y.
SolverState split_step(const ProblemSpec& spec, const StepConfig& cfg, const SolverState& state);

/// Merit of the step before -> after, i.e. the model value at after.y built
/// from before.y, before.xi and after.x. Infinite when after.y is outside dom g.
double merit_value(const ProblemSpec& spec, const StepConfig& cfg, const SolverState& before,
                   const SolverState& after);

/// sqrt(|y - y+|^2 + tau^2 |y+ - x|^2) for the step (y, z) -> (x, y+).
/// With alpha infinite the second term is absent.
double residual(const StepConfig& cfg, const SolverState& before, const SolverState& after);
double residual(const ProblemSpec& spec, const StepConfig& cfg, const Vector& y, const Vector& z);

/// Distance from y to its reference prox-gradient image. `xi` may be passed
/// when the selector output at y is already known.
double stationarity_measure(const ProblemSpec& spec, const StepConfig& reference, const Vector& y);
double stationarity_measure(const ProblemSpec& spec, const StepConfig& reference, const Vector& y,
                            const Vector& xi);

/// One record per step k, taking (y^k, z^k) to (x^k, y^{k+1}, z^{k+1}).
struct IterationRecord {
  long k = 0;
  double merit = 0.0;                  // V_k
  double objective = 0.0;              // objective at y^{k+1}
  double residual = 0.0;               // R(y^k, z^k)
  double measure = std::numeric_limits<double>::quiet_NaN();  // at y^k; NaN when skipped
  double dx_norm = 0.0;                // |x^k - x^{k-1}|
  double dy_norm = 0.0;                // |y^{k+1} - y^k|
  double lower_bound_gap = 0.0;        // V_k - objective - (1 - alpha S)/(2 alpha) |y^{k+1} - x^k|^2
  double seconds = 0.0;                // elapsed loop time
};

/// (V_{k-1} - V_k) - [x_coeff dx_k^2 + y_coeff dy_{k-1}^2]. Nonnegative when
/// the certified decrease holds.
double sufficient_decrease_gap(const IterationRecord& prev, const IterationRecord& cur,
                               const DecreaseCertificate& cert);

struct StoppingCriterion {
  double eps = 1e-6;
  long max_iter = 30000;
  StepConfig reference;
  long stride = 1;
  /// Problem the measure is evaluated on when it differs from the one being
  /// iterated (rewired presets). Null means the iterated problem.
  const ProblemSpec* measure_spec = nullptr;
};

/// Stopping rule whose reference config is built at tau = 1.
StoppingCriterion make_stopping(const CurvatureParams& params, double eps, long max_iter,
                                double safety = 0.99);

enum class Termination { kConverged, kIterationCap };

struct RunOptions {
  bool monitor = true;      // merit, objective and certificate checks
  bool keep_trace = true;
  /// Relative slack for merit monotonicity and the decrease certificate.
  double monotone_tol = 1e-10;
  double decrease_tol = 1e-8;
  std::function<void(const IterationRecord&, const SolverState&)> on_step;
};

struct RunReport {
  std::vector<IterationRecord> trace;
  SolverState final_state;
  Termination reason = Termination::kIterationCap;
  long iterations = 0;
  double final_measure = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  long monotone_violations = 0;
  long decrease_violations = 0;
  long lower_bound_violations = 0;
  double worst_decrease_gap = kInfinity;  // min over k of the relative decrease gap
  double worst_monotone_excess = -kInfinity;  // max over k of (V_k - V_{k-1}) / (1 + |V_{k-1}|)
  bool certificate_applies = false;
};

RunReport run(const ProblemSpec& spec, const StepConfig& cfg, const StoppingCriterion& stop,
              const RunOptions& options = {});
RunReport run(const ProblemSpec& spec, const StepConfig& cfg, const StoppingCriterion& stop,
              SolverState start, const RunOptions& options = {});

/// T * min_{k < T} R(y^k, z^k)^2 over the first T records.
double complexity_product(const std::vector<IterationRecord>& trace, std::size_t t);

}  // namespace foursplit
