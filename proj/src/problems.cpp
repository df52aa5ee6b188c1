#include "foursplit/problems.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace foursplit {

struct LeastSquaresProx::Cache {
  std::mutex mu;
  std::map<double, std::shared_ptr<const SpdFactorization<double>>> factors;
};

LeastSquaresProx::LeastSquaresProx(Matrix gram, Vector atb)
    : gram_(std::move(gram)), atb_(std::move(atb)), cache_(std::make_shared<Cache>()) {
  if (gram_.rows() != gram_.cols() || gram_.rows() != atb_.size())
    throw ArgumentError("least-squares prox: shape mismatch");
}

Vector LeastSquaresProx::operator()(const Vector& z, double alpha) const {
  if (!(alpha > 0.0)) throw ArgumentError("least-squares prox: alpha must be positive");
  if (std::isinf(alpha)) throw ArgumentError("least-squares prox: alpha must be finite");
  std::shared_ptr<const SpdFactorization<double>> fac;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->factors.find(alpha);
    if (it == cache_->factors.end()) {
      Matrix s = alpha * gram_;
      s.diagonal().array() += 1.0;
      it = cache_->factors.emplace(alpha, std::make_shared<const SpdFactorization<double>>(s)).first;
    }
    fac = it->second;
  }
  return fac->solve(z + alpha * atb_);
}

std::size_t LeastSquaresProx::cached_factorizations() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->factors.size();
}

Vector prox_least_squares(const Vector& z, double alpha, const Matrix& a, const Vector& b) {
  if (a.rows() != b.size() || a.cols() != z.size()) throw ArgumentError("prox_least_squares: shape mismatch");
  Matrix s = alpha * (a.transpose() * a);
  s.diagonal().array() += 1.0;
  return solve_spd(s, z + alpha * (a.transpose() * b));
}

// ---------------------------------------------------------------------------

ProblemSpec build_matrix_completion_spec(const MatrixCompletionProblem& problem) {
  if (problem.lambda1 < 0.0 || problem.lambda2 < 0.0) throw ArgumentError("matrix completion: negative weight");
  if (!problem.m.allFinite()) throw ArgumentError("matrix completion: data has non-finite entries");
  const Index rows = problem.m.rows(), cols = problem.m.cols();
  for (const auto& [i, j] : problem.omega)
    if (i < 0 || j < 0 || i >= rows || j >= cols) throw ArgumentError("matrix completion: observed entry out of range");

  auto data = std::make_shared<const MatrixCompletionProblem>(problem);
  using CMap = Eigen::Map<const Matrix>;

  ProblemSpec spec;
  spec.name = "matrix-completion";
  spec.dimension = rows * cols;
  spec.params.l_f = problem.lambda1;
  spec.params.l_h = 1.0;
  const double l1 = problem.lambda1, l2 = problem.lambda2;

  spec.f_value = [l1](const Vector& x) { return 0.5 * l1 * x.cwiseMin(0.0).squaredNorm(); };
  spec.f_grad = [l1](const Vector& x) -> Vector { return l1 * x.cwiseMin(0.0); };
  spec.f_prox = [l1](const Vector& z, double alpha) -> Vector { return prox_nonneg_deviation(z, alpha * l1); };

  spec.g_value = [l2, rows, cols](const Vector& x) {
    return l2 * singular_values(CMap(x.data(), rows, cols)).sum();
  };
  spec.g_prox = [l2, rows, cols](const Vector& u, double gamma) {
    NuclearProx<double> r = prox_nuclear_with_norm(CMap(u.data(), rows, cols), gamma * l2);
    return GProxResult{Eigen::Map<const Vector>(r.point.data(), r.point.size()), l2 * r.nuclear_norm};
  };

  spec.h_value = [data, rows, cols](const Vector& x) {
    const CMap xm(x.data(), rows, cols);
    double s = 0.0;
    for (const auto& [i, j] : data->omega) {
      const double d = xm(i, j) - data->m(i, j);
      s += d * d;
    }
    return 0.5 * s;
  };
  spec.h_grad = [data, rows, cols](const Vector& x) -> Vector {
    const CMap xm(x.data(), rows, cols);
    Vector g = Vector::Zero(rows * cols);
    for (const auto& [i, j] : data->omega) g(j * rows + i) = xm(i, j) - data->m(i, j);
    return g;
  };
  spec.params.validate();
  return spec;
}

ProblemSpec build_kyfan_spec(const KyFanLeastSquaresProblem& problem) {
  const Index n = problem.a.cols();
  if (n < 1 || problem.a.rows() != problem.b.size()) throw ArgumentError("Ky Fan: shape mismatch");
  if (problem.lambda1 < 0.0 || problem.lambda2 < 0.0) throw ArgumentError("Ky Fan: negative weight");
  if (!problem.a.allFinite() || !problem.b.allFinite()) throw ArgumentError("Ky Fan: data has non-finite entries");
  const Index k = problem.k == 0 ? std::max<Index>(1, n / 10) : problem.k;
  if (k < 1 || k > n) throw ArgumentError("Ky Fan: k out of range");

  Matrix gram = problem.a.transpose() * problem.a;
  Vector atb = problem.a.transpose() * problem.b;
  const double half_bb = 0.5 * problem.b.squaredNorm();
  const EigenRange<double> range = symmetric_eigen_range(gram);
  auto prox = std::make_shared<const LeastSquaresProx>(gram, atb);

  ProblemSpec spec;
  spec.name = "kyfan";
  spec.dimension = n;
  spec.params.l_f = std::max(range.max, 0.0);
  spec.params.sigma_f = std::clamp(range.min, 0.0, spec.params.l_f);
  spec.params.l_h = problem.lambda1;
  spec.params.sigma_h = problem.lambda1;
  const double l1 = problem.lambda1, l2 = problem.lambda2;

  spec.f_value = [prox, half_bb](const Vector& x) {
    return 0.5 * x.dot(prox->gram() * x) - prox->atb().dot(x) + half_bb;
  };
  spec.f_grad = [prox](const Vector& x) -> Vector { return prox->gram() * x - prox->atb(); };
  spec.f_prox = [prox](const Vector& z, double alpha) { return (*prox)(z, alpha); };

  spec.g_value = [l2](const Vector& x) { return l2 * x.lpNorm<1>(); };
  spec.g_prox = [l2](const Vector& u, double gamma) {
    Vector p = prox_l1(u, gamma * l2);
    const double v = l2 * p.lpNorm<1>();
    return GProxResult{std::move(p), v};
  };

  spec.h_value = [l1](const Vector& x) { return 0.5 * l1 * x.squaredNorm(); };
  spec.h_grad = [l1](const Vector& x) -> Vector { return l1 * x; };

  spec.p_value = [l2, k](const Vector& x) { return -l2 * kyfan_norm(x, k); };
  spec.p_subgrad = [l2, k](const Vector& y) -> Vector { return subgrad_kyfan_negative(y, k, l2); };
  spec.params.validate();
  return spec;
}

// ---------------------------------------------------------------------------

SetOracle whole_space() {
  return {"whole-space", true, [](const Vector& x) { return x; }};
}

SetOracle box_set(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || (lower.array() > upper.array()).any())
    throw ArgumentError("box: bounds are inconsistent");
  return {"box", true, [lower = std::move(lower), upper = std::move(upper)](const Vector& x) -> Vector {
            if (x.size() != lower.size()) throw ArgumentError("box: dimension mismatch");
            return x.cwiseMax(lower).cwiseMin(upper);
          }};
}

SetOracle ball_set(Vector center, double radius) {
  if (!(radius >= 0.0)) throw ArgumentError("ball: negative radius");
  return {"ball", true, [center = std::move(center), radius](const Vector& x) -> Vector {
            if (x.size() != center.size()) throw ArgumentError("ball: dimension mismatch");
            const Vector d = x - center;
            const double n = d.norm();
            return n <= radius ? x : Vector(center + (radius / n) * d);
          }};
}

SetOracle sphere_set(Vector center, double radius) {
  if (!(radius >= 0.0)) throw ArgumentError("sphere: negative radius");
  if (center.size() < 1) throw ArgumentError("sphere: empty dimension");
  return {"sphere", false, [center = std::move(center), radius](const Vector& x) -> Vector {
            if (x.size() != center.size()) throw ArgumentError("sphere: dimension mismatch");
            const Vector d = x - center;
            const double n = d.norm();
            if (n == 0.0) {
              Vector p = center;
              p(0) += radius;
              return p;
            }
            return center + (radius / n) * d;
          }};
}

SetOracle box_union_set(std::vector<std::pair<Vector, Vector>> boxes) {
  if (boxes.empty()) throw ArgumentError("box union: no boxes");
  for (const auto& [lo, hi] : boxes)
    if (lo.size() != hi.size() || (lo.array() > hi.array()).any())
      throw ArgumentError("box union: bounds are inconsistent");
  return {"box-union", false, [boxes = std::move(boxes)](const Vector& x) -> Vector {
            Vector best;
            double best_d = kInfinity;
            for (const auto& [lo, hi] : boxes) {
              if (x.size() != lo.size()) throw ArgumentError("box union: dimension mismatch");
              Vector p = x.cwiseMax(lo).cwiseMin(hi);
              const double d = (x - p).squaredNorm();
              if (d < best_d) {
                best_d = d;
                best = std::move(p);
              }
            }
            return best;
          }};
}

ProblemSpec build_feasibility_spec(const FeasibilityProblem& problem) {
  if (problem.dimension < 1) throw ArgumentError("feasibility: empty dimension");
  if (!problem.a.project || !problem.b.project || !problem.c.project)
    throw ArgumentError("feasibility: missing projection oracle");
  if (!problem.a.convex || !problem.c.convex) throw ArgumentError("feasibility: A and C must be convex");
  auto data = std::make_shared<const FeasibilityProblem>(problem);

  ProblemSpec spec;
  spec.name = "feasibility";
  spec.dimension = problem.dimension;
  spec.params.l_f = 1.0;
  spec.params.l_h = 1.0;
  spec.params.rho_p = static_cast<double>(problem.d.size());

  spec.f_value = [data](const Vector& x) { return 0.5 * (x - data->a.project(x)).squaredNorm(); };
  spec.f_grad = [data](const Vector& x) -> Vector { return x - data->a.project(x); };
  spec.f_prox = [data](const Vector& z, double alpha) -> Vector {
    return (z + alpha * data->a.project(z)) / (1.0 + alpha);
  };

  spec.g_value = [data](const Vector& x) {
    return data->b.distance(x) <= 1e-9 * (1.0 + x.norm()) ? 0.0 : kInfinity;
  };
  spec.g_prox = [data](const Vector& u, double) { return GProxResult{data->b.project(u), 0.0}; };

  spec.h_value = [data](const Vector& x) { return 0.5 * (x - data->c.project(x)).squaredNorm(); };
  spec.h_grad = [data](const Vector& x) -> Vector { return x - data->c.project(x); };

  if (!problem.d.empty()) {
    spec.p_value = [data](const Vector& x) {
      double s = 0.0;
      for (const auto& set : data->d) s += 0.5 * (x - set.project(x)).squaredNorm();
      return s;
    };
    spec.p_subgrad = [data](const Vector& y) -> Vector {
      Vector xi = Vector::Zero(y.size());
      for (const auto& set : data->d) xi += y - set.project(y);
      return xi;
    };
  }
  spec.params.validate();
  return spec;
}

FeasibilityProblem feasibility_demo(Index n) {
  if (n < 1) throw ArgumentError("feasibility demo: empty dimension");
  FeasibilityProblem p;
  p.dimension = n;
  p.a = ball_set(Vector::Zero(n), 1.5);
  p.b = box_set(Vector::Constant(n, -0.5), Vector::Constant(n, 1.5));
  p.c = box_set(Vector::Zero(n), Vector::Ones(n));
  p.d.push_back(sphere_set(Vector::Zero(n), 1.0));
  return p;
}

}  // namespace foursplit
