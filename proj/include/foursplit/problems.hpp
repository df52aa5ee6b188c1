#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "foursplit/oracles.hpp"

namespace foursplit {

// ---------------------------------------------------------------------------
// Proximal and subgradient kernels

/// Entrywise soft threshold sign(v) max(|v| - t, 0).
template <typename Derived>
typename Derived::PlainObject prox_l1(const Eigen::MatrixBase<Derived>& v,
                                              typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  if (t < Scalar(0)) throw ArgumentError("prox_l1: negative threshold");
  return v.unaryExpr([t](Scalar a) {
    const Scalar m = std::abs(a) - t;
    return m > Scalar(0) ? (a > Scalar(0) ? m : -m) : Scalar(0);
  });
}

/// prox of a * (lambda/2) |min(., 0)|^2 with `scale` = a * lambda: negative
/// entries shrink by 1/(1 + scale), nonnegative entries pass through.
template <typename Derived>
typename Derived::PlainObject prox_nonneg_deviation(const Eigen::MatrixBase<Derived>& z,
                                                            typename Derived::Scalar scale) {
  using Scalar = typename Derived::Scalar;
  if (scale < Scalar(0)) throw ArgumentError("prox_nonneg_deviation: negative scale");
  const Scalar shrink = Scalar(1) / (Scalar(1) + scale);
  return z.unaryExpr([shrink](Scalar a) { return a >= Scalar(0) ? a : a * shrink; });
}

template <typename Scalar>
struct NuclearProx {
  DenseMatrix<Scalar> point;
  Scalar nuclear_norm = 0;  // nuclear norm of `point`
};

/// Singular value soft thresholding with the nuclear norm of the result.
///
/// Uses the eigendecomposition of the smaller Gram matrix when the threshold
/// is not tiny relative to the largest singular value; the Gram route loses
/// accuracy on singular values far below sigma_max, which only matter when
/// they survive the threshold. Falls back to a full SVD otherwise.
template <typename Derived>
NuclearProx<typename Derived::Scalar> prox_nuclear_with_norm(const Eigen::MatrixBase<Derived>& zin,
                                                             typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  using Mat = DenseMatrix<Scalar>;
  if (t < Scalar(0)) throw ArgumentError("prox_nuclear: negative threshold");
  if (!zin.allFinite()) throw ArgumentError("prox_nuclear: input has non-finite entries");
  const Mat z = zin;
  NuclearProx<Scalar> out;
  if (z.size() == 0) {
    out.point = z;
    return out;
  }
  const bool tall = z.rows() >= z.cols();
  const Mat gram = tall ? Mat(z.transpose() * z) : Mat(z * z.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(gram);
  if (es.info() != Eigen::Success) throw NumericalFailure("prox_nuclear: eigensolver did not converge");
  const Scalar smax = std::sqrt(std::max(es.eigenvalues()(gram.rows() - 1), Scalar(0)));
  if (smax <= t) {
    out.point = Mat::Zero(z.rows(), z.cols());
    return out;
  }
  if (t >= Scalar(1e-4) * smax) {
    // Keep the eigenpairs whose singular value exceeds t (eigenvalues ascend).
    Index first = gram.rows();
    while (first > 0 && std::sqrt(std::max(es.eigenvalues()(first - 1), Scalar(0))) > t) --first;
    const Index keep = gram.rows() - first;
    const Mat basis = es.eigenvectors().rightCols(keep);
    DenseVector<Scalar> factor(keep);
    for (Index i = 0; i < keep; ++i) {
      const Scalar s = std::sqrt(es.eigenvalues()(first + i));
      factor(i) = (s - t) / s;
      out.nuclear_norm += s - t;
    }
    if (tall)
      out.point = (z * basis) * factor.asDiagonal() * basis.transpose();
    else
      out.point = basis * factor.asDiagonal() * (basis.transpose() * z);
    return out;
  }
  SvdFactors<Scalar> f = svd(z);
  DenseVector<Scalar> shrunk = (f.S.array() - t).max(Scalar(0)).matrix();
  out.nuclear_norm = shrunk.sum();
  out.point = f.U * shrunk.asDiagonal() * f.V.transpose();
  return out;
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> prox_nuclear(const Eigen::MatrixBase<Derived>& z,
                                                   typename Derived::Scalar t) {
  return prox_nuclear_with_norm(z, t).point;
}

/// Observed entry set of a partially known matrix.
using EntryList = std::vector<std::pair<Index, Index>>;

/// P_Omega(X - M): the residual on observed entries, zero elsewhere.
template <typename DerivedX, typename DerivedM>
DenseMatrix<typename DerivedX::Scalar> grad_masked_residual(const Eigen::MatrixBase<DerivedX>& x,
                                                            const Eigen::MatrixBase<DerivedM>& m,
                                                            const EntryList& omega) {
  using Scalar = typename DerivedX::Scalar;
  if (x.rows() != m.rows() || x.cols() != m.cols()) throw ArgumentError("grad_masked_residual: shape mismatch");
  DenseMatrix<Scalar> g = DenseMatrix<Scalar>::Zero(x.rows(), x.cols());
  for (const auto& [i, j] : omega) {
    if (i < 0 || j < 0 || i >= x.rows() || j >= x.cols())
      throw ArgumentError("grad_masked_residual: observed entry out of range");
    g(i, j) = x(i, j) - m(i, j);
  }
  return g;
}

/// Sum of the k largest magnitudes.
template <typename Derived>
typename Derived::Scalar kyfan_norm(const Eigen::MatrixBase<Derived>& v, Index k) {
  typename Derived::Scalar s(0);
  for (Index i : top_k_indices(v, k)) s += std::abs(v(i));
  return s;
}

/// Element of the subdifferential of -lambda ||.||_(k) at y: -lambda sign(y_i)
/// on the top-k entries (sign(0) = +1), zero elsewhere.
template <typename Derived>
DenseVector<typename Derived::Scalar> subgrad_kyfan_negative(const Eigen::MatrixBase<Derived>& y, Index k,
                                                             typename Derived::Scalar lambda) {
  using Scalar = typename Derived::Scalar;
  DenseVector<Scalar> xi = DenseVector<Scalar>::Zero(y.size());
  for (Index i : top_k_indices(y, k)) xi(i) = y(i) < Scalar(0) ? lambda : -lambda;
  return xi;
}

/// Solver for the least-squares prox (I + alpha A^T A) x = z + alpha A^T b,
/// working from the Gram matrix. Factorizations are cached per alpha and the
/// cache is safe for concurrent use.
class LeastSquaresProx {
 public:
  LeastSquaresProx(Matrix gram, Vector atb);

  Vector operator()(const Vector& z, double alpha) const;
  const Matrix& gram() const { return gram_; }
  const Vector& atb() const { return atb_; }
  std::size_t cached_factorizations() const;

 private:
  struct Cache;
  Matrix gram_;
  Vector atb_;
  std::shared_ptr<Cache> cache_;
};

/// Direct form of the least-squares prox for a single call.
Vector prox_least_squares(const Vector& z, double alpha, const Matrix& a, const Vector& b);

// ---------------------------------------------------------------------------
// Problems

/// Nonnegative low-rank completion of M from the entries in omega:
///   f = lambda1/2 |min(X, 0)|^2, g = lambda2 |X|_*, h = 1/2 |P_Omega(X - M)|^2, p = 0.
/// The vector variable is X in column-major order.
struct MatrixCompletionProblem {
  Matrix m;
  EntryList omega;
  double lambda1 = 10.0;
  double lambda2 = 5.0;
};

ProblemSpec build_matrix_completion_spec(const MatrixCompletionProblem& problem);

/// Regularized least squares with a cardinality-promoting difference of norms:
///   f = 1/2 |Ax - b|^2, g = lambda2 |x|_1, h = lambda1/2 |x|^2, p = -lambda2 |x|_(k).
struct KyFanLeastSquaresProblem {
  Matrix a;
  Vector b;
  double lambda1 = 5.0;
  double lambda2 = 10.0;
  Index k = 0;  // 0 selects floor(n / 10), at least 1
};

ProblemSpec build_kyfan_spec(const KyFanLeastSquaresProblem& problem);

/// Projection oracle for a closed set. `convex` marks sets whose projection is
/// single-valued and nonexpansive.
struct SetOracle {
  std::string name;
  bool convex = true;
  std::function<Vector(const Vector&)> project;

  double distance(const Vector& x) const { return (x - project(x)).norm(); }
};

SetOracle whole_space();
SetOracle box_set(Vector lower, Vector upper);
SetOracle ball_set(Vector center, double radius);
/// Sphere |x - c| = r. The center projects to c + r e_0.
SetOracle sphere_set(Vector center, double radius);
/// Union of boxes; ties go to the lowest-index box.
SetOracle box_union_set(std::vector<std::pair<Vector, Vector>> boxes);

/// Find a point of B that is close to A, C and every D_i:
///   f = 1/2 d_A^2, g = indicator of B, h = 1/2 d_C^2, p = sum_i 1/2 d_{D_i}^2.
/// A and C must be convex.
struct FeasibilityProblem {
  Index dimension = 0;
  SetOracle a;
  SetOracle b;
  SetOracle c;
  std::vector<SetOracle> d;
};

ProblemSpec build_feasibility_spec(const FeasibilityProblem& problem);

/// A = ball(0, 1.5), B = [-0.5, 1.5]^n, C = [0, 1]^n, D_1 = unit sphere.
FeasibilityProblem feasibility_demo(Index n);

}  // namespace foursplit
