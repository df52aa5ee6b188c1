#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "foursplit/errors.hpp"

namespace foursplit {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;
using Index = Eigen::Index;

/// Thin SVD, A = U diag(S) V^T with S nonincreasing.
template <typename Scalar>
struct SvdFactors {
  DenseMatrix<Scalar> U;
  DenseVector<Scalar> S;
  DenseMatrix<Scalar> V;

  DenseMatrix<Scalar> reconstruct() const { return U * S.asDiagonal() * V.transpose(); }
};

template <typename Derived>
SvdFactors<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!a.allFinite()) throw ArgumentError("svd: input has non-finite entries");
  Eigen::BDCSVD<DenseMatrix<Scalar>> dec(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw NumericalFailure("svd: decomposition did not converge");
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

template <typename Derived>
DenseVector<typename Derived::Scalar> singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!a.allFinite()) throw ArgumentError("singular_values: input has non-finite entries");
  Eigen::BDCSVD<DenseMatrix<Scalar>> dec(a.eval());
  if (dec.info() != Eigen::Success) throw NumericalFailure("singular_values: decomposition did not converge");
  return dec.singularValues();
}

/// Cholesky factorization of a symmetric positive-definite matrix, kept for
/// repeated solves.
template <typename Scalar>
class SpdFactorization {
 public:
  template <typename Derived>
  explicit SpdFactorization(const Eigen::MatrixBase<Derived>& s) {
    if (s.rows() != s.cols()) throw ArgumentError("solve_spd: matrix is not square");
    if (!s.allFinite()) throw ArgumentError("solve_spd: matrix has non-finite entries");
    const Scalar asym = (s - s.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(1e-12) * (Scalar(1) + s.cwiseAbs().maxCoeff()))
      throw ArgumentError("solve_spd: matrix is not symmetric");
    llt_.compute(s);
    if (llt_.info() != Eigen::Success) throw NotSpdError("solve_spd: non-positive pivot");
  }

  template <typename Derived>
  DenseVector<Scalar> solve(const Eigen::MatrixBase<Derived>& b) const {
    if (b.size() != llt_.rows()) throw ArgumentError("solve_spd: dimension mismatch");
    return llt_.solve(b);
  }

  Index size() const { return llt_.rows(); }

 private:
  Eigen::LLT<DenseMatrix<Scalar>> llt_;
};

template <typename DerivedS, typename DerivedB>
DenseVector<typename DerivedS::Scalar> solve_spd(const Eigen::MatrixBase<DerivedS>& s,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  return SpdFactorization<typename DerivedS::Scalar>(s).solve(b);
}

/// Indices of the k entries of largest magnitude, returned in increasing
/// order. Equal magnitudes prefer the lower index.
template <typename Derived>
std::vector<Index> top_k_indices(const Eigen::MatrixBase<Derived>& v, Index k) {
  if (k < 1 || k > v.size()) throw ArgumentError("top_k_indices: k out of range");
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  auto before = [&v](Index a, Index b) {
    const auto ma = std::abs(v(a));
    const auto mb = std::abs(v(b));
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), before);
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Smallest and largest eigenvalue of a symmetric matrix.
template <typename Scalar>
struct EigenRange {
  Scalar min;
  Scalar max;
};

template <typename Derived>
EigenRange<typename Derived::Scalar> symmetric_eigen_range(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  if (s.rows() != s.cols()) throw ArgumentError("symmetric_eigen_range: matrix is not square");
  if (s.size() == 0) return {Scalar(0), Scalar(0)};
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(s.eval(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("symmetric_eigen_range: solver did not converge");
  return {es.eigenvalues()(0), es.eigenvalues()(s.rows() - 1)};
}

}  // namespace foursplit
