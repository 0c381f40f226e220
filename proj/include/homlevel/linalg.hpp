#pragma once

/**
 * Exact dense linear algebra over a Field.
 *
 * Matrices are plain Eigen containers of Scalar; every routine takes the Field
 * explicitly so that results (kernel bases, identity blocks) come out bound to
 * the right field even when the input has no entries. Elimination is
 * Gauss-Jordan with the pivot fixed to the lowest row, then the lowest column,
 * so every downstream object is reproducible.
 */

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "homlevel/scalar.hpp"

namespace homlevel {

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Reduced row echelon form and the pivot column of each nonzero row.
struct Echelon {
  Mat reduced;
  std::vector<Index> pivots;
};

/// Complement data for the quotient of k^n by the span of some columns.
struct Quotient {
  Mat projection;  // q x n, kills the subspace
  Mat section;     // n x q, projection * section = I
};

Mat zeros(const Field& f, Index rows, Index cols);
Mat identity(const Field& f, Index n);
Vec unit_vector(const Field& f, Index n, Index i);
Mat bind(const Mat& m, const Field& f);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diagonal(const std::vector<Mat>& blocks, const Field& f);
bool is_zero(const Mat& m);
bool equal(const Mat& a, const Mat& b);

namespace detail {
Echelon rref(const Mat& m, const Field& f);
Mat kernel_basis(const Mat& m, const Field& f);
std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& f);
Mat column_basis(const Mat& m, const Field& f);
std::optional<Mat> inverse(const Mat& m, const Field& f);
Quotient quotient(const Mat& sub, Index ambient, const Field& f);
}  // namespace detail

template <class Derived>
Echelon rref(const Eigen::MatrixBase<Derived>& m, const Field& f) {
  return detail::rref(Mat(m), f);
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, const Field& f) {
  return static_cast<Index>(detail::rref(Mat(m), f).pivots.size());
}

/// Columns form a basis of the null space; cols(m) - rank(m) of them.
template <class Derived>
Mat kernel_basis(const Eigen::MatrixBase<Derived>& m, const Field& f) {
  return detail::kernel_basis(Mat(m), f);
}

/// Some x with a * x = b, or nullopt when b leaves the column space of a.
template <class DA, class DB>
std::optional<Mat> solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                         const Field& f) {
  return detail::solve(Mat(a), Mat(b), f);
}

/// The pivot columns of m, a basis of its column space.
template <class Derived>
Mat column_basis(const Eigen::MatrixBase<Derived>& m, const Field& f) {
  return detail::column_basis(Mat(m), f);
}

template <class Derived>
std::optional<Mat> inverse(const Eigen::MatrixBase<Derived>& m, const Field& f) {
  return detail::inverse(Mat(m), f);
}

template <class Derived>
Quotient quotient(const Eigen::MatrixBase<Derived>& sub, Index ambient, const Field& f) {
  return detail::quotient(Mat(sub), ambient, f);
}

/// True when the columns of a lie in the column space of b.
template <class DA, class DB>
bool in_span(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b, const Field& f) {
  if (a.cols() == 0) return true;
  return detail::solve(Mat(b), Mat(a), f).has_value();
}

}  // namespace homlevel
