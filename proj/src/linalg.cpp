#include "homlevel/linalg.hpp"

#include <utility>

namespace homlevel {

Mat zeros(const Field& f, Index rows, Index cols) {
  return Mat::Constant(rows, cols, f.zero());
}

Mat identity(const Field& f, Index n) {
  Mat m = zeros(f, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Vec unit_vector(const Field& f, Index n, Index i) {
  Vec v = Vec::Constant(n, f.zero());
  v(i) = f.one();
  return v;
}

Mat bind(const Mat& m, const Field& f) {
  Mat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = f.bind(m(i, j));
  return out;
}

Mat hstack(const Mat& a, const Mat& b) {
  Mat out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Mat vstack(const Mat& a, const Mat& b) {
  Mat out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

Mat block_diagonal(const std::vector<Mat>& blocks, const Field& f) {
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out = zeros(f, r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

bool is_zero(const Mat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

namespace detail {

Echelon rref(const Mat& m, const Field& f) {
  Echelon e{bind(m, f), {}};
  Mat& a = e.reduced;
  const Index rows = a.rows(), cols = a.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index piv = row;
    while (piv < rows && a(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    const Scalar inv = a(row, col).inverse();
    for (Index j = col; j < cols; ++j) a(row, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Scalar factor = a(i, col);
      for (Index j = col; j < cols; ++j) {
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

Mat kernel_basis(const Mat& m, const Field& f) {
  const Echelon e = rref(m, f);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Mat basis = zeros(f, cols, cols - static_cast<Index>(e.pivots.size()));
  Index k = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], k) = -e.reduced(static_cast<Index>(r), free);
    }
    ++k;
  }
  return basis;
}

std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& f) {
  const Index n = a.cols();
  const Echelon e = rref(hstack(a, b), f);
  Mat x = zeros(f, n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const Index p = e.pivots[r];
    if (p >= n) return std::nullopt;
    for (Index j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(static_cast<Index>(r), n + j);
  }
  return x;
}

Mat column_basis(const Mat& m, const Field& f) {
  const Echelon e = rref(m, f);
  Mat out(m.rows(), static_cast<Index>(e.pivots.size()));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    out.col(static_cast<Index>(k)) = bind(m.col(e.pivots[k]), f);
  }
  return out;
}

std::optional<Mat> inverse(const Mat& m, const Field& f) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m, f) != m.rows()) return std::nullopt;
  return solve(m, identity(f, m.rows()), f);
}

Quotient quotient(const Mat& sub, Index ambient, const Field& f) {
  const Mat basis = column_basis(sub, f);
  const Index s = basis.cols();
  const Echelon e = rref(hstack(basis, identity(f, ambient)), f);
  std::vector<Index> extra;
  for (Index p : e.pivots)
    if (p >= s) extra.push_back(p - s);
  const Index q = static_cast<Index>(extra.size());
  Mat section = zeros(f, ambient, q);
  for (Index k = 0; k < q; ++k) section(extra[static_cast<std::size_t>(k)], k) = f.one();
  const Mat full = hstack(basis, section);
  const Mat inv = *inverse(full, f);
  return Quotient{inv.bottomRows(q), section};
}

}  // namespace detail
}  // namespace homlevel
