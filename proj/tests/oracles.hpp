#pragma once

// Independent reference computations used to derive expected test values.
// They share nothing with the library beyond Scalar arithmetic.

#include <cstdint>
#include <vector>

namespace oracle {

using Row = std::vector<std::int64_t>;
using Matrix = std::vector<Row>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Rank by plain row reduction mod p.
inline int rank_mod(Matrix m, std::int64_t p) {
  int rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = rows;
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r)
      if (mod(m[r][c], p) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    auto& pr = m[static_cast<std::size_t>(rank)];
    std::int64_t inv = inv_mod(pr[c], p);
    for (auto& x : pr) x = mod(x * inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || mod(m[r][c], p) == 0) continue;
      std::int64_t f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * pr[k], p);
    }
    ++rank;
  }
  return rank;
}

/// Every vector of F_p^n, for brute-force enumeration over tiny fields.
inline std::vector<Row> all_vectors(int n, std::int64_t p) {
  std::vector<Row> out;
  Row cur(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(cur);
    int i = 0;
    while (i < n && ++cur[static_cast<std::size_t>(i)] == p) cur[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

/// Nonzero solutions of m x = 0 over F_p by enumeration.
inline std::vector<Row> null_vectors(const Matrix& m, int n, std::int64_t p) {
  std::vector<Row> out;
  for (const auto& v : all_vectors(n, p)) {
    bool zero = true, nonzero_v = false;
    for (auto x : v) nonzero_v |= x != 0;
    for (const auto& row : m) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += row[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
      zero &= mod(s, p) == 0;
    }
    if (zero && nonzero_v) out.push_back(v);
  }
  return out;
}

/// Binomial coefficient, for Koszul ranks.
inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of monomials of degree d in n variables not divisible by any of
/// the given exponent vectors (standard monomials of a monomial ideal).
inline int standard_monomials(int n, int max_degree, const std::vector<std::vector<int>>& gens) {
  int count = 0;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (;;) {
    int deg = 0;
    for (int x : e) deg += x;
    if (deg <= max_degree) {
      bool divisible = false;
      for (const auto& g : gens) {
        bool d = true;
        for (int i = 0; i < n; ++i) d &= g[static_cast<std::size_t>(i)] <= e[static_cast<std::size_t>(i)];
        divisible |= d;
      }
      if (!divisible) ++count;
    }
    int i = 0;
    while (i < n && ++e[static_cast<std::size_t>(i)] > max_degree) e[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace oracle
