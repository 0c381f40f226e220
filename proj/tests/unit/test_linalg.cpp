#include <random>

#include "doctest.h"
#include "homlevel/linalg.hpp"
#include "oracles.hpp"

using namespace homlevel;

namespace {

Mat from_rows(const Field& f, const oracle::Matrix& rows) {
  Mat m = zeros(f, static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = f.from_int(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("rank of small matrices") {
  Field f2 = Field::prime(2);
  CHECK(rank(zeros(f2, 3, 3), f2) == 0);
  CHECK(rank(identity(f2, 3), f2) == 3);
  oracle::Matrix ones = {{1, 1}, {1, 1}};
  CHECK(rank(from_rows(f2, ones), f2) == oracle::rank_mod(ones, 2));
  CHECK(oracle::rank_mod(ones, 2) == 1);
}

TEST_CASE("kernel basis examples") {
  Field f2 = Field::prime(2);
  CHECK(kernel_basis(identity(f2, 2), f2).cols() == 0);
  Mat k = kernel_basis(zeros(f2, 2, 2), f2);
  CHECK(equal(k, identity(f2, 2)));
  Mat row = from_rows(f2, {{1, 1}});
  Mat kr = kernel_basis(row, f2);
  auto expected = oracle::null_vectors({{1, 1}}, 2, 2);
  REQUIRE(expected.size() == 1);
  REQUIRE(kr.cols() == 1);
  CHECK(kr(0, 0) == f2.from_int(expected[0][0]));
  CHECK(kr(1, 0) == f2.from_int(expected[0][1]));
}

TEST_CASE("solve examples") {
  Field q = Field::rationals();
  Mat b = from_rows(q, {{3, 4}, {5, 6}});
  auto x = solve(identity(q, 2), b, q);
  REQUIRE(x);
  CHECK(equal(*x, b));
  auto z = solve(zeros(q, 2, 2), zeros(q, 2, 1), q);
  REQUIRE(z);
  CHECK(is_zero(*z));
  auto half = solve(from_rows(q, {{2}}), from_rows(q, {{1}}), q);
  REQUIRE(half);
  CHECK((*half)(0, 0) == q.fraction(1, 2));
  CHECK_FALSE(solve(zeros(q, 1, 1), from_rows(q, {{1}}), q).has_value());
}

TEST_CASE("rank-nullity and exact solve on random matrices") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 101u, 0u}) {
    Field f = p ? Field::prime(p) : Field::rationals();
    for (int trial = 0; trial < 30; ++trial) {
      Index r = static_cast<Index>(rng() % 6), c = static_cast<Index>(rng() % 6);
      Mat m = zeros(f, r, c);
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = rng() % 3 ? f.zero() : f.random(rng);
      Mat k = kernel_basis(m, f);
      CHECK(rank(m, f) + k.cols() == c);
      CHECK(is_zero(m * k));
      CHECK(rank(k, f) == k.cols());
      Mat rhs = m * Mat(zeros(f, c, 1) + (c ? Mat(unit_vector(f, c, 0)) : zeros(f, 0, 1)));
      auto x = solve(m, rhs, f);
      REQUIRE(x);
      CHECK(equal(m * *x, rhs));
      if (p) {
        oracle::Matrix rows(static_cast<std::size_t>(r), oracle::Row(static_cast<std::size_t>(c)));
        for (Index i = 0; i < r; ++i)
          for (Index j = 0; j < c; ++j) rows[i][j] = m(i, j).residue();
        CHECK(rank(m, f) == oracle::rank_mod(rows, p));
      }
    }
  }
}

TEST_CASE("elimination is reproducible") {
  Field f = Field::prime(101);
  std::mt19937_64 a(3), b(3);
  Mat m1 = zeros(f, 4, 5), m2 = zeros(f, 4, 5);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 5; ++j) {
      m1(i, j) = f.random(a);
      m2(i, j) = f.random(b);
    }
  CHECK(equal(kernel_basis(m1, f), kernel_basis(m2, f)));
  CHECK(equal(rref(m1, f).reduced, rref(m2, f).reduced));
}

TEST_CASE("quotient projection and section") {
  Field f = Field::prime(3);
  Mat sub = zeros(f, 3, 1);
  sub(0, 0) = f.one();
  sub(1, 0) = f.one();
  Quotient q = quotient(sub, 3, f);
  CHECK(q.projection.rows() == 2);
  CHECK(is_zero(q.projection * sub));
  CHECK(equal(q.projection * q.section, identity(f, 2)));
}
