#include "doctest.h"
#include "homlevel/ring.hpp"
#include "oracles.hpp"

using namespace homlevel;

TEST_CASE("artinian presentations") {
  auto a = make_ring("artin(F2; x | x^2)");
  CHECK(a->is_artin());
  CHECK(a->dim() == 2);
  CHECK(a->basis()[0].is_one());
  CHECK(a->basis()[1] == Monomial::var(0));
  CHECK(a->reduce(a->parse("x*x")).is_zero());
  CHECK(a->verify_multiplication_table());

  auto b = make_ring("artin(F2; x,y | x^2, xy, y^2)");
  CHECK(b->dim() == oracle::standard_monomials(2, 4, {{2, 0}, {1, 1}, {0, 2}}));
  CHECK(b->dim() == 3);

  auto c = make_ring("artin(F2; x, y | (x,y)^2)");
  CHECK(c->dim() == 3);
  auto k = make_ring("artin(F2; | )");
  CHECK(k->dim() == 1);
}

TEST_CASE("graded polynomial rings") {
  auto r = make_ring("poly(F101; x, y, z)");
  CHECK_FALSE(r->is_artin());
  CHECK(r->nvars() == 3);
  CHECK(depth_ring(*r) == 3);
}

TEST_CASE("presentation errors") {
  CHECK_THROWS_AS(make_ring("artin(F2; x, y | x^2)"), InfiniteDimensional);
  CHECK_THROWS_AS(make_ring("artin(F4; x | x^2)"), ParseError);
  CHECK_THROWS_AS(make_ring("artin(F2; x | x^2"), ParseError);
  CHECK_THROWS_AS(make_ring("artin(F2; x | q^2)"), ParseError);
  CHECK_THROWS_AS(make_ring("artin(F3; x | x - x^2)"), VerificationError);
}

TEST_CASE("non-monomial ideals") {
  auto r = make_ring("artin(Q; x, y | x^2 - y^2, x*y)");
  // x^3 = x*y^2 = 0, so the basis is 1, x, y, x^2.
  CHECK(r->dim() == 4);
  CHECK(r->verify_multiplication_table());
  CHECK(is_gorenstein_artin(*r).gorenstein);
}

TEST_CASE("depth and Gorenstein detection") {
  auto a = make_ring("artin(F2; x | x^2)");
  auto m = make_ring("artin(F2; x, y | (x,y)^2)");
  auto k = make_ring("artin(F2; | )");
  CHECK(depth_ring(*a) == 0);
  CHECK(depth_ring(*m) == 0);
  // Socle oracle: enumerate vectors killed by every variable.
  auto socle_a = oracle::null_vectors({{0, 0}, {1, 0}}, 2, 2);
  CHECK(is_gorenstein_artin(*a).socle_dimension == 1);
  CHECK(socle_a.size() == 1);  // 2^1 - 1 nonzero vectors
  auto g = is_gorenstein_artin(*m);
  CHECK_FALSE(g.gorenstein);
  CHECK(g.socle_dimension == 2);
  CHECK(is_gorenstein_artin(*k).gorenstein);
  CHECK_THROWS_AS(is_gorenstein_artin(*make_ring("poly(F2; x)")), WrongMode);
}

TEST_CASE("canonical presentation round-trips") {
  auto r = make_ring("artin(F5; x, y | x^2 - 2*y^2, x*y)");
  auto r2 = make_ring(r->presentation());
  CHECK(r2->presentation() == r->presentation());
  CHECK(r2->dim() == r->dim());
}
