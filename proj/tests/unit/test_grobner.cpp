#include "doctest.h"
#include "homlevel/grobner.hpp"
#include "homlevel/ring.hpp"
#include "oracles.hpp"

using namespace homlevel;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

PolyVec pv(const std::string& s, const Field& f, int comp = 0) {
  return PolyVec::from_poly(parse_poly(s, kXYZ, f), comp);
}

}  // namespace

TEST_CASE("buchberger small examples") {
  Field f2 = Field::prime(2), f101 = Field::prime(101);
  auto g1 = buchberger({pv("x^2", f2)}, 1, {0}, 1000);
  REQUIRE(g1.elements().size() == 1);
  CHECK(g1.elements()[0] == pv("x^2", f2));

  auto g2 = buchberger({pv("x", f101), pv("y", f101)}, 1, {0}, 1000);
  REQUIRE(g2.elements().size() == 2);

  // Leading terms x^2 and y^2 are coprime in grevlex, so the S-pair reduces
  // to zero and the generators already form a basis (checked by brute force).
  auto g3 = buchberger({pv("x^2 - y*z", f101), pv("y^2 - x*z", f101)}, 1, {0}, 1000);
  CHECK(g3.elements().size() == 2);
  for (const auto& a : g3.elements())
    for (const auto& b : g3.elements()) {
      const Monomial l = a.leading().m.lcm(b.leading().m);
      PolyVec s = a.times(l / a.leading().m, b.leading().c) - b.times(l / b.leading().m, a.leading().c);
      CHECK(normal_form(s, g3).is_zero());
    }
  CHECK(normal_form(pv("x^2 - y*z", f101), g3).is_zero());
  CHECK(normal_form(pv("y^2 - x*z", f101), g3).is_zero());

  // With leading terms x^2 and xy the S-pair leaves a cubic remainder.
  auto g4 = buchberger({pv("x^2 - y*z", f101), pv("x*y - z^2", f101)}, 1, {0}, 1000);
  bool has_cubic = false;
  for (const auto& g : g4.elements()) has_cubic |= g.degree({0}) == 3;
  CHECK(has_cubic);
}

TEST_CASE("budget is enforced") {
  Field f = Field::prime(101);
  CHECK_THROWS_AS(buchberger({pv("x^2 - y*z", f), pv("y^2 - x*z", f)}, 1, {0}, 0), BudgetExceeded);
}

TEST_CASE("normal forms") {
  Field f2 = Field::prime(2), f101 = Field::prime(101);
  auto g = buchberger({pv("x^2", f2)}, 1, {0}, 100);
  CHECK(normal_form(pv("x^2", f2), g).is_zero());
  auto gxy = buchberger({pv("x", f101), pv("y", f101)}, 1, {0}, 100);
  CHECK(normal_form(pv("1", f101), gxy) == pv("1", f101));
  // By hand: the leading term of x^2 - y is x^2, so x^3 -> x*y.
  auto gq = buchberger({pv("x^2 - y", f101)}, 1, {0}, 100);
  CHECK(normal_form(pv("x^3", f101), gq) == pv("x*y", f101));
}

TEST_CASE("schreyer syzygies") {
  Field f = Field::prime(101);
  auto gx = buchberger({pv("x", f)}, 1, {0}, 100);
  CHECK(schreyer_syzygies(gx).empty());

  auto gxy = buchberger({pv("x", f), pv("y", f)}, 1, {0}, 100);
  auto s = schreyer_syzygies(gxy);
  REQUIRE(s.size() == 1);
  // Koszul relation: a*x + b*y = 0 with (a, b) a multiple of (y, -x).
  Poly a = s[0].component(0), b = s[0].component(1);
  Poly ex = a * gxy.elements()[0].component(0) + b * gxy.elements()[1].component(0);
  CHECK(ex.is_zero());
  CHECK(a.degree() == 1);

  auto gxyz = buchberger({pv("x", f), pv("y", f), pv("z", f)}, 1, {0}, 100);
  auto s3 = schreyer_syzygies(gxyz);
  CHECK(static_cast<long long>(s3.size()) == oracle::binom(3, 2));
  for (const auto& v : s3) {
    Poly sum;
    for (int i = 0; i < 3; ++i)
      sum = sum + v.component(i) * gxyz.elements()[static_cast<std::size_t>(i)].component(0);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("lifter expresses members and finds syzygies") {
  Field f = Field::prime(101);
  std::vector<PolyVec> cols = {pv("x", f), pv("y", f)};
  SubmoduleLifter lifter(cols, {1, 1}, 1, {0}, f, 1000);
  REQUIRE(lifter.syzygies().size() == 1);
  CHECK(lifter.syzygy_degrees()[0] == 2);
  auto c = lifter.lift(pv("x*z + 3*y^2", f));
  REQUIRE(c);
  Poly back = c->component(0) * parse_poly("x", kXYZ, f) + c->component(1) * parse_poly("y", kXYZ, f);
  CHECK(back == parse_poly("x*z + 3*y^2", kXYZ, f));
  CHECK_FALSE(lifter.lift(pv("z^2", f)).has_value());
}
