#include <random>

#include "doctest.h"
#include "homlevel/level.hpp"
#include "homlevel/random.hpp"

using namespace homlevel;

namespace {

Ring dual_numbers() { return make_ring("artin(F2; x | x^2)"); }

Complex koszul_x(const Ring& a) {
  FgModule aa = FgModule::free(a, 1);
  return Complex(a, 0, {aa, aa}, {multiplication(aa, aa, {{a->var(0)}})});
}

Complex point(const FgModule& m, int n = 0) { return Complex::concentrated(m, n); }

}  // namespace

TEST_CASE("derived hom agrees with homology and Ext") {
  auto a = dual_numbers();
  FgModule aa = FgModule::free(a, 1), k = FgModule::residue_field(a);
  Complex kx = koszul_x(a);

  // Hom_D(R, M) = H_0(M).
  CHECK(derived_hom(point(aa), kx).dimension == homology(kx, 0).dim());
  CHECK(derived_hom(point(aa), shift(kx, -1)).dimension == homology(kx, 1).dim());
  // Hom_D(k, Sigma^n k) = Ext^n(k, k), one-dimensional over the dual numbers.
  for (int n = 0; n <= 3; ++n) CHECK(derived_hom(point(k), point(k, n)).dimension == 1);
  CHECK(derived_hom(point(k), point(k, -1)).dimension == 0);

  // Hom_D(k, k) over F101[x,y]: only the identity class.
  auto r = make_ring("poly(F101; x, y)");
  FgModule kr = FgModule::residue_field(r);
  CHECK(derived_hom(point(kr), point(kr)).dimension == 1);
  // Ext^2(k, k) lives in internal degree -2.
  CHECK(derived_hom(point(kr), point(kr, 2)).dimension == 0);
  CHECK(derived_hom(point(kr), point(shift_degrees(kr, -2), 2)).dimension == 1);
  CHECK(derived_hom(point(kr), point(shift_degrees(kr, -1), 1)).dimension == 2);
}

TEST_CASE("identity is nonzero and null-homotopic maps are zero in D(R)") {
  auto a = dual_numbers();
  Complex kx = koszul_x(a);
  HomotopyClassSpace hs = derived_hom(kx, kx);
  CHECK_FALSE(hs.is_zero_in_derived(ChainMap::identity(kx)));
  CHECK(hs.is_zero_in_derived(ChainMap::zero(kx, kx)));
  Complex c = cone(ChainMap::identity(kx)).complex;
  HomotopyClassSpace hc = derived_hom(c, c);
  CHECK(hc.dimension == 0);
  CHECK(hc.is_zero_in_derived(ChainMap::identity(c)));
}

TEST_CASE("maps from the Koszul complex to its homology vanish on H_1") {
  auto a = dual_numbers();
  Complex kx = koszul_x(a);
  Accounting acc = accounting(kx);
  HomotopyClassSpace hs = derived_hom(kx, acc.h);
  REQUIRE_FALSE(hs.chain_maps.empty());
  bool some_nonzero_h0 = false;
  for (const ChainMap& f : hs.chain_maps) {
    CHECK(homology_map(f, 1).is_zero());
    if (!homology_map(f, 0).is_zero()) some_nonzero_h0 = true;
  }
  CHECK(some_nonzero_h0);
}

TEST_CASE("level one test") {
  auto a = dual_numbers();
  FgModule aa = FgModule::free(a, 1), k = FgModule::residue_field(a);

  LevelOneResult rk = level_one_test(koszul_x(a));
  CHECK(rk.verdict == Verdict::No);

  ComplexSum zs = direct_sum({point(k, 0), point(k, 1)});
  LevelOneResult rz = level_one_test(zs.complex);
  CHECK(rz.verdict == Verdict::Yes);
  REQUIRE(rz.witness);
  CHECK(is_quasi_iso(*rz.witness));

  // Free homology: a cone of an identity plus a free module.
  Complex c = direct_sum({cone(ChainMap::identity(point(aa))).complex, point(aa, 2)}).complex;
  LevelOneResult rc = level_one_test(c);
  CHECK(rc.verdict == Verdict::Yes);
  REQUIRE(rc.witness);
  CHECK(is_quasi_iso(*rc.witness));

  CHECK(level_one_test(cone(ChainMap::identity(koszul_x(a))).complex).verdict == Verdict::Yes);
}

TEST_CASE("upper certificates") {
  auto r3 = make_ring("poly(F101; x, y, z)");
  UpperCertificate uk = upper_certificate(point(FgModule::residue_field(r3)), LevelClass::Proj);
  CHECK(uk.known);
  CHECK(uk.verified());
  CHECK(uk.value == 4);
  REQUIRE(uk.bound);
  CHECK(*uk.bound == 4);

  auto a = dual_numbers();
  Complex kx = koszul_x(a);
  UpperCertificate ugi = upper_certificate(kx, LevelClass::GI);
  CHECK(ugi.verified());
  CHECK(ugi.value == 2);
  UpperCertificate uinj = upper_certificate(kx, LevelClass::Inj);
  CHECK(uinj.verified());
  CHECK(uinj.value == 2);

  // pd(k) is infinite over the dual numbers.
  UpperCertificate none = upper_certificate(point(FgModule::residue_field(a)), LevelClass::Proj);
  CHECK_FALSE(none.known);

  auto r2 = make_ring("poly(F101; x, y)");
  FgModule rr = FgModule::free(r2, 1);
  Complex frees = direct_sum({cone(ChainMap::identity(point(rr))).complex, point(rr, 3)}).complex;
  UpperCertificate two = two_layer_certificate(frees, LevelClass::Flat);
  CHECK(two.verified());
  CHECK(two.value <= 2);
  CHECK(upper_certificate(frees, LevelClass::Flat).value == 1);

  nlohmann::json j = uk.to_json();
  CHECK(j["value"] == 4);
  CHECK(j["verified"] == true);
}

TEST_CASE("ghost lower bounds") {
  auto r3 = make_ring("poly(F101; x, y, z)");
  LowerCertificate lk = ghost_lower_bound(point(FgModule::residue_field(r3)), LevelClass::Proj, 3);
  CHECK(lk.value == 4);
  CHECK(lk.chain_length == 3);
  for (bool g : lk.ghost_homology_zero) CHECK(g);
  // A longer search stops where Sigma^4 Omega^4(k) is acyclic.
  CHECK(ghost_lower_bound(point(FgModule::residue_field(r3)), LevelClass::Proj, 4).value == 4);

  auto a = dual_numbers();
  LowerCertificate li = ghost_lower_bound(koszul_x(a), LevelClass::Inj, 1);
  CHECK(li.value == 2);

  LowerCertificate lf = ghost_lower_bound(point(FgModule::free(r3, 1)), LevelClass::Proj, 3);
  CHECK(lf.value == 1);
  CHECK(ghost_lower_bound(Complex::zero(r3), LevelClass::Proj, 2).value == 0);
}

TEST_CASE("level reports") {
  auto a = dual_numbers();
  FgModule k = FgModule::residue_field(a);
  LevelCertificate kgi = level_report(koszul_x(a), LevelClass::GI);
  REQUIRE(kgi.verdict);
  CHECK(*kgi.verdict == 2);
  LevelCertificate pgi = level_report(point(k), LevelClass::GI);
  REQUIRE(pgi.verdict);
  CHECK(*pgi.verdict == 1);
  LevelCertificate kinj = level_report(koszul_x(a), LevelClass::Inj);
  REQUIRE(kinj.verdict);
  CHECK(*kinj.verdict == 2);

  auto r3 = make_ring("poly(F101; x, y, z)");
  LevelCertificate kp = level_report(point(FgModule::residue_field(r3)), LevelClass::Proj);
  REQUIRE(kp.verdict);
  CHECK(*kp.verdict == 4);
  CHECK(kp.to_json()["verdict"] == 4);

  // Shifting does not change the level.
  LevelCertificate sh = level_report(shift(koszul_x(a), 3), LevelClass::GI);
  REQUIRE(sh.verdict);
  CHECK(*sh.verdict == 2);
}

TEST_CASE("lower bound never exceeds upper bound on random complexes") {
  std::mt19937_64 rng(17);
  std::vector<Ring> rings = {dual_numbers(), make_ring("artin(F2; x, y | (x,y)^2)")};
  for (int t = 0; t < 6; ++t) {
    Complex x = random_complex(rings[static_cast<std::size_t>(t) % 2], 0, 1, rng);
    for (LevelClass c : {LevelClass::Inj, LevelClass::GI}) {
      LevelCertificate rep = level_report(x, c);
      if (rep.upper.known) {
        CHECK(rep.upper.verified());
        CHECK(rep.lower.value <= rep.upper.value);
      }
    }
  }
}

TEST_CASE("depth and Auslander-Buchsbaum") {
  auto r = make_ring("poly(F101; x, y)");
  FgModule rr = FgModule::free(r, 1), k = FgModule::residue_field(r);
  CHECK(depth_module(rr) == 2);
  CHECK(depth_module(k) == 0);
  CHECK(depth_module(FgModule::residue_field(dual_numbers())) == 0);
  CHECK_FALSE(depth_module(FgModule::zero(r)).has_value());
  // pd + depth = depth R.
  DimensionReport pk = projective_dimension(k);
  CHECK(pk.value + *depth_module(k) == 2);
}

TEST_CASE("Bass check") {
  auto a = dual_numbers();
  BassReport be = bass_check(point(matlis_E(a)));
  CHECK(be.hypothesis_met);
  CHECK(be.formula_holds);

  BassReport bk = bass_check(koszul_x(a));
  CHECK_FALSE(bk.hypothesis_met);
  REQUIRE(bk.inj.verdict);
  CHECK(*bk.inj.verdict == 2);
  CHECK(bk.gi_upper_within_bound);

  auto b = make_ring("artin(F2; x, y | (x,y)^2)");
  BassReport bi = bass_check(point(matlis_E(b), 2));
  CHECK(bi.hypothesis_met);
  CHECK(bi.formula_holds);

  CHECK_THROWS_AS(bass_check(point(FgModule::free(make_ring("poly(F101; x)"), 1))), WrongMode);
}
