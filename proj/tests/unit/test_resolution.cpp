#include <random>

#include "doctest.h"
#include "homlevel/random.hpp"
#include "homlevel/resolution.hpp"
#include "oracles.hpp"

using namespace homlevel;

namespace {

Ring dual_numbers() { return make_ring("artin(F2; x | x^2)"); }
Ring square_zero() { return make_ring("artin(F2; x, y | (x,y)^2)"); }

}  // namespace

TEST_CASE("minimal free resolutions") {
  auto a = dual_numbers();
  Resolution free2 = minimal_free_resolution(FgModule::free(a, 2), 4);
  CHECK(free2.complete);
  CHECK(free2.length() == 0);
  CHECK(free2.betti() == std::vector<int>{2});

  auto r = make_ring("poly(F101; x, y, z)");
  FgModule k = FgModule::residue_field(r);
  Resolution rk = minimal_free_resolution(k, 8);
  REQUIRE(rk.complete);
  CHECK(rk.length() == 3);
  std::vector<int> koszul;
  for (int i = 0; i <= 3; ++i) koszul.push_back(static_cast<int>(oracle::binom(3, i)));
  CHECK(rk.betti() == koszul);
  // Koszul: the generators of F_i sit in degree i.
  auto gb = rk.graded_betti();
  for (int i = 0; i <= 3; ++i) CHECK(gb[static_cast<std::size_t>(i)].at(i) == koszul[static_cast<std::size_t>(i)]);
  ResolutionCheck ck = verify_resolution(rk);
  CHECK(ck.exact);
  CHECK(ck.minimal);

  Resolution rd = minimal_free_resolution(FgModule::residue_field(a), 5);
  CHECK_FALSE(rd.complete);
  CHECK(rd.betti() == std::vector<int>(6, 1));
  Mat x = a->regular_action(a->var(0));
  for (int i = 1; i <= 5; ++i) CHECK(equal(rd.free.d(i).matrix(), x));
  ResolutionCheck cd = verify_resolution(rd);
  CHECK(cd.exact);
  CHECK(cd.minimal);
}

TEST_CASE("projective, flat and injective dimension") {
  auto a = dual_numbers();
  CHECK(projective_dimension(FgModule::free(a, 3)).state == DimState::Exact);
  CHECK(projective_dimension(FgModule::free(a, 3)).value == 0);
  CHECK(projective_dimension(FgModule::zero(a)).state == DimState::NegInfinite);
  DimensionReport pk = projective_dimension(FgModule::residue_field(a));
  CHECK(pk.state == DimState::CertifiedInfinite);
  CHECK(pk.witness.find("Omega^0") != std::string::npos);

  auto r = make_ring("poly(F101; x, y, z)");
  DimensionReport p3 = projective_dimension(FgModule::residue_field(r));
  CHECK(p3.state == DimState::Exact);
  CHECK(p3.value == 3);
  DimensionReport f3 = flat_dimension(FgModule::residue_field(r));
  CHECK(same_value(p3, f3));
  CHECK(f3.kind == DimKind::Fd);

  CHECK(injective_dimension(matlis_E(a)).value == 0);
  CHECK(injective_dimension(matlis_E(a)).state == DimState::Exact);
  CHECK(injective_dimension(FgModule::free(a, 1)).value == 0);
  CHECK(injective_dimension(FgModule::free(a, 1)).state == DimState::Exact);
  auto s = square_zero();
  DimensionReport ik = injective_dimension(FgModule::residue_field(s));
  CHECK(ik.state == DimState::CertifiedInfinite);
  CHECK_THROWS_AS(injective_dimension(FgModule::residue_field(r)), WrongMode);
}

TEST_CASE("Gorenstein dimensions") {
  auto a = dual_numbers();
  DimensionReport gid = gorenstein_dimension(FgModule::residue_field(a), DimKind::Gid);
  CHECK(gid.state == DimState::Exact);
  CHECK(gid.value == 0);
  auto r = make_ring("poly(F101; x, y)");
  DimensionReport gpd = gorenstein_dimension(FgModule::residue_field(r), DimKind::Gpd);
  CHECK(gpd.state == DimState::Exact);
  CHECK(gpd.value == 2);
  CHECK_THROWS_AS(gorenstein_dimension(FgModule::residue_field(r), DimKind::Gid), OutOfScope);
  for (const auto& ring : {a, r, square_zero()})
    CHECK(gorenstein_dimension(FgModule::free(ring, 2), DimKind::Gpd).value == 0);

  // Over (x,y)^2 = 0 the residue field has Ext^1(k, R) != 0.
  auto s = square_zero();
  std::vector<Index> ext = ext_into_ring(FgModule::residue_field(s), 2);
  CHECK(ext[0] > 0);
  DimensionReport g = gorenstein_dimension(FgModule::residue_field(s), DimKind::Gpd);
  CHECK(g.state == DimState::CertifiedInfinite);
  // Over a Gorenstein ring Ext^{>0}(M, R) vanishes for every module.
  for (Index e : ext_into_ring(FgModule::residue_field(a), 3)) CHECK(e == 0);
}

TEST_CASE("syzygies and cosyzygies") {
  auto a = dual_numbers();
  FgModule k = FgModule::residue_field(a);
  CHECK(is_zero(cosyzygy(matlis_E(a), 1)));
  CHECK(isomorphism(cosyzygy(k, 1), k).verdict == Verdict::Yes);
  CHECK(cosyzygy(k, 0).same_as(k));
  CHECK(isomorphism(syzygy(k, 2), k).verdict == Verdict::Yes);
  auto s = square_zero();
  // Oracle: Omega^1(k) = m ~= k^2 over (x,y)^2 = 0.
  CHECK(syzygy(FgModule::residue_field(s), 1).dim() == 2);
  CHECK(has_residue_summand(FgModule::residue_field(s)));
  CHECK_FALSE(has_residue_summand(FgModule::free(s, 1)));
}

TEST_CASE("dimension calculus on short exact sequences") {
  auto a = dual_numbers();
  FgModule aa = FgModule::free(a, 1);
  ModuleMap x = multiplication(aa, aa, {{a->var(0)}});
  Image im = image(x);
  Cokernel c = cokernel(x);
  ShortExact mak{im.mono, c.projection};
  SesDimensionCheck chk = check_ses_dimension_calculus(mak, DimFamily::Classical);
  CHECK(chk.ok());
  CHECK(chk.l[0].state == DimState::CertifiedInfinite);
  CHECK(chk.n[0].state == DimState::CertifiedInfinite);

  DirectSum split = direct_sum({aa, aa});
  ShortExact sp{split.inj[0], split.proj[1]};
  SesDimensionCheck cs = check_ses_dimension_calculus(sp, DimFamily::Classical);
  CHECK(cs.ok());
  for (const auto& r : cs.m) CHECK(r.value == 0);
  CHECK(check_ses_dimension_calculus(sp, DimFamily::Gorenstein).ok());

  auto r = make_ring("poly(F101; x, y)");
  FgModule r2 = FgModule::free_graded(r, {1, 1}), r1 = FgModule::free_graded(r, {0});
  ModuleMap f = multiplication(r2, r1, {{r->var(0), r->var(1)}});
  Kernel k = kernel(f);
  Image i = image(f);
  ShortExact koszul{k.inclusion, i.epi};
  SesDimensionCheck ck = check_ses_dimension_calculus(koszul, DimFamily::Classical);
  CHECK(ck.ok());
  CHECK(ck.l[0].value == 0);
  CHECK(ck.n[0].value == 1);
  CHECK(ck.results[0].applicable);
}

TEST_CASE("pd of a module equals id of its dual") {
  std::mt19937_64 rng(21);
  std::vector<Ring> rings = {dual_numbers(), square_zero(), make_ring("artin(F3; x, y | x^2, y^2)")};
  for (int t = 0; t < 20; ++t) {
    const Ring& r = rings[static_cast<std::size_t>(t) % rings.size()];
    FgModule m = random_module(r, rng);
    CHECK(same_value(projective_dimension(m), injective_dimension(matlis_dual(m))));
  }
}

TEST_CASE("semi-free replacements") {
  auto a = dual_numbers();
  FgModule k = FgModule::residue_field(a);
  SemiFree sk = semi_free_resolution(Complex::concentrated(k, 0), 4);
  CHECK_FALSE(sk.complete);
  for (int n = 0; n <= 4; ++n) CHECK(sk.free.at(n).free_rank() == 1);
  ResolutionCheck c = verify_semi_free(sk);
  CHECK(c.exact);
  CHECK(c.minimal);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    Complex x = random_complex(t % 2 ? a : square_zero(), -1, 3, rng);
    SemiFree s = semi_free_resolution(x, x.is_zero() ? 2 : x.hi() + 2);
    ResolutionCheck v = verify_semi_free(s);
    CHECK(v.exact);
    CHECK(v.minimal);
  }

  // Complexes of frees with free homology have finite replacements.
  auto r = make_ring("poly(F101; x, y)");
  RandomShape frees;
  frees.free_only = true;
  for (int t = 0; t < 20; ++t) {
    Complex y = random_complex(r, 0, 2, rng, frees);
    Complex z = random_complex(r, 0, 1, rng, frees);
    Complex x = direct_sum({cone(ChainMap::identity(y)).complex, z}).complex;
    SemiFree s = semi_free_resolution(x);
    CHECK(s.complete);
    CHECK(verify_semi_free(s).exact);
  }
}
