#include <random>

#include "doctest.h"
#include "homlevel/complex.hpp"
#include "homlevel/random.hpp"
#include "oracles.hpp"

using namespace homlevel;

namespace {

Ring dual_numbers() { return make_ring("artin(F2; x | x^2)"); }

// K(x): A -x-> A in degrees 1, 0.
Complex koszul(const Ring& a) {
  FgModule aa = FgModule::free(a, 1);
  return Complex(a, 0, {aa, aa}, {multiplication(aa, aa, {{a->var(0)}})});
}

Index dim_of(const FgModule& m) { return m.is_artin() ? m.dim() : m.piece_dim(0); }

bool all_acc_exact(const Complex& x) {
  for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) {
    HomologyData hd = homology_data(x, n);
    for (const auto& s : acc_sequences(hd))
      if (!is_short_exact(s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("homology of small complexes") {
  auto a = dual_numbers();
  FgModule aa = FgModule::free(a, 1);
  Complex exact(a, 0, {aa, aa}, {ModuleMap::identity(aa)});
  CHECK(is_zero(homology(exact, 0)));
  CHECK(is_zero(homology(exact, 1)));
  CHECK(is_acyclic(exact));
  CHECK(is_zero(total_homology(exact)));
  CHECK_FALSE(homology_range(exact).has_value());

  FgModule k = FgModule::residue_field(a);
  Complex flat(a, 0, {aa, k}, {ModuleMap::zero(k, aa)});
  CHECK(flat.has_zero_differential());
  CHECK(isomorphism(homology(flat, 0), aa).verdict == Verdict::Yes);
  CHECK(isomorphism(homology(flat, 1), k).verdict == Verdict::Yes);

  Complex m0 = Complex::concentrated(aa, 0);
  CHECK(isomorphism(total_homology(m0), aa).verdict == Verdict::Yes);
}

TEST_CASE("Koszul complex on x over the dual numbers") {
  auto a = dual_numbers();
  Complex kx = koszul(a);
  // Oracle: d = x has matrix [[0,0],[1,0]] in the basis 1, x.
  std::vector<std::vector<long>> d = {{0, 0}, {1, 0}};
  long r = oracle::rank_mod(d, 2);
  CHECK(homology(kx, 1).dim() == 2 - r);
  CHECK(homology(kx, 0).dim() == 2 - r);
  FgModule k = FgModule::residue_field(a);
  CHECK(isomorphism(homology(kx, 0), k).verdict == Verdict::Yes);
  CHECK(isomorphism(homology(kx, 1), k).verdict == Verdict::Yes);
  CHECK(total_homology(kx).dim() == 2);
  auto range = homology_range(kx);
  REQUIRE(range.has_value());
  CHECK(range->first == 0);
  CHECK(range->second == 1);

  HomologyData hd = homology_data(kx, 0);
  auto acc = acc_sequences(hd);
  CHECK(acc[2].f.source().dim() == r);
  CHECK(acc[2].f.target().dim() == 2);
  CHECK(acc[2].g.target().dim() == 2 - r);
  for (const auto& s : acc) CHECK(is_short_exact(s));
}

TEST_CASE("accounting sequences on degenerate complexes") {
  auto a = dual_numbers();
  Complex z = Complex::zero(a);
  for (const auto& s : acc_sequences(homology_data(z, 0))) {
    CHECK(s.f.source().dim() == 0);
    CHECK(s.f.target().dim() == 0);
    CHECK(s.g.target().dim() == 0);
    CHECK(is_short_exact(s));
  }
  FgModule aa = FgModule::free(a, 1), k = FgModule::residue_field(a);
  Complex flat(a, 3, {k, aa}, {ModuleMap::zero(aa, k)});
  for (int i = 3; i <= 4; ++i) {
    auto acc2 = acc_sequences(homology_data(flat, i))[1];
    CHECK(acc2.f.source().dim() == 0);
    CHECK(acc2.f.target().dim() == flat.at(i).dim());
    CHECK(is_isomorphism(acc2.g));
  }
}

TEST_CASE("constructor verification") {
  auto a = dual_numbers();
  FgModule aa = FgModule::free(a, 1);
  ModuleMap id = ModuleMap::identity(aa);
  CHECK_THROWS_AS(Complex(a, 0, {aa, aa, aa}, {id, id}), VerificationError);
  ModuleMap x = multiplication(aa, aa, {{a->var(0)}});
  Complex kx(a, 0, {aa, aa, aa}, {x, x});
  CHECK(kx.lo() == 0);
  CHECK(kx.hi() == 2);
  // Zero ends are trimmed.
  FgModule zero = FgModule::zero(a);
  Complex padded(a, -1, {zero, aa, zero}, {ModuleMap::zero(aa, zero), ModuleMap::zero(zero, aa)});
  CHECK(padded.lo() == 0);
  CHECK(padded.hi() == 0);
  CHECK(padded.at(5).dim() == 0);

  Complex k1 = koszul(a);
  CHECK_THROWS_AS(ChainMap(k1, k1, {{0, id}}), VerificationError);
  CHECK_NOTHROW(ChainMap(k1, k1, {{0, id}, {1, id}}));
}

TEST_CASE("cones") {
  auto a = dual_numbers();
  Complex kx = koszul(a);
  CHECK(is_acyclic(cone(ChainMap::identity(kx)).complex));

  // Cone of the zero map is B (+) Sigma A with the same differential.
  FgModule aa = FgModule::free(a, 1);
  Complex b = Complex::concentrated(FgModule::residue_field(a), 1);
  Cone c0 = cone(ChainMap::zero(kx, b));
  ComplexSum s = direct_sum({shift(kx, 1), b});
  CHECK(c0.complex.lo() == s.complex.lo());
  CHECK(c0.complex.hi() == s.complex.hi());
  for (int n = s.complex.lo(); n <= s.complex.hi() + 1; ++n) {
    CHECK(c0.complex.at(n).same_as(s.complex.at(n)));
    CHECK(c0.complex.d(n) == s.complex.d(n));
  }

  // Cone of x on A in degree 0 is K(x): the identity matrices are a chain iso.
  Complex a0 = Complex::concentrated(aa, 0);
  Cone cx = cone(ChainMap(a0, a0, {{0, multiplication(aa, aa, {{a->var(0)}})}}));
  REQUIRE(cx.complex.lo() == 0);
  REQUIRE(cx.complex.hi() == 1);
  std::map<int, ModuleMap> iso;
  for (int n = 0; n <= 1; ++n)
    iso.emplace(n, ModuleMap::from_matrix(cx.complex.at(n), kx.at(n), identity(a->field(), 2)));
  ChainMap phi(cx.complex, kx, iso);
  CHECK(is_quasi_iso(phi));
  for (int n = 0; n <= 1; ++n) CHECK(is_isomorphism(phi.at(n)));
}

TEST_CASE("shift, truncation and duals") {
  auto a = dual_numbers();
  Complex kx = koszul(a);
  Complex s = shift(kx, 1);
  CHECK(s.lo() == 1);
  CHECK(s.d(2) == -kx.d(1));
  CHECK(homology(s, 1).dim() == homology(kx, 0).dim());
  Complex back = shift(s, -1);
  CHECK(back.d(1) == kx.d(1));

  Complex top = truncate_hard(kx, 1, Side::Above);
  CHECK(top.lo() == 1);
  CHECK(top.hi() == 1);
  CHECK_NOTHROW(ChainMap(kx, top, {{1, truncation_map(kx, 1, Side::Above).at(1)}}));
  ChainMap sub = truncation_map(kx, 0, Side::Below);
  CHECK(sub.source().hi() == 0);

  Complex dk = dual(kx);
  CHECK(dk.lo() == -1);
  CHECK(dk.hi() == 0);
  Complex ddk = dual(dk);
  CHECK(ddk.lo() == 0);
  CHECK(total_homology(ddk).dim() == 2);
}

TEST_CASE("chain map space") {
  auto a = dual_numbers();
  Complex kx = koszul(a);
  auto maps = chain_map_space(kx, kx);
  // Oracle: pairs (f1, f0) of multiplications by a + bx with x f1 = f0 x,
  // enumerated over F_2^4.
  int count = 0;
  for (int f1a = 0; f1a < 2; ++f1a)
    for (int f1b = 0; f1b < 2; ++f1b)
      for (int f0a = 0; f0a < 2; ++f0a)
        for (int f0b = 0; f0b < 2; ++f0b) count += (f1a == f0a);
  // Every A-linear endomorphism of A is multiplication, so the space has
  // dimension log2(count).
  int dim = 0;
  while ((1 << dim) < count) ++dim;
  CHECK(static_cast<int>(maps.size()) == dim);
  for (const auto& m : maps) CHECK_NOTHROW(ChainMap(kx, kx, {{0, m.at(0)}, {1, m.at(1)}}));
}

TEST_CASE("accounting sequences are exact on random complexes") {
  std::mt19937_64 rng(11);
  std::vector<Ring> rings = {make_ring("artin(F2; x | x^2)"), make_ring("artin(F2; x, y | (x,y)^2)"),
                             make_ring("artin(F3; x, y | x^2, y^2)")};
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const Ring& r = rings[static_cast<std::size_t>(t) % rings.size()];
    Complex x = random_complex(r, -1, 3, rng);
    CHECK(all_acc_exact(x));
    ++checked;
  }
  auto poly = make_ring("poly(F101; x, y)");
  for (int t = 0; t < 4; ++t) {
    Complex x = random_complex(poly, 0, 3, rng);
    CHECK(all_acc_exact(x));
    ++checked;
  }
  CHECK(checked == 34);
}

TEST_CASE("homology of a cone fits the long exact sequence") {
  std::mt19937_64 rng(5);
  std::vector<Ring> rings = {make_ring("artin(F2; x | x^2)"), make_ring("artin(F2; x, y | (x,y)^2)")};
  for (int t = 0; t < 20; ++t) {
    const Ring& r = rings[static_cast<std::size_t>(t) % rings.size()];
    Complex x = random_complex(r, 0, 2, rng), y = random_complex(r, 0, 2, rng);
    ChainMap f = random_chain_map(x, y, rng);
    Cone c = cone(f);
    Complex sx = shift(x, 1), sy = shift(y, 1);
    ChainMap sf = shift(f, 1);
    for (int n = -1; n <= 3; ++n) {
      HomologyData hx = homology_data(x, n), hy = homology_data(y, n), hc = homology_data(c.complex, n),
                   hsx = homology_data(sx, n), hsy = homology_data(sy, n);
      ModuleMap fa = homology_map(f, hx, hy);
      ModuleMap ib = homology_map(c.inc, hy, hc);
      ModuleMap pc = homology_map(c.proj, hc, hsx);
      ModuleMap sfd = homology_map(sf, hsx, hsy);
      CHECK(is_exact_at(fa, ib));
      CHECK(is_exact_at(ib, pc));
      CHECK(is_exact_at(pc, sfd));
    }
  }
}

TEST_CASE("triangles") {
  std::mt19937_64 rng(3);
  auto r = make_ring("artin(F2; x, y | (x,y)^2)");
  for (int t = 0; t < 5; ++t) {
    Complex x = random_complex(r, 0, 2, rng), y = random_complex(r, 0, 2, rng);
    ChainMap f = random_chain_map(x, y, rng);
    CHECK(verify_triangle(cone_triangle(f)).ok());

    // Degreewise split inclusion y -> y (+) x with quotient x.
    ComplexSum s = direct_sum({y, x});
    Triangle tri = ses_triangle(s.inj[0], s.proj[1]);
    TriangleCheck tc = verify_triangle(tri);
    CHECK(tc.ok());

    // Z(X) -> X -> Sigma B(X) is degreewise exact.
    Accounting acc = accounting(x);
    Triangle tz = ses_triangle(acc.z_inc, acc.to_sigma_b);
    CHECK(verify_triangle(tz).ok());
  }
  // A witness that is not a quasi-isomorphism is rejected.
  auto a = dual_numbers();
  Complex kx = koszul(a);
  ChainMap idk = ChainMap::identity(kx);
  Cone c = cone(idk);
  Triangle bad{idk, kx, ChainMap::zero(c.complex, kx)};
  TriangleCheck tc = verify_triangle(bad);
  CHECK(tc.witness_is_chain_map);
  CHECK_FALSE(tc.witness_is_quasi_iso);
  CHECK_FALSE(tc.ok());
}

TEST_CASE("graded complexes") {
  auto r = make_ring("poly(F101; x, y)");
  FgModule r0 = FgModule::free_graded(r, {0}), r1 = FgModule::free_graded(r, {1, 1}),
           r2 = FgModule::free_graded(r, {2});
  ModuleMap d1 = multiplication(r1, r0, {{r->var(0), r->var(1)}});
  ModuleMap d2 = multiplication(r2, r1, {{r->var(1)}, {-r->var(0)}});
  Complex k(r, 0, {r0, r1, r2}, {d1, d2});
  CHECK(is_zero(homology(k, 1)));
  CHECK(is_zero(homology(k, 2)));
  FgModule h0 = homology(k, 0);
  CHECK(dim_of(h0) == 1);
  CHECK(h0.piece_dim(1) == 0);
  CHECK(all_acc_exact(k));
  CHECK_FALSE(is_acyclic(k));
  CHECK(is_acyclic(cone(ChainMap::identity(k)).complex));
}
