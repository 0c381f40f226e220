#include <algorithm>
#include <map>

#include "homlevel/module.hpp"

namespace homlevel {

namespace {

using Images = std::vector<PolyVec>;

std::vector<int> relation_degrees(const FgModule& m) {
  std::vector<int> out;
  for (const auto& r : m.relations()) out.push_back(r.degree(m.gen_degrees()));
  return out;
}

// Lifter for elements of the target presented by `target` over the columns
// `cols` (images of some generators) together with the target relations.
SubmoduleLifter lifter_over(const FgModule& target, const Images& cols, const std::vector<int>& col_degrees) {
  Images all = cols;
  std::vector<int> degs = col_degrees;
  for (const auto& r : target.relations()) all.push_back(r);
  for (int d : relation_degrees(target)) degs.push_back(d);
  return SubmoduleLifter(all, degs, target.ngens(), target.gen_degrees(), target.field(),
                         config().grobner_pair_budget);
}

Images unit_images(const FgModule& m) {
  Images out;
  for (int j = 0; j < m.ngens(); ++j) out.push_back(m.reduce(PolyVec::unit(j, m.field().one())));
  return out;
}

// The submodule of R^g generated by `gens` (degrees `degs`) as a module:
// generators gens, relations = syzygies of gens modulo `ambient_rels`.
FgModule submodule_presentation(const FgModule& ambient, const Images& gens, const std::vector<int>& degs) {
  const int s = static_cast<int>(gens.size());
  SubmoduleLifter lift = lifter_over(ambient, gens, degs);
  Images rels;
  for (const auto& z : lift.syzygies()) {
    PolyVec r = z.slice(0, s);
    if (!r.is_zero()) rels.push_back(r);
  }
  return FgModule::graded(ambient.ring(), degs, std::move(rels));
}

// Composes a pruning with an inclusion-like map into `ambient`.
Kernel pruned_kernel(const FgModule& k, const Images& into, const FgModule& ambient) {
  ModuleMap inc = ModuleMap::unchecked(k, ambient, {}, into);
  Pruned p = prune(k);
  return {p.module, inc * p.to};
}

}  // namespace

// ---------------------------------------------------------------- kernels etc.

Kernel kernel(const ModuleMap& f) {
  const FgModule& m = f.source();
  const FgModule& n = f.target();
  const Field& fld = m.field();
  if (m.is_artin()) {
    Mat kb = kernel_basis(f.matrix(), fld);
    std::vector<Mat> acts;
    for (const auto& x : m.actions()) acts.push_back(*solve(kb, x * kb, fld));
    FgModule k = FgModule::from_action(m.ring(), kb.cols(), std::move(acts));
    return {k, ModuleMap::unchecked(k, m, kb, {})};
  }
  // Preimage of the relations of n in R^{g_m}: generators U.
  SubmoduleLifter lift = lifter_over(n, f.images(), m.gen_degrees());
  Images u;
  std::vector<int> udeg;
  for (std::size_t i = 0; i < lift.syzygies().size(); ++i) {
    PolyVec v = m.reduce(lift.syzygies()[i].slice(0, m.ngens()));
    if (v.is_zero()) continue;
    u.push_back(v);
    udeg.push_back(lift.syzygy_degrees()[i]);
  }
  FgModule k = submodule_presentation(m, u, udeg);
  return pruned_kernel(k, u, m);
}

Cokernel cokernel(const ModuleMap& f) {
  const FgModule& n = f.target();
  if (n.is_artin()) {
    Quotient q = quotient(f.matrix(), n.dim(), n.field());
    std::vector<Mat> acts;
    for (const auto& x : n.actions()) acts.push_back(q.projection * x * q.section);
    FgModule c = FgModule::from_action(n.ring(), q.projection.rows(), std::move(acts));
    return {c, ModuleMap::unchecked(n, c, q.projection, {})};
  }
  Images rels = n.relations();
  for (const auto& im : f.images())
    if (!im.is_zero()) rels.push_back(im);
  FgModule c = FgModule::graded(n.ring(), n.gen_degrees(), std::move(rels));
  ModuleMap proj = ModuleMap::unchecked(n, c, {}, unit_images(c));
  Pruned p = prune(c);
  return {p.module, p.from * proj};
}

Image image(const ModuleMap& f) {
  const FgModule& m = f.source();
  const FgModule& n = f.target();
  const Field& fld = m.field();
  if (m.is_artin()) {
    Mat ib = column_basis(f.matrix(), fld);
    std::vector<Mat> acts;
    for (const auto& x : n.actions()) acts.push_back(*solve(ib, x * ib, fld));
    FgModule im = FgModule::from_action(m.ring(), ib.cols(), std::move(acts));
    Mat epi = *solve(ib, f.matrix(), fld);
    return {im, ModuleMap::unchecked(m, im, epi, {}), ModuleMap::unchecked(im, n, ib, {})};
  }
  Images gens;
  std::vector<int> degs;
  std::vector<int> slot(f.images().size(), -1);
  for (std::size_t j = 0; j < f.images().size(); ++j) {
    if (f.images()[j].is_zero()) continue;
    slot[j] = static_cast<int>(gens.size());
    gens.push_back(f.images()[j]);
    degs.push_back(m.gen_degrees()[j]);
  }
  FgModule im = submodule_presentation(n, gens, degs);
  Images epi_images;
  for (int s : slot)
    epi_images.push_back(s < 0 ? PolyVec() : im.reduce(PolyVec::unit(s, fld.one())));
  ModuleMap epi = ModuleMap::unchecked(m, im, {}, epi_images);
  ModuleMap mono = ModuleMap::unchecked(im, n, {}, gens);
  Pruned p = prune(im);
  return {p.module, p.from * epi, mono * p.to};
}

DirectSum direct_sum(const std::vector<FgModule>& ms) {
  if (ms.empty()) throw Error("direct_sum of an empty list needs a ring");
  const Ring& r = ms[0].ring();
  const Field& fld = r->field();
  DirectSum out;
  bool all_free = true;
  for (const auto& m : ms) all_free &= m.is_standard_free();
  if (r->is_artin()) {
    std::vector<Index> off;
    Index total = 0;
    for (const auto& m : ms) {
      off.push_back(total);
      total += m.dim();
    }
    std::vector<Mat> acts;
    for (int v = 0; v < r->nvars(); ++v) {
      std::vector<Mat> blocks;
      for (const auto& m : ms) blocks.push_back(m.actions()[static_cast<std::size_t>(v)]);
      acts.push_back(block_diagonal(blocks, fld));
    }
    if (all_free) {
      int rank = 0;
      for (const auto& m : ms) rank += m.free_rank();
      out.module = FgModule::free(r, rank);
    } else {
      out.module = FgModule::from_action(r, total, std::move(acts));
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      Mat inj = zeros(fld, total, ms[k].dim());
      inj.block(off[k], 0, ms[k].dim(), ms[k].dim()) = identity(fld, ms[k].dim());
      out.inj.push_back(ModuleMap::unchecked(ms[k], out.module, inj, {}));
      out.proj.push_back(ModuleMap::unchecked(out.module, ms[k], inj.transpose(), {}));
    }
    return out;
  }
  std::vector<int> degs;
  Images rels;
  std::vector<int> off;
  for (const auto& m : ms) {
    off.push_back(static_cast<int>(degs.size()));
    for (const auto& rel : m.relations()) rels.push_back(rel.shift_components(off.back()));
    degs.insert(degs.end(), m.gen_degrees().begin(), m.gen_degrees().end());
  }
  out.module = FgModule::graded(r, degs, std::move(rels));
  for (std::size_t k = 0; k < ms.size(); ++k) {
    Images inj, proj;
    for (int j = 0; j < ms[k].ngens(); ++j)
      inj.push_back(out.module.reduce(PolyVec::unit(off[k] + j, fld.one())));
    for (int j = 0; j < out.module.ngens(); ++j) {
      const int local = j - off[k];
      proj.push_back(local >= 0 && local < ms[k].ngens()
                         ? ms[k].reduce(PolyVec::unit(local, fld.one()))
                         : PolyVec());
    }
    out.inj.push_back(ModuleMap::unchecked(ms[k], out.module, {}, inj));
    out.proj.push_back(ModuleMap::unchecked(out.module, ms[k], {}, proj));
  }
  return out;
}

ModuleMap block_map(const DirectSum& src, const DirectSum& tgt,
                    const std::vector<std::vector<ModuleMap>>& blocks) {
  ModuleMap out = ModuleMap::zero(src.module, tgt.module);
  for (std::size_t i = 0; i < tgt.inj.size(); ++i)
    for (std::size_t j = 0; j < src.proj.size(); ++j) {
      const ModuleMap& b = blocks[i][j];
      if (b.is_null() || b.is_zero()) continue;
      out = out + tgt.inj[i] * b * src.proj[j];
    }
  return out;
}

// ---------------------------------------------------------------- factorization

ModuleMap factor_through_mono(const ModuleMap& g, const ModuleMap& mono) {
  const Field& fld = g.source().field();
  if (g.source().is_artin()) {
    auto x = solve(mono.matrix(), g.matrix(), fld);
    if (!x) throw VerificationError("map does not factor through the given monomorphism");
    return ModuleMap::unchecked(g.source(), mono.source(), *x, {});
  }
  SubmoduleLifter lift = lifter_over(mono.target(), mono.images(), mono.source().gen_degrees());
  Images out;
  for (const auto& im : g.images()) {
    auto c = lift.lift(im);
    if (!c) throw VerificationError("map does not factor through the given monomorphism");
    out.push_back(mono.source().reduce(c->slice(0, mono.source().ngens())));
  }
  ModuleMap h = ModuleMap::unchecked(g.source(), mono.source(), {}, out);
  if (!(mono * h == g)) throw VerificationError("factorization through the monomorphism failed");
  return h;
}

ModuleMap factor_through_epi(const ModuleMap& g, const ModuleMap& epi) {
  const Field& fld = g.source().field();
  const FgModule& c = epi.target();
  if (c.is_artin()) {
    auto s = solve(epi.matrix(), identity(fld, c.dim()), fld);
    if (!s) throw VerificationError("factor_through_epi: map is not surjective");
    ModuleMap h = ModuleMap::unchecked(c, g.target(), g.matrix() * *s, {});
    if (!(h * epi == g)) throw VerificationError("map does not vanish on the kernel of the epimorphism");
    return h;
  }
  SubmoduleLifter lift = lifter_over(c, epi.images(), epi.source().gen_degrees());
  Images out;
  for (int j = 0; j < c.ngens(); ++j) {
    auto pre = lift.lift(PolyVec::unit(j, fld.one()));
    if (!pre) throw VerificationError("factor_through_epi: map is not surjective");
    out.push_back(g.apply(pre->slice(0, epi.source().ngens())));
  }
  ModuleMap h = ModuleMap::from_images(c, g.target(), out);
  if (!(h * epi == g)) throw VerificationError("map does not vanish on the kernel of the epimorphism");
  return h;
}

ModuleMap lift_through_epi(const ModuleMap& g, const ModuleMap& epi) {
  const FgModule& f = g.source();
  const Field& fld = f.field();
  if (!f.is_standard_free()) throw Error("lift_through_epi needs a free source");
  if (f.is_artin()) {
    std::vector<Vec> coords;
    for (int j = 0; j < f.free_rank(); ++j) {
      auto x = solve(epi.matrix(), Mat(g.generator_image(j)), fld);
      if (!x) throw VerificationError("lift_through_epi: image leaves the image of the epimorphism");
      coords.push_back(x->col(0));
    }
    return ModuleMap::from_generator_coords(f, epi.source(), coords);
  }
  SubmoduleLifter lift = lifter_over(epi.target(), epi.images(), epi.source().gen_degrees());
  Images out;
  for (const auto& im : g.images()) {
    auto pre = lift.lift(im);
    if (!pre) throw VerificationError("lift_through_epi: image leaves the image of the epimorphism");
    out.push_back(epi.source().reduce(pre->slice(0, epi.source().ngens())));
  }
  return ModuleMap::unchecked(f, epi.source(), {}, out);
}

// ---------------------------------------------------------------- generators

Pruned prune(const FgModule& m) {
  if (m.is_artin()) {
    ModuleMap id = ModuleMap::identity(m);
    return {m, id, id};
  }
  const Field& fld = m.field();
  const int g = m.ngens();
  Images rels = m.relations();
  Images subst;  // expression of each original generator in the survivors
  for (int j = 0; j < g; ++j) subst.push_back(PolyVec::unit(j, fld.one()));
  std::vector<bool> alive(static_cast<std::size_t>(g), true);

  auto substitute = [](const PolyVec& v, int j, const PolyVec& e) {
    Poly c = v.component(j);
    if (c.is_zero()) return v;
    return v - PolyVec::from_poly(c, j) + c * e;
  };

  for (;;) {
    int pick_rel = -1, pick_comp = -1;
    Scalar coef;
    for (std::size_t r = 0; r < rels.size() && pick_rel < 0; ++r)
      for (const auto& t : rels[r].terms())
        if (t.m.is_one()) {
          pick_rel = static_cast<int>(r);
          pick_comp = t.comp;
          coef = t.c;
          break;
        }
    if (pick_rel < 0) break;
    const PolyVec& r = rels[static_cast<std::size_t>(pick_rel)];
    // e_j = -(r - c e_j) / c
    PolyVec e = (-coef.inverse()) * (r - PolyVec::from_sorted_terms({{pick_comp, Monomial::one(), coef}}));
    Images next;
    for (std::size_t k = 0; k < rels.size(); ++k) {
      if (static_cast<int>(k) == pick_rel) continue;
      PolyVec s = substitute(rels[k], pick_comp, e);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    rels = std::move(next);
    for (auto& s : subst) s = substitute(s, pick_comp, e);
    alive[static_cast<std::size_t>(pick_comp)] = false;
  }

  std::vector<int> table(static_cast<std::size_t>(g), -1);
  std::vector<int> degs;
  for (int j = 0; j < g; ++j)
    if (alive[static_cast<std::size_t>(j)]) {
      table[static_cast<std::size_t>(j)] = static_cast<int>(degs.size());
      degs.push_back(m.gen_degrees()[static_cast<std::size_t>(j)]);
    }
  if (static_cast<int>(degs.size()) == g && rels.size() == m.relations().size()) {
    ModuleMap id = ModuleMap::identity(m);
    return {m, id, id};
  }
  Images new_rels;
  for (const auto& r : rels) {
    PolyVec s = r.remap(table);
    if (!s.is_zero() && std::find(new_rels.begin(), new_rels.end(), s) == new_rels.end())
      new_rels.push_back(s);
  }
  FgModule p = FgModule::graded(m.ring(), degs, std::move(new_rels));
  Images to, from;
  for (int j = 0; j < g; ++j)
    if (alive[static_cast<std::size_t>(j)]) to.push_back(m.reduce(PolyVec::unit(j, fld.one())));
  for (const auto& s : subst) from.push_back(p.reduce(s.remap(table)));
  return {p, ModuleMap::unchecked(p, m, {}, to), ModuleMap::unchecked(m, p, {}, from)};
}

ModuleMap minimal_cover(const FgModule& m) {
  const Field& fld = m.field();
  if (m.is_artin()) {
    Mat mm = zeros(fld, m.dim(), 0);
    for (const auto& x : m.actions()) mm = hstack(mm, x);
    Quotient q = quotient(column_basis(mm, fld), m.dim(), fld);
    const int r = static_cast<int>(q.section.cols());
    FgModule f = FgModule::free(m.ring(), r);
    std::vector<Vec> coords;
    for (int j = 0; j < r; ++j) coords.push_back(q.section.col(j));
    return ModuleMap::from_generator_coords(f, m, coords);
  }
  Pruned p = prune(m);
  FgModule f = FgModule::free_graded(m.ring(), p.module.gen_degrees());
  return ModuleMap::unchecked(f, m, {}, p.to.images());
}

int minimal_generators(const FgModule& m) { return minimal_cover(m).source().free_rank(); }

bool is_zero(const FgModule& m) {
  if (m.is_artin()) return m.dim() == 0;
  for (int j = 0; j < m.ngens(); ++j)
    if (!m.reduce(PolyVec::unit(j, m.field().one())).is_zero()) return false;
  return true;
}

bool is_injective(const ModuleMap& f) {
  if (f.source().is_artin()) return rank(f.matrix(), f.source().field()) == f.source().dim();
  return is_zero(kernel(f).module);
}

bool is_surjective(const ModuleMap& f) {
  if (f.source().is_artin()) return rank(f.matrix(), f.source().field()) == f.target().dim();
  return is_zero(cokernel(f).module);
}

bool is_isomorphism(const ModuleMap& f) {
  if (f.source().is_artin())
    return f.source().dim() == f.target().dim() && is_injective(f);
  return is_surjective(f) && is_injective(f);
}

ModuleMap inverse(const ModuleMap& f) {
  if (!is_isomorphism(f)) throw VerificationError("map is not an isomorphism");
  if (f.source().is_artin())
    return ModuleMap::unchecked(f.target(), f.source(), *homlevel::inverse(f.matrix(), f.source().field()), {});
  return factor_through_epi(ModuleMap::identity(f.source()), f);
}

// ---------------------------------------------------------------- hom spaces

std::vector<ModuleMap> hom_space(const FgModule& m, const FgModule& n) {
  const Field& fld = m.field();
  std::vector<ModuleMap> out;
  if (m.is_artin()) {
    const Index dm = m.dim(), dn = n.dim();
    const Index unknowns = dm * dn;  // H(i, j) at i + dn * j
    Mat eq = zeros(fld, static_cast<Index>(m.actions().size()) * unknowns, unknowns);
    for (std::size_t v = 0; v < m.actions().size(); ++v) {
      const Mat& xm = m.actions()[v];
      const Mat& xn = n.actions()[v];
      const Index base = static_cast<Index>(v) * unknowns;
      for (Index i = 0; i < dn; ++i)
        for (Index j = 0; j < dm; ++j) {
          const Index row = base + i + dn * j;
          for (Index k = 0; k < dm; ++k)
            if (!xm(k, j).is_zero()) eq(row, i + dn * k) += xm(k, j);
          for (Index k = 0; k < dn; ++k)
            if (!xn(i, k).is_zero()) eq(row, k + dn * j) -= xn(i, k);
        }
    }
    Mat kb = kernel_basis(eq, fld);
    for (Index c = 0; c < kb.cols(); ++c) {
      Mat h = zeros(fld, dn, dm);
      for (Index i = 0; i < dn; ++i)
        for (Index j = 0; j < dm; ++j) h(i, j) = kb(i + dn * j, c);
      out.push_back(ModuleMap::unchecked(m, n, h, {}));
    }
    return out;
  }
  // Unknowns: the image of generator j in the piece n_{deg e_j}.
  std::vector<Index> off;
  Index total = 0;
  for (int d : m.gen_degrees()) {
    off.push_back(total);
    total += n.piece_dim(d);
  }
  Mat eq = zeros(fld, 0, total);
  for (const auto& rel : m.relations()) {
    const int d = rel.degree(m.gen_degrees());
    Mat block = zeros(fld, n.piece_dim(d), total);
    for (int j = 0; j < m.ngens(); ++j) {
      Poly c = rel.component(j);
      if (c.is_zero()) continue;
      const int gj = m.gen_degrees()[static_cast<std::size_t>(j)];
      Mat mm = n.mult_matrix(c, gj, d);
      block.block(0, off[static_cast<std::size_t>(j)], mm.rows(), mm.cols()) += mm;
    }
    eq = vstack(eq, block);
  }
  Mat kb = kernel_basis(eq, fld);
  for (Index c = 0; c < kb.cols(); ++c) {
    Images images;
    for (int j = 0; j < m.ngens(); ++j) {
      const int gj = m.gen_degrees()[static_cast<std::size_t>(j)];
      images.push_back(n.element(gj, kb.block(off[static_cast<std::size_t>(j)], c, n.piece_dim(gj), 1)));
    }
    out.push_back(ModuleMap::unchecked(m, n, {}, std::move(images)));
  }
  return out;
}

Vec flatten(const ModuleMap& m) {
  const Field& f = m.source().field();
  if (m.source().is_artin()) {
    const Mat& a = m.matrix();
    Vec v(a.rows() * a.cols());
    for (Index c = 0; c < a.cols(); ++c)
      for (Index r = 0; r < a.rows(); ++r) v(c * a.rows() + r) = f.zero() + a(r, c);
    return v;
  }
  std::vector<Scalar> out;
  for (int j = 0; j < m.source().ngens(); ++j) {
    Vec c = m.target().coords(m.source().gen_degrees()[static_cast<std::size_t>(j)], m.images()[static_cast<std::size_t>(j)]);
    for (Index i = 0; i < c.size(); ++i) out.push_back(c(i));
  }
  Vec v(static_cast<Index>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) v(static_cast<Index>(i)) = out[i];
  return v;
}


ModuleMap random_hom(const FgModule& m, const FgModule& n, std::mt19937_64& rng) {
  ModuleMap out = ModuleMap::zero(m, n);
  for (const auto& h : hom_space(m, n)) out = out + m.field().random(rng) * h;
  return out;
}

namespace {

// Cheap necessary conditions for m ~= n; returns a reason when they fail.
std::optional<std::string> invariant_mismatch(const FgModule& m, const FgModule& n) {
  const Field& fld = m.field();
  if (m.is_artin()) {
    if (m.dim() != n.dim()) return "dimensions differ";
    if (minimal_generators(m) != minimal_generators(n)) return "minimal generator counts differ";
    for (std::size_t v = 0; v < m.actions().size(); ++v)
      if (rank(m.actions()[v], fld) != rank(n.actions()[v], fld)) return "action ranks differ";
    Mat sm = zeros(fld, 0, m.dim()), sn = zeros(fld, 0, n.dim());
    for (const auto& x : m.actions()) sm = vstack(sm, x);
    for (const auto& x : n.actions()) sn = vstack(sn, x);
    if (rank(sm, fld) != rank(sn, fld)) return "socle dimensions differ";
    return std::nullopt;
  }
  auto pm = prune(m).module.gen_degrees(), pn = prune(n).module.gen_degrees();
  std::sort(pm.begin(), pm.end());
  std::sort(pn.begin(), pn.end());
  if (pm != pn) return "minimal generator degrees differ";
  int top = 0;
  for (int d : pm) top = std::max(top, d);
  for (int a = 0; a <= top + 3; ++a)
    if (m.piece_dim(a) != n.piece_dim(a)) return "Hilbert functions differ in degree " + std::to_string(a);
  return std::nullopt;
}

bool quick_iso(const ModuleMap& f) {
  if (f.source().is_artin()) return is_isomorphism(f);
  int top = 0;
  for (int d : f.source().gen_degrees()) top = std::max(top, d);
  for (int a = 0; a <= top + 2; ++a) {
    Mat p = f.piece_matrix(a);
    if (p.rows() != p.cols() || rank(p, f.source().field()) != p.rows()) return false;
  }
  return is_isomorphism(f);
}

}  // namespace

IsoResult isomorphism(const FgModule& m, const FgModule& n) {
  if (is_zero(m) && is_zero(n)) return {Verdict::Yes, ModuleMap::zero(m, n), "both zero"};
  if (auto why = invariant_mismatch(m, n)) return {Verdict::No, std::nullopt, *why};
  auto basis = hom_space(m, n);
  if (basis.empty()) return {Verdict::No, std::nullopt, "no nonzero homomorphisms"};
  const Field& fld = m.field();
  const Config& cfg = config();
  const std::size_t r = basis.size();
  auto combine = [&](const std::vector<Scalar>& c) {
    ModuleMap h = ModuleMap::zero(m, n);
    for (std::size_t i = 0; i < r; ++i)
      if (!c[i].is_zero()) h = h + c[i] * basis[i];
    return h;
  };
  const std::uint32_t p = fld.characteristic();
  double candidates = 1;
  if (p != 0)
    for (std::size_t i = 0; i < r && candidates <= static_cast<double>(cfg.exhaustive_limit); ++i)
      candidates *= p;
  if (p != 0 && candidates <= static_cast<double>(cfg.exhaustive_limit)) {
    std::vector<std::int64_t> digits(r, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < r && ++digits[i] == static_cast<std::int64_t>(p)) digits[i++] = 0;
      if (i == r) break;
      std::vector<Scalar> c;
      for (auto d : digits) c.push_back(fld.from_int(d));
      ModuleMap h = combine(c);
      if (quick_iso(h)) return {Verdict::Yes, h, "exhaustive search"};
    }
    return {Verdict::No, std::nullopt, "no invertible map in the hom space (exhaustive)"};
  }
  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < cfg.sample_retries; ++t) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < r; ++i) c.push_back(fld.random(rng));
    ModuleMap h = combine(c);
    if (quick_iso(h)) return {Verdict::Yes, h, "random sample"};
  }
  return {Verdict::Inconclusive, std::nullopt,
          "no invertible map among " + std::to_string(cfg.sample_retries) + " random samples"};
}

FreeWitness is_free(const FgModule& m) {
  ModuleMap cover = minimal_cover(m);
  const int r = cover.source().free_rank();
  if (m.is_artin()) {
    if (m.dim() == r * m.ring()->dim()) return {true, r, cover};
    return {false, r, std::nullopt};
  }
  if (is_injective(cover)) return {true, r, cover};
  return {false, r, std::nullopt};
}

// ---------------------------------------------------------------- duality

FgModule matlis_dual(const FgModule& m) {
  if (!m.is_artin()) throw WrongMode("Matlis duality needs an artinian ring");
  std::vector<Mat> acts;
  for (const auto& x : m.actions()) acts.push_back(x.transpose());
  return FgModule::from_action(m.ring(), m.dim(), std::move(acts));
}

ModuleMap matlis_dual(const ModuleMap& f) {
  if (!f.source().is_artin()) throw WrongMode("Matlis duality needs an artinian ring");
  return ModuleMap::unchecked(matlis_dual(f.target()), matlis_dual(f.source()), f.matrix().transpose(), {});
}

FgModule matlis_E(const Ring& r) {
  if (!r->is_artin()) throw WrongMode("E = Hom_k(R, k) needs an artinian ring");
  return matlis_dual(FgModule::free(r, 1));
}

FgModule shift_degrees(const FgModule& m, int s) {
  if (m.is_artin() || s == 0) return m;
  std::vector<int> degs = m.gen_degrees();
  for (auto& d : degs) d -= s;
  return FgModule::graded(m.ring(), degs, m.relations());
}

ModuleMap shift_degrees(const ModuleMap& f, int s) {
  if (f.source().is_artin() || s == 0) return f;
  return ModuleMap::unchecked(shift_degrees(f.source(), s), shift_degrees(f.target(), s), {}, f.images());
}

ModuleMap multiplication(const FgModule& src, const FgModule& tgt,
                         const std::vector<std::vector<Poly>>& matrix) {
  if (!src.is_standard_free() || !tgt.is_standard_free())
    throw Error("multiplication needs standard free modules");
  const int g = tgt.free_rank(), s = src.free_rank();
  if (static_cast<int>(matrix.size()) != g)
    throw VerificationError("matrix has " + std::to_string(matrix.size()) + " rows, expected " +
                            std::to_string(g));
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != s)
      throw VerificationError("matrix row has " + std::to_string(row.size()) + " entries, expected " +
                              std::to_string(s));
  const Ring& r = src.ring();
  if (r->is_artin()) {
    const Index da = r->dim();
    Mat m = zeros(r->field(), g * da, s * da);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < s; ++j)
        m.block(i * da, j * da, da, da) =
            r->regular_action(matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return ModuleMap::unchecked(src, tgt, m, {});
  }
  Images images;
  for (int j = 0; j < s; ++j) {
    PolyVec col;
    for (int i = 0; i < g; ++i)
      col = col + PolyVec::from_poly(matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], i);
    images.push_back(col);
  }
  return ModuleMap::from_images(src, tgt, images);
}

}  // namespace homlevel
