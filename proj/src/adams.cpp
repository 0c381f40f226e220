#include "homlevel/adams.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace homlevel {

std::string to_string(AdamsSide s) { return s == AdamsSide::Projective ? "projective" : "injective"; }

ChainMap rewrap(const ChainMap& f, const Complex& src, const Complex& tgt) {
  std::map<int, ModuleMap> c;
  for (int n = src.lo(); n <= src.hi(); ++n) c.emplace(n, f.at(n));
  return ChainMap::unchecked(src, tgt, std::move(c));
}

namespace {

int lo_all(std::initializer_list<const Complex*> xs) {
  int lo = 0;
  bool any = false;
  for (const Complex* x : xs)
    if (!x->is_zero()) {
      lo = any ? std::min(lo, x->lo()) : x->lo();
      any = true;
    }
  return lo;
}

int hi_all(std::initializer_list<const Complex*> xs) {
  int hi = -1;
  bool any = false;
  for (const Complex* x : xs)
    if (!x->is_zero()) {
      hi = any ? std::max(hi, x->hi()) : x->hi();
      any = true;
    }
  return any ? hi : lo_all(xs) - 1;
}

Complex zero_differential(const Ring& r, int lo, const std::vector<FgModule>& ms) {
  if (ms.empty()) return Complex::zero(r);
  std::vector<ModuleMap> ds;
  for (std::size_t i = 1; i < ms.size(); ++i) ds.push_back(ModuleMap::zero(ms[i], ms[i - 1]));
  return Complex(r, lo, ms, std::move(ds));
}

}  // namespace

AdamsStep adams_step_proj(const Complex& m, const AdamsOptions& opt) {
  const Ring& r = m.ring();
  std::optional<std::mt19937_64> rng;
  if (opt.perturb_seed) rng.emplace(*opt.perturb_seed);
  AdamsStep s;
  s.source = m;
  std::vector<FgModule> gens;
  std::map<int, ModuleMap> phi;
  for (int n = m.lo(); n <= m.hi(); ++n) {
    HomologyData hd = homology_data(m, n);
    if (is_zero(hd.h)) {
      gens.push_back(FgModule::zero(r));
      continue;
    }
    ModuleMap cover = minimal_cover(hd.h);
    ModuleMap cyc = hd.z_inc * lift_through_epi(cover, hd.h_proj);
    if (rng && n + 1 <= m.hi()) {
      ModuleMap bd = m.d(n + 1) * random_hom(cover.source(), m.at(n + 1), *rng);
      for (int tries = 0; bd.is_zero() && tries < 8; ++tries)
        bd = m.d(n + 1) * random_hom(cover.source(), m.at(n + 1), *rng);
      cyc = cyc + bd;
    }
    gens.push_back(cover.source());
    phi.emplace(n, cyc);
  }
  s.layer = zero_differential(r, m.lo(), gens);
  s.map = ChainMap(s.layer, m, std::move(phi));
  Cone c = cone(s.map);
  s.next = shift(c.complex, -1);
  s.link = rewrap(shift(c.proj, -1), s.next, s.layer);
  s.connecting = rewrap(c.inc, m, shift(s.next, 1));
  s.triangle = cone_triangle(s.map);

  std::ostringstream why;
  s.checks.homology_condition = s.checks.ses_exact = true;
  const int lo = lo_all({&m, &s.layer, &s.next}), hi = hi_all({&m, &s.layer, &s.next});
  for (int n = lo; n <= hi; ++n) {
    HomologyData hm = homology_data(m, n), hf = homology_data(s.layer, n), ho = homology_data(s.next, n);
    ModuleMap hphi = homology_map(s.map, hf, hm);
    if (!is_surjective(hphi)) {
      s.checks.homology_condition = false;
      why << "H_" << n << "(phi) not onto; ";
    }
    if (!is_short_exact({homology_map(s.link, ho, hf), hphi})) {
      s.checks.ses_exact = false;
      why << "homology sequence not exact in degree " << n << "; ";
    }
  }
  TriangleCheck tc = verify_triangle(s.triangle);
  s.checks.triangle = tc.ok();
  if (!tc.ok()) why << "triangle: " << tc.detail;
  s.checks.detail = why.str();
  return s;
}

AdamsStep adams_step_inj(const Complex& m, const AdamsOptions& opt) {
  if (!m.ring()->is_artin()) throw WrongMode("injective Adams steps need an Artin ring");
  AdamsStep p = adams_step_proj(dual(m), opt);
  AdamsStep s;
  s.source = m;
  s.layer = dual(p.layer);
  // M^vv is M on the nose: the actions and differentials are transposed twice.
  ChainMap d = dual(p.map);
  std::map<int, ModuleMap> iota;
  for (int n = m.lo(); n <= m.hi(); ++n)
    if (n >= s.layer.lo() && n <= s.layer.hi())
      iota.emplace(n, ModuleMap::unchecked(m.at(n), s.layer.at(n), d.at(n).matrix(), {}));
  s.map = ChainMap(m, s.layer, std::move(iota));
  Cone c = cone(s.map);
  s.next = c.complex;
  s.link = c.inc;
  s.connecting = c.proj;
  s.triangle = cone_triangle(s.map);

  std::ostringstream why;
  s.checks.homology_condition = s.checks.ses_exact = true;
  const int lo = lo_all({&m, &s.layer, &s.next}), hi = hi_all({&m, &s.layer, &s.next});
  for (int n = lo; n <= hi; ++n) {
    HomologyData hm = homology_data(m, n), hi_ = homology_data(s.layer, n), ht = homology_data(s.next, n);
    ModuleMap hiota = homology_map(s.map, hm, hi_);
    if (!is_injective(hiota)) {
      s.checks.homology_condition = false;
      why << "H_" << n << "(iota) not one-to-one; ";
    }
    if (!is_short_exact({hiota, homology_map(s.link, hi_, ht)})) {
      s.checks.ses_exact = false;
      why << "homology sequence not exact in degree " << n << "; ";
    }
  }
  TriangleCheck tc = verify_triangle(s.triangle);
  s.checks.triangle = tc.ok();
  if (!tc.ok()) why << "triangle: " << tc.detail;
  s.checks.detail = why.str();
  return s;
}

bool AdamsTower::verified() const {
  return std::all_of(steps.begin(), steps.end(), [](const AdamsStep& s) { return s.checks.ok(); });
}

AdamsTower adams_tower(const Complex& m, AdamsSide side, int n, const AdamsOptions& opt) {
  if (n < 0) throw Error("tower length must be non-negative");
  AdamsTower t;
  t.side = side;
  t.base = m;
  Complex cur = m;
  for (int i = 0; i < n; ++i) {
    AdamsOptions o = opt;
    if (o.perturb_seed) o.perturb_seed = *o.perturb_seed + static_cast<std::uint64_t>(i);
    AdamsStep s = side == AdamsSide::Projective ? adams_step_proj(cur, o) : adams_step_inj(cur, o);
    cur = s.next;
    t.steps.push_back(std::move(s));
  }
  return t;
}

namespace {

nlohmann::json per_degree(const Complex& x, bool homology_of) {
  nlohmann::json out = nlohmann::json::object();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    FgModule m = homology_of ? homology(x, n) : x.at(n);
    if (is_zero(m)) continue;
    nlohmann::json e;
    e["generators"] = minimal_generators(m);
    if (m.is_artin()) e["dim"] = m.dim();
    out[std::to_string(n)] = e;
  }
  return out;
}

}  // namespace

nlohmann::json AdamsTower::to_json() const {
  nlohmann::json j;
  j["side"] = to_string(side);
  j["base_homology"] = per_degree(base, true);
  j["steps"] = nlohmann::json::array();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const AdamsStep& s = steps[i];
    nlohmann::json e;
    e["index"] = i;
    e["layer"] = per_degree(s.layer, false);
    e["next_homology"] = per_degree(s.next, true);
    e["homology_condition"] = s.checks.homology_condition;
    e["ses_exact"] = s.checks.ses_exact;
    e["triangle"] = s.checks.triangle;
    if (!s.checks.detail.empty()) e["detail"] = s.checks.detail;
    j["steps"].push_back(e);
  }
  j["verified"] = verified();
  return j;
}

nlohmann::json SpliceReport::to_json() const {
  nlohmann::json j;
  j["exact"] = exact;
  j["terms"] = length;
  if (!exact) {
    j["first_failure"] = first_failure;
    j["detail"] = detail;
  }
  return j;
}

namespace {

// H(X) as one module: (+)_n H_n(X) over a fixed window.
struct FlatHomology {
  std::vector<HomologyData> data;
  DirectSum sum;
};

FlatHomology flatten_homology(const Complex& x, int lo, int hi) {
  FlatHomology f;
  std::vector<FgModule> hs;
  for (int n = lo; n <= hi; ++n) {
    f.data.push_back(homology_data(x, n));
    hs.push_back(f.data.back().h);
  }
  f.sum = direct_sum(hs);
  return f;
}

ModuleMap flatten_map(const ChainMap& g, const FlatHomology& src, const FlatHomology& tgt) {
  const std::size_t k = src.data.size();
  std::vector<std::vector<ModuleMap>> blocks(k, std::vector<ModuleMap>(k));
  for (std::size_t i = 0; i < k; ++i) blocks[i][i] = homology_map(g, src.data[i], tgt.data[i]);
  return block_map(src.sum, tgt.sum, blocks);
}

}  // namespace

SpliceReport verify_splice(const AdamsTower& t) {
  const std::size_t n = t.steps.size();
  if (n == 0) throw Error("splicing needs a tower with at least one step");
  std::vector<const Complex*> terms;
  std::vector<ChainMap> maps;  // maps[i] : terms[i] -> terms[i+1]
  if (t.side == AdamsSide::Projective) {
    terms.push_back(&t.steps[n - 1].next);
    maps.push_back(t.steps[n - 1].link);
    for (std::size_t k = n; k-- > 0;) {
      terms.push_back(&t.steps[k].layer);
      maps.push_back(k > 0 ? t.steps[k - 1].link * t.steps[k].map : t.steps[0].map);
    }
    terms.push_back(&t.base);
  } else {
    terms.push_back(&t.base);
    maps.push_back(t.steps[0].map);
    for (std::size_t k = 0; k < n; ++k) {
      terms.push_back(&t.steps[k].layer);
      maps.push_back(k + 1 < n ? t.steps[k + 1].map * t.steps[k].link : t.steps[k].link);
    }
    terms.push_back(&t.steps[n - 1].next);
  }
  int lo = 0, hi = -1;
  bool any = false;
  for (const Complex* x : terms)
    if (!x->is_zero()) {
      lo = any ? std::min(lo, x->lo()) : x->lo();
      hi = any ? std::max(hi, x->hi()) : x->hi();
      any = true;
    }
  SpliceReport rep;
  rep.length = static_cast<int>(terms.size());
  if (!any) return rep;
  std::vector<FlatHomology> flat;
  for (const Complex* x : terms) flat.push_back(flatten_homology(*x, lo, hi));
  std::vector<ModuleMap> fm;
  for (std::size_t i = 0; i < maps.size(); ++i) fm.push_back(flatten_map(maps[i], flat[i], flat[i + 1]));

  auto fail = [&](int pos, const std::string& why) {
    if (!rep.exact) return;
    rep.exact = false;
    rep.first_failure = pos;
    rep.detail = why;
  };
  if (!is_injective(fm.front())) fail(0, "first map not one-to-one");
  for (std::size_t i = 1; i < fm.size(); ++i)
    if (!is_exact_at(fm[i - 1], fm[i])) fail(static_cast<int>(i), "not exact at term " + std::to_string(i));
  if (!is_surjective(fm.back())) fail(rep.length - 1, "last map not onto");
  return rep;
}

}  // namespace homlevel
