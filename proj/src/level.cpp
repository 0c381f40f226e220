#include "homlevel/level.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <random>
#include <sstream>

namespace homlevel {

std::string to_string(LevelClass c) {
  switch (c) {
    case LevelClass::Proj: return "Proj";
    case LevelClass::Inj: return "Inj";
    case LevelClass::Flat: return "Flat";
    case LevelClass::GP: return "GP";
    case LevelClass::GI: return "GI";
    case LevelClass::GF: return "GF";
  }
  return "?";
}

LevelClass parse_level_class(const std::string& s) {
  std::string t;
  for (char ch : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "proj") return LevelClass::Proj;
  if (t == "inj") return LevelClass::Inj;
  if (t == "flat") return LevelClass::Flat;
  if (t == "gp") return LevelClass::GP;
  if (t == "gi") return LevelClass::GI;
  if (t == "gf") return LevelClass::GF;
  throw ParseError("unknown level class '" + s + "' (expected proj, inj, flat, gp, gi or gf)");
}

DimKind dimension_kind(LevelClass c) {
  switch (c) {
    case LevelClass::Proj: return DimKind::Pd;
    case LevelClass::Inj: return DimKind::Id;
    case LevelClass::Flat: return DimKind::Fd;
    case LevelClass::GP: return DimKind::Gpd;
    case LevelClass::GI: return DimKind::Gid;
    case LevelClass::GF: return DimKind::Gfd;
  }
  return DimKind::Pd;
}

namespace {

bool gorenstein_ring(const Ring& r) { return r->is_artin() && is_gorenstein_artin(*r).gorenstein; }

bool injective_module(const FgModule& m) { return m.is_artin() && is_free(matlis_dual(m)).free; }

}  // namespace

bool in_class(const FgModule& m, LevelClass c) {
  if (is_zero(m)) return true;
  switch (c) {
    case LevelClass::Proj:
    case LevelClass::Flat: return is_free(m).free;
    case LevelClass::Inj: return injective_module(m);
    case LevelClass::GP:
    case LevelClass::GF: return gorenstein_ring(m.ring()) || is_free(m).free;
    case LevelClass::GI: return m.is_artin() && (gorenstein_ring(m.ring()) || injective_module(m));
  }
  return false;
}

// ------------------------------------------------------------- derived homs

Vec HomotopyClassSpace::flatten(const ChainMap& f) const {
  const Field& fld = target.ring()->field();
  Vec v = Vec::Constant(width_, fld.zero());
  for (const auto& [n, off] : offset_) {
    Vec part = homlevel::flatten(f.at(n));
    v.segment(off, part.size()) = part;
  }
  return v;
}

bool HomotopyClassSpace::is_null_homotopic(const ChainMap& f) const {
  if (width_ == 0) return true;
  Vec v = flatten(f);
  if (is_zero(Mat(v))) return true;
  if (null_span.cols() == 0) return false;
  return in_span(v, null_span, target.ring()->field());
}

bool HomotopyClassSpace::is_zero_in_derived(const ChainMap& f) const {
  return is_null_homotopic(f * augmentation);
}

HomotopyClassSpace derived_hom(const Complex& m, const Complex& n) {
  const int top = n.is_zero() ? (m.is_zero() ? 0 : m.lo()) : n.hi() + 1;
  return derived_hom(semi_free_resolution(m, top), n);
}

HomotopyClassSpace derived_hom(const SemiFree& p, const Complex& n) {
  HomotopyClassSpace h;
  h.source = p.target;
  h.target = n;
  const Field& fld = n.ring()->field();
  Complex pf = p.free;
  if (n.is_zero() || pf.is_zero()) {
    h.free = n.is_zero() ? Complex::zero(n.ring()) : pf;
    h.augmentation = ChainMap::zero(h.free, p.target);
    h.null_span = zeros(fld, 0, 0);
    return h;
  }
  const int top = n.hi() + 1;
  if (!p.complete && p.top < top) throw Error("semi-free replacement not computed far enough for this target");
  if (pf.hi() > top) pf = truncate_hard(pf, top, Side::Below);
  h.free = pf;
  h.augmentation = rewrap(p.augmentation, pf, p.target);

  const int lo = std::max(pf.lo(), n.lo()), hi = std::min(pf.hi(), n.hi());
  for (int d = lo; d <= hi; ++d) {
    h.offset_[d] = h.width_;
    h.width_ += homlevel::flatten(ModuleMap::zero(pf.at(d), n.at(d))).size();
  }
  h.chain_maps = chain_map_space(pf, n);

  std::vector<Vec> cols;
  for (int k = pf.lo(); k <= pf.hi(); ++k) {
    if (is_zero(n.at(k + 1))) continue;
    for (const ModuleMap& hk : hom_space(pf.at(k), n.at(k + 1))) {
      Vec col = Vec::Constant(h.width_, fld.zero());
      // (d h + h d) for a homotopy concentrated in degree k.
      if (auto it = h.offset_.find(k); it != h.offset_.end()) {
        Vec part = homlevel::flatten(n.d(k + 1) * hk);
        col.segment(it->second, part.size()) = part;
      }
      if (auto it = h.offset_.find(k + 1); it != h.offset_.end() && k + 1 <= pf.hi()) {
        Vec part = homlevel::flatten(hk * pf.d(k + 1));
        col.segment(it->second, part.size()) = part;
      }
      cols.push_back(std::move(col));
    }
  }
  h.null_span = zeros(fld, h.width_, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) h.null_span.col(static_cast<Index>(j)) = cols[j];
  const Index null_rank = cols.empty() ? 0 : rank(h.null_span, fld);
  h.dimension = static_cast<Index>(h.chain_maps.size()) - null_rank;
  return h;
}

// ------------------------------------------------------------- level one

namespace {

bool all_homology(const Complex& x, bool (*pred)(const FgModule&)) {
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!pred(homology(x, n))) return false;
  return true;
}

bool free_module(const FgModule& m) { return is_zero(m) || is_free(m).free; }
bool injective_or_zero(const FgModule& m) { return is_zero(m) || injective_module(m); }

}  // namespace

LevelOneResult level_one_test(const Complex& m) {
  LevelOneResult r;
  if (m.is_zero() || is_acyclic(m)) {
    r.verdict = Verdict::Yes;
    r.reason = "acyclic";
    return r;
  }
  if (m.has_zero_differential()) {
    Accounting acc = accounting(m);
    std::map<int, ModuleMap> w;
    for (const auto& [n, hd] : acc.data) w.emplace(n, hd.h_proj * inverse(hd.z_inc));
    r.verdict = Verdict::Yes;
    r.reason = "zero differential";
    r.witness = ChainMap(m, acc.h, std::move(w));
    return r;
  }
  if (all_homology(m, free_module)) {
    AdamsStep s = adams_step_proj(m);
    if (s.checks.ok() && is_acyclic(s.next)) {
      r.verdict = Verdict::Yes;
      r.reason = "free homology: the Adams layer F -> M is a quasi-isomorphism";
      r.witness = s.map;
      return r;
    }
  }
  if (m.ring()->is_artin() && all_homology(m, injective_or_zero)) {
    AdamsStep s = adams_step_inj(m);
    if (s.checks.ok() && is_acyclic(s.next)) {
      r.verdict = Verdict::Yes;
      r.reason = "injective homology: the Adams layer M -> I is a quasi-isomorphism";
      r.witness = s.map;
      return r;
    }
  }

  // Search the maps P -> H(M) out of a replacement for one inducing
  // isomorphisms in every degree.
  Accounting acc = accounting(m);
  const Complex& hc = acc.h;
  HomotopyClassSpace hs = derived_hom(m, hc);
  const auto& basis = hs.chain_maps;
  std::vector<int> degrees;
  std::map<int, std::vector<ModuleMap>> hmaps;
  for (int n = hc.lo(); n <= hc.hi(); ++n) {
    if (is_zero(hc.at(n))) continue;
    degrees.push_back(n);
    HomologyData hp = homology_data(hs.free, n), hh = homology_data(hc, n);
    auto& v = hmaps[n];
    for (const auto& b : basis) v.push_back(homology_map(b, hp, hh));
    // Linear obstruction: the images of all chain maps must together cover H_n.
    bool onto = false;
    if (!v.empty()) {
      DirectSum src = direct_sum(std::vector<FgModule>(v.size(), hp.h));
      DirectSum tgt = direct_sum({hh.h});
      onto = is_surjective(block_map(src, tgt, {v}));
    }
    if (!onto) {
      r.verdict = Verdict::No;
      r.reason = "no chain map from a semi-free replacement is onto H_" + std::to_string(n) +
                 ", so no morphism M -> H(M) in D(R) is an isomorphism";
      return r;
    }
  }
  const Field& fld = m.ring()->field();
  auto combine = [&](const std::vector<Scalar>& c, int n) {
    const auto& v = hmaps.at(n);
    ModuleMap out = ModuleMap::zero(v.front().source(), v.front().target());
    for (std::size_t j = 0; j < v.size(); ++j) out = out + c[j] * v[j];
    return out;
  };
  auto works = [&](const std::vector<Scalar>& c) {
    for (int n : degrees)
      if (!is_isomorphism(combine(c, n))) return false;
    return true;
  };
  auto accept = [&](const std::vector<Scalar>& c, const std::string& how) {
    ChainMap w = ChainMap::zero(hs.free, hc);
    for (std::size_t j = 0; j < basis.size(); ++j) w = w + c[j] * basis[j];
    r.verdict = Verdict::Yes;
    r.reason = how;
    r.witness = w;
  };

  const std::uint64_t p = fld.characteristic();
  const std::size_t k = basis.size();
  std::uint64_t total = 1;
  bool small = p > 0;
  for (std::size_t j = 0; j < k && small; ++j) {
    if (total > config().exhaustive_limit / p) small = false;
    total *= p;
  }
  if (small) {
    std::vector<Scalar> c(k, fld.zero());
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t j = 0; j < k; ++j) {
        c[j] = fld.from_int(static_cast<long long>(t % p));
        t /= p;
      }
      if (works(c)) {
        accept(c, "found by exhaustive search over chain maps to H(M)");
        return r;
      }
    }
    r.verdict = Verdict::No;
    r.reason = "exhaustive search over all " + std::to_string(total) +
               " chain maps from a semi-free replacement to H(M) found no quasi-isomorphism";
    return r;
  }
  std::mt19937_64 rng(config().seed);
  for (int t = 0; t < config().sample_retries; ++t) {
    std::vector<Scalar> c;
    for (std::size_t j = 0; j < k; ++j) c.push_back(fld.random(rng));
    if (works(c)) {
      accept(c, "found by random sampling of chain maps to H(M)");
      return r;
    }
  }
  r.verdict = Verdict::Inconclusive;
  r.reason = "no quasi-isomorphism found in " + std::to_string(config().sample_retries) + " random samples";
  return r;
}

// ------------------------------------------------------------- upper bounds

bool UpperCertificate::verified() const {
  if (!failures.empty()) return false;
  return std::all_of(steps.begin(), steps.end(), [](const CertificateStep& s) { return s.check.ok(); });
}

nlohmann::json UpperCertificate::to_json() const {
  nlohmann::json j;
  j["known"] = known;
  if (known) j["value"] = value;
  j["route"] = route;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) j["steps"].push_back({{"triangle", s.role}, {"verified", s.check.ok()}});
  j["verified"] = verified();
  if (!failures.empty()) j["failures"] = failures;
  if (dimension) j["dimension"] = dimension->to_json();
  if (bound) j["bound"] = *bound;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

namespace {

CertificateStep make_step(std::string role, const Triangle& t) {
  return CertificateStep{std::move(role), t, verify_triangle(t)};
}

bool all_modules_in(const Complex& x, LevelClass c) {
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!in_class(x.at(n), c)) return false;
  return true;
}

int nonzero_modules(const Complex& x) {
  int k = 0;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!is_zero(x.at(n))) ++k;
  return k;
}

// X_{<=i-1} -> X_{<=i} -> Sigma^i X_i for every i above the bottom.
std::optional<UpperCertificate> brutal_route(const Complex& x, LevelClass c) {
  if (!all_modules_in(x, c)) return std::nullopt;
  UpperCertificate u;
  u.known = true;
  u.route = "brutal filtration by modules in the class";
  u.value = nonzero_modules(x);
  for (int i = x.lo() + 1; i <= x.hi(); ++i) {
    if (is_zero(x.at(i))) continue;
    Complex upto = truncate_hard(x, i, Side::Below);
    ChainMap inc = truncation_map(upto, i - 1, Side::Below);
    ChainMap top = truncation_map(upto, i, Side::Above);
    u.steps.push_back(make_step("X<=" + std::to_string(i - 1) + " -> X<=" + std::to_string(i) + " -> Sigma^" +
                                    std::to_string(i) + " X_" + std::to_string(i),
                                ses_triangle(inc, top)));
  }
  return u;
}

std::optional<UpperCertificate> formal_route(const Complex& x, LevelClass c, const LevelOneResult& one) {
  if (one.verdict != Verdict::Yes) return std::nullopt;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!in_class(homology(x, n), c)) return std::nullopt;
  UpperCertificate u;
  u.known = true;
  u.route = "isomorphic in D(R) to its homology, whose modules lie in the class";
  u.value = 1;
  u.notes.push_back(one.reason);
  return u;
}

// Proj / Inj: an Adams tower of length d + 1 ending in an acyclic complex.
UpperCertificate tower_route(const Complex& x, LevelClass c, int d) {
  UpperCertificate u;
  u.known = true;
  const AdamsSide side = c == LevelClass::Proj ? AdamsSide::Projective : AdamsSide::Injective;
  u.route = to_string(side) + " Adams tower";
  AdamsTower t = adams_tower(x, side, d + 1);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const AdamsStep& s = t.steps[i];
    if (!s.checks.ok()) u.failures.push_back("Adams step " + std::to_string(i) + ": " + s.checks.detail);
    if (s.layer.is_zero()) continue;
    ++u.value;
    const std::string k = std::to_string(i), k1 = std::to_string(i + 1);
    u.steps.push_back(make_step(side == AdamsSide::Projective
                                    ? "F^" + k + " -> Omega^" + k + " -> Sigma Omega^" + k1
                                    : "Theta^" + k + " -> I^" + k + " -> Theta^" + k1,
                                s.triangle));
  }
  if (!is_acyclic(t.steps.back().next)) u.failures.push_back("the tower does not end in an acyclic complex");
  return u;
}

// Flat / GP / GF: S = Omega^{n-1}(M), then Z(S) -> S -> Sigma B(S).
// GI: T = Theta^{n-1}(M), then B(T) -> T -> C(T).
UpperCertificate two_layer_route(const Complex& x, LevelClass c, int n) {
  UpperCertificate u;
  u.known = true;
  const bool gi = c == LevelClass::GI;
  const int pre = std::max(n - 1, 0);
  AdamsTower t = adams_tower(x, gi ? AdamsSide::Injective : AdamsSide::Projective, pre);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const AdamsStep& s = t.steps[i];
    if (!s.checks.ok()) u.failures.push_back("Adams step " + std::to_string(i) + ": " + s.checks.detail);
    if (s.layer.is_zero()) continue;
    ++u.value;
    const std::string k = std::to_string(i), k1 = std::to_string(i + 1);
    u.steps.push_back(make_step(gi ? "Theta^" + k + " -> I^" + k + " -> Theta^" + k1
                                   : "F^" + k + " -> Omega^" + k + " -> Sigma Omega^" + k1,
                                s.triangle));
  }
  Complex s = t.object(static_cast<std::size_t>(pre));
  if (!all_modules_in(s, c)) {
    if (gi) {
      SemiFree sf = semi_free_resolution(dual(s));
      if (!sf.complete) {
        u.known = false;
        u.failures.push_back("no finite injective replacement within the cutoff");
        return u;
      }
      Complex rep = dual(sf.free);
      ChainMap q = rewrap(dual(sf.augmentation), s, rep);
      if (!is_quasi_iso(q)) u.failures.push_back("injective replacement is not a quasi-isomorphism");
      s = rep;
      u.notes.push_back("replaced by a bounded complex of injective modules");
    } else {
      SemiFree sf = semi_free_resolution(s);
      if (!sf.complete) {
        u.known = false;
        u.failures.push_back("no finite free replacement within the cutoff");
        return u;
      }
      if (!is_quasi_iso(sf.augmentation)) u.failures.push_back("free replacement is not a quasi-isomorphism");
      s = sf.free;
      u.notes.push_back("replaced by a bounded complex of free modules");
    }
  }
  Accounting acc = accounting(s);
  const Complex& a = gi ? acc.b : acc.z;
  const Complex& b = gi ? acc.c : acc.b;
  if (!all_modules_in(a, c) || !all_modules_in(b, c))
    u.failures.push_back(gi ? "B(T) or C(T) has a module outside the class" : "Z(S) or B(S) has a module outside the class");
  u.value += (a.is_zero() ? 0 : 1) + (b.is_zero() ? 0 : 1);
  if (gi)
    u.steps.push_back(make_step("B(T) -> T -> C(T)", ses_triangle(acc.b_inc, acc.c_proj)));
  else
    u.steps.push_back(make_step("Z(S) -> S -> Sigma B(S)", ses_triangle(acc.z_inc, acc.to_sigma_b)));
  u.route = gi ? "injective Adams tower, then B(T) -> T -> C(T)" : "projective Adams tower, then Z(S) -> S -> Sigma B(S)";
  return u;
}

UpperCertificate upper_impl(const Complex& x, LevelClass c, const LevelOneResult* one) {
  if (x.is_zero() || is_acyclic(x)) {
    UpperCertificate u;
    u.known = true;
    u.route = "acyclic";
    u.value = 0;
    return u;
  }
  std::vector<UpperCertificate> found;
  std::vector<std::string> notes;
  std::optional<DimensionReport> rep;
  try {
    rep = dimension(total_homology(x), dimension_kind(c));
  } catch (const WrongMode& e) {
    notes.push_back(std::string("dimension unavailable: ") + e.what());
  } catch (const OutOfScope& e) {
    notes.push_back(std::string("dimension unavailable: ") + e.what());
  }
  std::optional<int> bound;
  if (rep && rep->finite()) {
    const int d = rep->state == DimState::NegInfinite ? 0 : rep->value;
    const bool tower = c == LevelClass::Proj || c == LevelClass::Inj;
    bound = tower ? d + 1 : std::max(2, d + 1);
    found.push_back(tower ? tower_route(x, c, d) : two_layer_route(x, c, d));
  } else if (rep) {
    notes.push_back(to_string(rep->kind) + " of H(M) is " + rep->str());
  }
  if (auto b = brutal_route(x, c)) found.push_back(std::move(*b));
  LevelOneResult local;
  if (!one) {
    bool homology_in_class = true;
    for (int n = x.lo(); n <= x.hi() && homology_in_class; ++n) homology_in_class = in_class(homology(x, n), c);
    if (homology_in_class) {
      local = level_one_test(x);
      one = &local;
    }
  }
  if (one)
    if (auto f = formal_route(x, c, *one)) found.push_back(std::move(*f));

  std::vector<UpperCertificate> usable;
  for (auto& u : found) {
    notes.push_back("route '" + u.route + "': " + (u.known ? std::to_string(u.value) : std::string("unknown")) +
                    (u.verified() ? "" : " (failed verification)"));
    if (u.known) usable.push_back(u);
  }
  if (usable.empty()) {
    if (rep && !rep->decided())
      throw DimensionUnknown(to_string(rep->kind) + " of H(M) is undecided: " + rep->str());
    UpperCertificate u;
    u.known = false;
    u.route = "none";
    u.dimension = rep;
    u.notes = notes;
    return u;
  }
  // Smallest value among verified certificates; unverified ones only as a last resort.
  auto better = [](const UpperCertificate& a, const UpperCertificate& b) {
    if (a.verified() != b.verified()) return a.verified();
    return a.value < b.value;
  };
  UpperCertificate best = *std::min_element(usable.begin(), usable.end(), better);
  best.dimension = rep;
  best.bound = bound;
  for (auto& n : notes) best.notes.push_back(n);
  return best;
}

}  // namespace

UpperCertificate upper_certificate(const Complex& m, LevelClass c) {
  UpperCertificate u = upper_impl(m, c, nullptr);
  CertificateAudit::instance().record_upper(u);
  return u;
}

UpperCertificate two_layer_certificate(const Complex& m, LevelClass c) {
  if (c == LevelClass::Proj || c == LevelClass::Inj) throw Error("the two-layer construction is for Flat, GP, GF and GI");
  DimensionReport rep = dimension(total_homology(m), dimension_kind(c));
  if (!rep.decided()) throw DimensionUnknown(to_string(rep.kind) + " of H(M) is undecided: " + rep.str());
  if (!rep.finite()) throw DimensionUnknown(to_string(rep.kind) + " of H(M) is infinite");
  const int d = rep.state == DimState::NegInfinite ? 0 : rep.value;
  UpperCertificate u = two_layer_route(m, c, d);
  u.dimension = rep;
  u.bound = std::max(2, d + 1);
  CertificateAudit::instance().record_upper(u);
  return u;
}

// ------------------------------------------------------------- lower bounds

nlohmann::json LowerCertificate::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["route"] = route;
  j["chain"] = nlohmann::json::array();
  for (std::size_t i = 0; i < ghost_homology_zero.size(); ++i)
    j["chain"].push_back({{"index", i}, {"zero_on_homology", static_cast<bool>(ghost_homology_zero[i])}});
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

LowerCertificate ghost_lower_bound(const Complex& m, LevelClass c, int n_max) {
  if (c == LevelClass::Inj) {
    if (!m.ring()->is_artin()) throw WrongMode("injective ghost chains are built by duality in Artin mode");
    LowerCertificate l = ghost_lower_bound(dual(m), LevelClass::Proj, n_max);
    l.route = "ghost chain of the dual complex (level_Inj(M) = level_Proj(M^v))";
    return l;
  }
  if (c != LevelClass::Proj) throw Error("ghost chains are built for Proj and Inj");
  LowerCertificate l;
  if (m.is_zero() || is_acyclic(m)) {
    l.route = "acyclic";
    CertificateAudit::instance().record_lower(l);
    return l;
  }
  l.value = 1;
  l.route = "ghost chain of Adams connecting maps";
  l.witness = "H(M) != 0";
  SemiFree p = semi_free_resolution(m, m.hi() + n_max + 1);
  Complex cur = m;
  ChainMap comp = ChainMap::identity(m);  // M -> Sigma^k Omega^k
  for (int k = 0; k < n_max; ++k) {
    AdamsStep s = adams_step_proj(cur);
    bool ghost = true;
    for (int n = s.source.lo(); n <= s.source.hi() && ghost; ++n)
      if (!homology_map(s.connecting, n).is_zero()) ghost = false;
    Complex tgt = shift(s.next, k + 1);
    comp = rewrap(shift(s.connecting, k), comp.target(), tgt) * comp;
    if (is_acyclic(tgt)) break;
    if (derived_hom(p, tgt).is_zero_in_derived(comp)) break;
    l.ghost_homology_zero.push_back(ghost);
    l.chain_length = k + 1;
    l.value = k + 2;
    l.witness = "M -> Sigma^" + std::to_string(k + 1) + " Omega^" + std::to_string(k + 1) +
                "(M) is not null-homotopic on a semi-free replacement";
    cur = s.next;
  }
  CertificateAudit::instance().record_lower(l);
  return l;
}

// ------------------------------------------------------------- reports

nlohmann::json LevelCertificate::to_json() const {
  nlohmann::json j;
  j["class"] = to_string(cls);
  j["upper"] = upper.to_json();
  j["lower"] = lower.to_json();
  if (verdict) j["verdict"] = *verdict;
  j["level_one"] = {{"verdict", level_one.verdict == Verdict::Yes  ? "yes"
                                : level_one.verdict == Verdict::No ? "no"
                                                                   : "inconclusive"},
                    {"reason", level_one.reason}};
  j["diagnostics"] = diagnostics;
  return j;
}

namespace {

// Chain length tried when no upper bound is known. Syzygies can double in
// size at every step, so this stays small.
constexpr int kGhostSteps = 2;

LowerCertificate generic_lower(const Complex& m, const LevelOneResult& one, const std::string& prefix) {
  LowerCertificate l;
  if (m.is_zero() || is_acyclic(m)) {
    l.route = prefix + "acyclic";
    return l;
  }
  if (one.verdict == Verdict::No) {
    l.value = 2;
    l.route = prefix + "not isomorphic in D(R) to its homology";
    l.witness = one.reason;
  } else {
    l.value = 1;
    l.route = prefix + "nonzero homology";
  }
  return l;
}

}  // namespace

LevelCertificate level_report(const Complex& m, LevelClass c) {
  LevelCertificate r;
  r.cls = c;
  r.level_one = level_one_test(m);
  try {
    r.upper = upper_impl(m, c, &r.level_one);
    CertificateAudit::instance().record_upper(r.upper);
  } catch (const DimensionUnknown& e) {
    r.upper.known = false;
    r.upper.route = "none";
    r.diagnostics.push_back(e.what());
  }
  const bool artin = m.ring()->is_artin();
  const int n_max = r.upper.known ? std::max(0, r.upper.value - 1) : kGhostSteps;
  LowerCertificate generic = generic_lower(m, r.level_one, "");
  switch (c) {
    case LevelClass::Proj: r.lower = ghost_lower_bound(m, LevelClass::Proj, n_max); break;
    case LevelClass::Inj:
      r.lower = artin ? ghost_lower_bound(m, LevelClass::Inj, n_max) : generic;
      break;
    case LevelClass::Flat:
      if (artin) {
        // level_Flat(M) >= level_Inj(M^v) = level_Proj(M^vv) = level_Proj(M).
        r.lower = ghost_lower_bound(m, LevelClass::Proj, n_max);
        r.lower.route = "Matlis duality: level_Flat(M) >= level_Inj(M^v); " + r.lower.route;
      } else {
        r.lower = generic;
      }
      break;
    case LevelClass::GF:
      if (artin) {
        r.lower = generic_lower(dual(m), level_one_test(dual(m)), "Matlis duality: level_GF(M) >= level_GI(M^v); ");
      } else {
        r.lower = generic;
      }
      break;
    default: r.lower = generic; break;
  }
  if (generic.value > r.lower.value) r.lower = generic;
  if (r.upper.known && r.lower.value == r.upper.value) r.verdict = r.upper.value;
  if (!r.upper.known) r.diagnostics.push_back("no upper bound: only the lower bound is certified");
  CertificateAudit::instance().record_report(r);
  return r;
}

// ------------------------------------------------------------- depth and Bass

std::optional<int> depth_module(const FgModule& m) {
  if (is_zero(m)) return std::nullopt;
  if (m.is_artin()) return 0;
  const Ring& r = m.ring();
  const int nv = r->nvars();
  const Field& fld = r->field();
  // Koszul complex K(x_1..x_n; M): K_i = (+)_{|S| = i} M(-i).
  std::vector<std::vector<unsigned>> subsets(static_cast<std::size_t>(nv) + 1);
  for (unsigned s = 0; s < (1u << nv); ++s) subsets[static_cast<std::size_t>(__builtin_popcount(s))].push_back(s);
  std::vector<DirectSum> sums;
  std::vector<FgModule> mods;
  for (int i = 0; i <= nv; ++i) {
    FgModule shifted = shift_degrees(m, -i);
    sums.push_back(direct_sum(std::vector<FgModule>(subsets[static_cast<std::size_t>(i)].size(), shifted)));
    mods.push_back(sums.back().module);
  }
  auto times_var = [&](int v, const FgModule& src, const FgModule& tgt) {
    std::vector<PolyVec> images;
    for (int g = 0; g < src.ngens(); ++g) images.push_back(r->var(v) * PolyVec::unit(g, fld.one()));
    return ModuleMap::from_images(src, tgt, std::move(images));
  };
  std::vector<ModuleMap> diffs;
  for (int i = 1; i <= nv; ++i) {
    const auto& rows = subsets[static_cast<std::size_t>(i - 1)];
    const auto& cols = subsets[static_cast<std::size_t>(i)];
    std::vector<std::vector<ModuleMap>> blocks(rows.size(), std::vector<ModuleMap>(cols.size()));
    const FgModule src = shift_degrees(m, -i), tgt = shift_degrees(m, -(i - 1));
    for (std::size_t cj = 0; cj < cols.size(); ++cj) {
      int pos = 0;
      for (int v = 0; v < nv; ++v) {
        if (!(cols[cj] & (1u << v))) continue;
        const unsigned rest = cols[cj] & ~(1u << v);
        const auto ri = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), rest) - rows.begin());
        ModuleMap x = times_var(v, src, tgt);
        blocks[ri][cj] = pos % 2 == 0 ? x : -x;
        ++pos;
      }
    }
    diffs.push_back(block_map(sums[static_cast<std::size_t>(i)], sums[static_cast<std::size_t>(i - 1)], blocks));
  }
  Complex k(r, 0, mods, diffs);
  for (int i = nv; i >= 0; --i)
    if (!is_zero(homology(k, i))) return nv - i;
  return std::nullopt;  // unreachable for a nonzero module: H_0 = M/mM != 0
}

nlohmann::json BassReport::to_json() const {
  nlohmann::json j;
  j["hypothesis_met"] = hypothesis_met;
  if (!failing_hypothesis.empty()) j["failing_hypothesis"] = failing_hypothesis;
  j["id"] = id.to_json();
  j["depth"] = depth;
  j["level_inj"] = inj.to_json();
  j["formula_holds"] = formula_holds;
  j["gid"] = gid.to_json();
  if (gi_upper) j["gi_upper"] = *gi_upper;
  j["gi_upper_within_bound"] = gi_upper_within_bound;
  j["notes"] = notes;
  return j;
}

BassReport bass_check(const Complex& m) {
  if (!m.ring()->is_artin()) throw WrongMode("the Bass check runs over artinian rings");
  BassReport b;
  const Ring& r = m.ring();
  FgModule h = m.is_zero() ? FgModule::zero(r) : total_homology(m);
  b.depth = 0;
  b.id = injective_dimension(h);
  if (is_zero(h)) {
    b.failing_hypothesis = "M is nonzero in D(R)";
  } else if (!b.id.finite()) {
    b.failing_hypothesis = "id(H(M)) < infinity; here id(H(M)) is " + b.id.str();
  } else {
    b.hypothesis_met = true;
  }
  b.inj = level_report(m, LevelClass::Inj);
  b.formula_holds = b.inj.verdict && *b.inj.verdict == b.depth + 1;
  if (!b.hypothesis_met && b.inj.verdict && *b.inj.verdict != b.depth + 1)
    b.notes.push_back("level_Inj = " + std::to_string(*b.inj.verdict) + " differs from depth(R) + 1 = " +
                      std::to_string(b.depth + 1) + " without the finiteness hypothesis");

  b.gid = gorenstein_dimension(h, DimKind::Gid);
  b.notes.push_back("the Gorenstein injective formula needs positive depth; artinian rings have depth 0");
  try {
    UpperCertificate gu = upper_certificate(m, LevelClass::GI);
    if (gu.known) {
      b.gi_upper = gu.value;
      b.gi_upper_within_bound = !gu.bound || gu.value <= *gu.bound;
    }
  } catch (const DimensionUnknown& e) {
    b.notes.push_back(std::string("GI upper bound: ") + e.what());
  }
  return b;
}

// ------------------------------------------------------------- audit

CertificateAudit& CertificateAudit::instance() {
  static CertificateAudit a;
  return a;
}

void CertificateAudit::record_upper(const UpperCertificate& u) {
  std::lock_guard<std::mutex> lock(mu_);
  ++s_.certificates;
  for (const auto& st : u.steps) {
    ++s_.triangles;
    if (!st.check.ok()) s_.violations.push_back("triangle '" + st.role + "' failed: " + st.check.detail);
  }
  for (const auto& f : u.failures) s_.violations.push_back("upper certificate: " + f);
  if (u.known && u.bound && u.value > *u.bound)
    s_.violations.push_back("upper value " + std::to_string(u.value) + " exceeds the bound " + std::to_string(*u.bound));
}

void CertificateAudit::record_lower(const LowerCertificate& l) {
  std::lock_guard<std::mutex> lock(mu_);
  ++s_.certificates;
  for (bool g : l.ghost_homology_zero) {
    ++s_.ghost_maps;
    if (!g) s_.violations.push_back("ghost map with nonzero homology in '" + l.route + "'");
  }
}

void CertificateAudit::record_report(const LevelCertificate& c) {
  std::lock_guard<std::mutex> lock(mu_);
  if (c.upper.known && c.lower.value > c.upper.value)
    s_.violations.push_back("lower bound " + std::to_string(c.lower.value) + " exceeds upper bound " +
                            std::to_string(c.upper.value) + " for class " + to_string(c.cls));
}

AuditSummary CertificateAudit::summary() const {
  std::lock_guard<std::mutex> lock(mu_);
  return s_;
}

void CertificateAudit::reset() {
  std::lock_guard<std::mutex> lock(mu_);
  s_ = AuditSummary{};
}

}  // namespace homlevel
