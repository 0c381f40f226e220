#include "homlevel/resolution.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace homlevel {

namespace {

int resolve_cutoff(int cutoff) { return cutoff < 0 ? config().cutoff : cutoff; }

// Rank of the free module F, in both modes.
int rank_of(const FgModule& f) { return f.free_rank() < 0 ? minimal_generators(f) : f.free_rank(); }

// d maps into m * target exactly when coker(d) needs all generators of target.
bool into_max_ideal(const ModuleMap& d) {
  return minimal_generators(cokernel(d).module) == rank_of(d.target());
}

}  // namespace

std::vector<int> Resolution::betti() const {
  std::vector<int> out;
  for (int i = 0; i <= top; ++i) out.push_back(rank_of(free.at(i)));
  return out;
}

std::vector<std::map<int, int>> Resolution::graded_betti() const {
  std::vector<std::map<int, int>> out;
  for (int i = 0; i <= top; ++i) {
    std::map<int, int> row;
    for (int d : free.at(i).free_degrees()) ++row[d];
    out.push_back(std::move(row));
  }
  return out;
}

Resolution minimal_free_resolution(const FgModule& m, int cutoff) {
  if (cutoff < 0) throw Error("resolution cutoff must be non-negative");
  const Ring& r = m.ring();
  Resolution res;
  res.target = m;
  res.syzygies.push_back(m);
  ModuleMap cover = minimal_cover(m);
  res.augmentation = cover;
  std::vector<FgModule> frees{cover.source()};
  std::vector<ModuleMap> diffs;
  ModuleMap last = cover;
  res.top = 0;
  if (rank_of(cover.source()) == 0) {
    res.free = Complex::zero(r);
    res.complete = true;
    res.top = -1;
    return res;
  }
  for (int i = 1;; ++i) {
    Kernel k = kernel(last);
    res.syzygies.push_back(k.module);
    res.syzygy_inclusions.push_back(k.inclusion);
    if (is_zero(k.module)) {
      res.complete = true;
      break;
    }
    if (i > cutoff) break;
    ModuleMap c = minimal_cover(k.module);
    ModuleMap d = k.inclusion * c;
    frees.push_back(c.source());
    diffs.push_back(d);
    last = d;
    res.top = i;
  }
  res.free = Complex(r, 0, std::move(frees), std::move(diffs));
  return res;
}

ResolutionCheck verify_resolution(const Resolution& r) {
  ResolutionCheck out;
  std::ostringstream why;
  out.exact = true;
  out.minimal = true;
  if (r.top < 0) {
    out.exact = is_zero(r.target);
    return out;
  }
  if (!is_surjective(r.augmentation)) {
    out.exact = false;
    why << "augmentation not surjective; ";
  }
  if (r.top >= 1 && !is_exact_at(r.free.d(1), r.augmentation)) {
    out.exact = false;
    why << "not exact at F_0; ";
  }
  for (int i = 1; i < r.top; ++i)
    if (!is_exact_at(r.free.d(i + 1), r.free.d(i))) {
      out.exact = false;
      why << "not exact at F_" << i << "; ";
    }
  if (r.complete) {
    ModuleMap last = r.top == 0 ? r.augmentation : r.free.d(r.top);
    if (!is_injective(last)) {
      out.exact = false;
      why << "last map not injective; ";
    }
  }
  if (rank_of(r.free.at(0)) != minimal_generators(r.target)) {
    out.minimal = false;
    why << "F_0 is not a minimal cover; ";
  }
  for (int i = 1; i <= r.top; ++i)
    if (!into_max_ideal(r.free.d(i))) {
      out.minimal = false;
      why << "d_" << i << " has a unit entry; ";
    }
  out.detail = why.str();
  return out;
}

SemiFree semi_free_resolution(const Complex& x, int top) {
  const Ring& r = x.ring();
  SemiFree out;
  out.target = x;
  out.top = top;
  if (x.is_zero()) {
    out.free = Complex::zero(r);
    out.augmentation = ChainMap::zero(out.free, x);
    out.complete = true;
    return out;
  }
  const int lo = x.lo();
  std::vector<FgModule> frees;
  std::vector<ModuleMap> diffs;
  std::map<int, ModuleMap> aug;
  auto build = [&]() {
    if (frees.empty()) return Complex::zero(r);
    return Complex(r, lo, frees, diffs);
  };
  for (int n = lo; n <= top; ++n) {
    Complex p = build();
    ChainMap phi = ChainMap::unchecked(p, x, aug);
    Cone c = cone(phi);
    FgModule g = FgModule::free(r, 0);
    ModuleMap d_n, phi_n;
    auto part = c.parts.find(n);
    FgModule prev = n - 1 >= lo ? frees[static_cast<std::size_t>(n - 1 - lo)] : FgModule::free(r, 0);
    if (part != c.parts.end() && !c.complex.is_zero() && n >= c.complex.lo() && n <= c.complex.hi()) {
      HomologyData hd = homology_data(c.complex, n);
      if (!is_zero(hd.h)) {
        ModuleMap cover = minimal_cover(hd.h);
        ModuleMap cyc = hd.z_inc * lift_through_epi(cover, hd.h_proj);
        g = cover.source();
        d_n = -(part->second.proj[0] * cyc);
        phi_n = part->second.proj[1] * cyc;
      }
    }
    if (d_n.is_null()) {
      d_n = ModuleMap::zero(g, prev);
      phi_n = ModuleMap::zero(g, x.at(n));
    }
    frees.push_back(g);
    if (n > lo) diffs.push_back(d_n);
    aug[n] = phi_n;
    if (n >= x.hi() && rank_of(g) == 0) {
      out.complete = true;
      break;
    }
  }
  out.free = build();
  out.augmentation = ChainMap::unchecked(out.free, x, std::move(aug));
  return out;
}

SemiFree semi_free_resolution(const Complex& x) {
  return semi_free_resolution(x, (x.is_zero() ? 0 : x.hi()) + config().cutoff);
}

ResolutionCheck verify_semi_free(const SemiFree& s) {
  ResolutionCheck out;
  std::ostringstream why;
  out.minimal = true;
  for (int n = s.free.lo() + 1; n <= s.free.hi(); ++n)
    if (!into_max_ideal(s.free.d(n))) {
      out.minimal = false;
      why << "d_" << n << " has a unit entry; ";
    }
  try {
    ChainMap check(s.free, s.target, [&] {
      std::map<int, ModuleMap> c;
      for (int n = s.free.lo(); n <= s.free.hi(); ++n) c.emplace(n, s.augmentation.at(n));
      return c;
    }());
  } catch (const VerificationError& e) {
    why << e.what() << "; ";
    out.detail = why.str();
    return out;
  }
  Complex c = cone(s.augmentation).complex;
  out.exact = true;
  if (s.complete) {
    out.exact = is_acyclic(c);
  } else {
    for (int n = c.lo(); n <= s.top; ++n)
      if (!is_exact_at(c.d(n + 1), c.d(n))) out.exact = false;
  }
  if (!out.exact) why << "augmentation is not a quasi-isomorphism in the computed range; ";
  out.detail = why.str();
  return out;
}

// ------------------------------------------------------------- reports

std::string to_string(DimKind k) {
  switch (k) {
    case DimKind::Pd: return "pd";
    case DimKind::Id: return "id";
    case DimKind::Fd: return "fd";
    case DimKind::Gpd: return "Gpd";
    case DimKind::Gid: return "Gid";
    case DimKind::Gfd: return "Gfd";
  }
  return "?";
}

namespace {

std::string state_name(DimState s) {
  switch (s) {
    case DimState::Exact: return "exact";
    case DimState::NegInfinite: return "neg_infinite";
    case DimState::CertifiedInfinite: return "certified_infinite";
    case DimState::AtLeast: return "at_least";
    case DimState::Inconclusive: return "inconclusive";
  }
  return "?";
}

DimensionReport make(DimKind k, DimState s, int v, std::string witness) {
  DimensionReport r;
  r.kind = k;
  r.state = s;
  r.value = v;
  r.witness = std::move(witness);
  return r;
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

std::string DimensionReport::str() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (state) {
    case DimState::Exact: os << " = " << value; break;
    case DimState::NegInfinite: os << " = -inf"; break;
    case DimState::CertifiedInfinite: os << " = inf"; break;
    case DimState::AtLeast: os << " >= " << value; break;
    case DimState::Inconclusive: os << " undecided (window " << value << ")"; break;
  }
  if (!witness.empty()) os << " [" << witness << "]";
  return os.str();
}

nlohmann::json DimensionReport::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["state"] = state_name(state);
  if (state == DimState::Exact || state == DimState::AtLeast || state == DimState::Inconclusive) j["value"] = value;
  j["witness"] = witness;
  j["notes"] = notes;
  return j;
}

bool same_value(const DimensionReport& a, const DimensionReport& b) {
  if (a.state != b.state) return false;
  return a.state == DimState::NegInfinite || a.state == DimState::CertifiedInfinite || a.value == b.value;
}

bool has_residue_summand(const FgModule& m) {
  if (!m.is_artin()) throw WrongMode("residue summand test needs an artinian ring");
  if (m.dim() == 0) return false;
  const Field& f = m.field();
  Mat stacked = zeros(f, 0, m.dim()), spans = zeros(f, m.dim(), 0);
  for (const auto& a : m.actions()) {
    stacked = vstack(stacked, a);
    spans = hstack(spans, a);
  }
  Mat socle = kernel_basis(stacked, f);
  return !in_span(socle, spans, f);
}

DimensionReport projective_dimension(const FgModule& m, int cutoff) {
  cutoff = resolve_cutoff(cutoff);
  if (is_zero(m)) return make(DimKind::Pd, DimState::NegInfinite, 0, "zero module");
  if (m.is_artin()) {
    // Walk the syzygies and stop at the first certificate; their size can
    // grow exponentially, so resolving to the cutoff first is wasteful.
    const bool field = m.ring()->dim() == 1;
    std::vector<FgModule> syz{m};
    for (int j = 0;; ++j) {
      const FgModule& s = syz.back();
      if (is_zero(s)) break;
      for (int i = 0; i < j; ++i) {
        const FgModule& a = syz[static_cast<std::size_t>(i)];
        if (a.dim() == s.dim() && isomorphism(a, s).verdict == Verdict::Yes)
          return make(DimKind::Pd, DimState::CertifiedInfinite, 0,
                      "syzygy Omega^" + std::to_string(j) + " ~= Omega^" + std::to_string(i));
      }
      if (!field && has_residue_summand(s))
        return make(DimKind::Pd, DimState::CertifiedInfinite, 0,
                    "k is a direct summand of Omega^" + std::to_string(j) + " and R is not a field");
      if (j > cutoff) return make(DimKind::Pd, DimState::AtLeast, cutoff, "resolution did not end by the cutoff");
      syz.push_back(kernel(minimal_cover(s)).module);
    }
  }
  Resolution res = minimal_free_resolution(m, cutoff);
  if (res.complete) {
    std::string w = res.top == 0 ? "free of rank " + std::to_string(rank_of(res.free.at(0)))
                                 : "minimal resolution with Betti numbers (" + join(res.betti()) +
                                       "); F_" + std::to_string(res.top) + " != 0";
    return make(DimKind::Pd, DimState::Exact, res.top, w);
  }
  return make(DimKind::Pd, DimState::AtLeast, cutoff, "resolution did not end by the cutoff");
}

DimensionReport flat_dimension(const FgModule& m, int cutoff) {
  DimensionReport r = projective_dimension(m, cutoff);
  r.kind = DimKind::Fd;
  r.notes.push_back("fd = pd for finitely generated modules");
  return r;
}

DimensionReport injective_dimension(const FgModule& m, int cutoff) {
  if (!m.is_artin()) throw WrongMode("injective dimension is computed through Matlis duality (Artin mode)");
  DimensionReport r = projective_dimension(matlis_dual(m), cutoff);
  r.kind = DimKind::Id;
  r.witness = "dual: " + r.witness;
  r.notes.push_back("id(M) = pd(M^v)");
  return r;
}

std::vector<Index> ext_into_ring(const FgModule& m, int n) {
  if (!m.is_artin()) throw WrongMode("Ext into the ring is computed in Artin mode");
  const Ring& r = m.ring();
  const Field& f = r->field();
  const Index dr = r->dim();
  Resolution res = minimal_free_resolution(m, n + 1);
  // Hom(d_i, R): Hom(F_{i-1}, R) -> Hom(F_i, R) on coordinates (phi(e_l))_l.
  auto dual_map = [&](int i) -> Mat {
    ModuleMap d = res.free.d(i);
    const int bi = rank_of(res.free.at(i)), bp = rank_of(res.free.at(i - 1));
    Mat out = zeros(f, bi * dr, bp * dr);
    for (int j = 0; j < bi; ++j) {
      Vec img = d.generator_image(j);
      for (int l = 0; l < bp; ++l) {
        Mat mult = r->regular_action(r->from_coords(img.segment(l * dr, dr)));
        out.block(j * dr, l * dr, dr, dr) = mult;
      }
    }
    return out;
  };
  std::vector<Index> out;
  for (int i = 1; i <= n; ++i) {
    const int bi = i <= res.top ? rank_of(res.free.at(i)) : 0;
    if (bi == 0) {
      out.push_back(0);
      continue;
    }
    Mat in = dual_map(i);
    Index ker_dim = bi * dr;
    if (i + 1 <= res.top) ker_dim -= rank(dual_map(i + 1), f);
    out.push_back(ker_dim - rank(in, f));
  }
  return out;
}

DimensionReport gorenstein_dimension(const FgModule& m, DimKind kind, int cutoff) {
  if (kind != DimKind::Gpd && kind != DimKind::Gid && kind != DimKind::Gfd)
    throw Error("gorenstein_dimension needs Gpd, Gid or Gfd");
  if (is_zero(m)) return make(kind, DimState::NegInfinite, 0, "zero module");
  if (!m.is_artin()) {
    if (kind == DimKind::Gid) throw OutOfScope("Gid is not computed over polynomial rings");
    DimensionReport r = projective_dimension(m, cutoff);
    r.kind = kind;
    r.notes.push_back("regular ring: Gorenstein projective modules are projective, so Gpd = pd");
    if (kind == DimKind::Gfd) r.notes.push_back("Gfd = Gpd for finitely generated modules");
    return r;
  }
  if (is_gorenstein_artin(*m.ring()).gorenstein) {
    DimensionReport r = make(kind, DimState::Exact, 0,
                             "artinian Gorenstein ring: every finitely generated module is totally reflexive");
    if (kind == DimKind::Gid) r.witness = "artinian Gorenstein ring: every module is Gorenstein injective";
    return r;
  }
  FgModule target = kind == DimKind::Gid ? matlis_dual(m) : m;
  DimensionReport r;
  if (is_free(target).free) {
    r = make(kind, DimState::Exact, 0, kind == DimKind::Gid ? "injective" : "free");
  } else {
    const int window = config().reflexivity_window;
    r = make(kind, DimState::Inconclusive, window, "Ext^i(-, R) vanishes for 1 <= i <= " + std::to_string(window));
    // Widen the window one step at a time: a nonzero Ext usually shows up
    // early, and the resolutions behind large windows are expensive.
    for (int n = 1; n <= window; ++n)
      if (ext_into_ring(target, n).back() != 0) {
        r = make(kind, DimState::CertifiedInfinite, 0,
                 "Ext^" + std::to_string(n) + "(" + (kind == DimKind::Gid ? "M^v" : "M") +
                     ", R) != 0, so not totally reflexive; a finite value would be 0 over an artinian ring");
        break;
      }
  }
  if (kind == DimKind::Gid) r.notes.push_back("Gid(M) = Gpd(M^v) over an artinian ring");
  if (kind == DimKind::Gfd) r.notes.push_back("Gfd = Gpd for finitely generated modules");
  return r;
}

DimensionReport dimension(const FgModule& m, DimKind kind, int cutoff) {
  switch (kind) {
    case DimKind::Pd: return projective_dimension(m, cutoff);
    case DimKind::Fd: return flat_dimension(m, cutoff);
    case DimKind::Id: return injective_dimension(m, cutoff);
    default: return gorenstein_dimension(m, kind, cutoff);
  }
}

FgModule syzygy(const FgModule& m, int i) {
  if (i == 0) return m;
  Resolution res = minimal_free_resolution(m, i);
  if (static_cast<int>(res.syzygies.size()) > i) return res.syzygies[static_cast<std::size_t>(i)];
  return FgModule::zero(m.ring());
}

FgModule cosyzygy(const FgModule& m, int i) {
  if (!m.is_artin()) throw WrongMode("cosyzygies are computed in Artin mode");
  if (i == 0) return m;
  return matlis_dual(syzygy(matlis_dual(m), i));
}

// ------------------------------------------------------------- SES calculus

namespace {

// Extended value: -inf, finite, +inf; nullopt when undecided.
std::optional<long> ext_value(const DimensionReport& r) {
  constexpr long inf = std::numeric_limits<int>::max();
  switch (r.state) {
    case DimState::Exact: return r.value;
    case DimState::NegInfinite: return -inf;
    case DimState::CertifiedInfinite: return inf;
    default: return std::nullopt;
  }
}

long minus_one(long v) {
  constexpr long inf = std::numeric_limits<int>::max();
  return (v == inf || v == -inf) ? v : v - 1;
}

}  // namespace

bool SesDimensionCheck::ok() const {
  return std::all_of(results.begin(), results.end(), [](const InequalityResult& r) { return r.holds; });
}

SesDimensionCheck check_ses_dimension_calculus(const ShortExact& ses, DimFamily family, int cutoff) {
  if (!is_short_exact(ses)) throw VerificationError("not a short exact sequence");
  const FgModule &l = ses.f.source(), &m = ses.f.target(), &n = ses.g.target();
  std::vector<DimKind> kinds = family == DimFamily::Classical
                                   ? std::vector<DimKind>{DimKind::Pd, DimKind::Fd, DimKind::Id}
                                   : std::vector<DimKind>{DimKind::Gpd, DimKind::Gfd, DimKind::Gid};
  SesDimensionCheck out;
  for (DimKind k : kinds) {
    const bool injective_side = k == DimKind::Id || k == DimKind::Gid;
    const std::string name = to_string(k);
    if (injective_side && !l.is_artin()) {
      out.results.push_back({name + ": not computed over polynomial rings", false, true});
      out.l.push_back({});
      out.m.push_back({});
      out.n.push_back({});
      continue;
    }
    DimensionReport rl = dimension(l, k, cutoff), rm = dimension(m, k, cutoff), rn = dimension(n, k, cutoff);
    out.l.push_back(rl);
    out.m.push_back(rm);
    out.n.push_back(rn);
    auto vl = ext_value(rl), vm = ext_value(rm), vn = ext_value(rn);
    InequalityResult ineq;
    if (injective_side) {
      ineq.statement = name + "(N) <= max(" + name + "(L) - 1, " + name + "(M))";
      if (vl && vm && vn) {
        ineq.applicable = true;
        ineq.holds = *vn <= std::max(minus_one(*vl), *vm);
      }
    } else {
      ineq.statement = name + "(L) <= max(" + name + "(M), " + name + "(N) - 1)";
      if (vl && vm && vn) {
        ineq.applicable = true;
        ineq.holds = *vl <= std::max(*vm, minus_one(*vn));
      }
    }
    out.results.push_back(ineq);

    InequalityResult two;
    two.statement = name + ": two of L, M, N finite implies the third is finite";
    std::vector<const DimensionReport*> all{&rl, &rm, &rn};
    for (int skip = 0; skip < 3; ++skip) {
      const auto* third = all[static_cast<std::size_t>(skip)];
      bool others_finite = true;
      for (int i = 0; i < 3; ++i)
        if (i != skip && !all[static_cast<std::size_t>(i)]->finite()) others_finite = false;
      if (!others_finite) continue;
      if (third->decided()) {
        two.applicable = true;
        if (!third->finite()) two.holds = false;
      }
    }
    out.results.push_back(two);
  }
  return out;
}

}  // namespace homlevel
