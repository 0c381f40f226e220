#pragma once

// Minimal free resolutions of modules, semi-free replacements of complexes,
// and homological / Gorenstein homological dimension reports.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homlevel/complex.hpp"
#include "json.hpp"

namespace homlevel {

/// Minimal free resolution F -> M of a module. free.at(i) = F_i for
/// 0 <= i <= top; syzygies[i] = Omega^i(M) = ker(F_{i-1} -> F_{i-2})
/// (syzygies[0] = M).
struct Resolution {
  FgModule target;
  Complex free;
  ModuleMap augmentation;  // F_0 -> M
  std::vector<FgModule> syzygies;
  std::vector<ModuleMap> syzygy_inclusions;  // Omega^i -> F_{i-1}, i >= 1
  bool complete = false;                     // F_{top+1} = 0
  int top = -1;                              // highest computed degree

  int length() const { return complete ? top : -1; }
  std::vector<int> betti() const;
  /// Graded Betti numbers: degree -> multiplicity, per homological degree.
  std::vector<std::map<int, int>> graded_betti() const;
};

/// Computes F_0 .. F_cutoff (fewer when the resolution ends).
Resolution minimal_free_resolution(const FgModule& m, int cutoff);

/// Exactness at every computed spot and d(F) in mF.
struct ResolutionCheck {
  bool exact = false;
  bool minimal = false;
  std::string detail;
};
ResolutionCheck verify_resolution(const Resolution& r);

/// A semi-free complex P with a quasi-isomorphism P -> X, computed in
/// degrees <= top. Built by killing the homology of the mapping cone one
/// degree at a time with minimal sets of generators.
struct SemiFree {
  Complex target;
  Complex free;
  ChainMap augmentation;  // P -> X
  bool complete = false;  // no generators above top are needed
  int top = 0;
};
SemiFree semi_free_resolution(const Complex& x, int top);
/// The replacement through the degree where it stops, or up to cutoff
/// steps above sup(x).
SemiFree semi_free_resolution(const Complex& x);
/// Minimality (d(P) in mP) and that the augmentation is a quasi-iso in
/// degrees <= top - 1.
ResolutionCheck verify_semi_free(const SemiFree& s);

enum class DimKind { Pd, Id, Fd, Gpd, Gid, Gfd };
std::string to_string(DimKind k);

enum class DimState {
  Exact,              // value
  NegInfinite,        // the zero module
  CertifiedInfinite,  // certificate in `witness`
  AtLeast,            // value = the cutoff reached without a decision
  Inconclusive,       // window exhausted without a decision
};

struct DimensionReport {
  DimKind kind = DimKind::Pd;
  DimState state = DimState::Inconclusive;
  int value = 0;
  std::string witness;
  std::vector<std::string> notes;

  bool finite() const { return state == DimState::Exact || state == DimState::NegInfinite; }
  bool decided() const { return state != DimState::AtLeast && state != DimState::Inconclusive; }
  std::string str() const;
  nlohmann::json to_json() const;
};

/// Same state and value (the kind is ignored).
bool same_value(const DimensionReport& a, const DimensionReport& b);

DimensionReport projective_dimension(const FgModule& m, int cutoff = -1);
DimensionReport flat_dimension(const FgModule& m, int cutoff = -1);
/// Artin mode: pd of the Matlis dual.
DimensionReport injective_dimension(const FgModule& m, int cutoff = -1);
DimensionReport gorenstein_dimension(const FgModule& m, DimKind kind, int cutoff = -1);
/// Dispatches on kind.
DimensionReport dimension(const FgModule& m, DimKind kind, int cutoff = -1);

/// Omega^i(m) from a minimal resolution.
FgModule syzygy(const FgModule& m, int i);
/// Artin mode: the i-th cosyzygy, as the dual of the i-th syzygy of the dual.
FgModule cosyzygy(const FgModule& m, int i);

/// Artin mode: dim_k Ext^i_R(m, R) for 1 <= i <= n.
std::vector<Index> ext_into_ring(const FgModule& m, int n);
/// Artin mode: some socle element of m lies outside m*m, so the residue
/// field is a direct summand of m.
bool has_residue_summand(const FgModule& m);

/// Evaluation of the inequalities for 0 -> L -> M -> N -> 0.
struct InequalityResult {
  std::string statement;
  bool applicable = false;  // false when an undecided report makes it vacuous
  bool holds = true;
};
struct SesDimensionCheck {
  std::vector<DimensionReport> l, m, n;  // pd, fd, id (or Gpd, Gfd, Gid)
  std::vector<InequalityResult> results;
  bool ok() const;
};
enum class DimFamily { Classical, Gorenstein };
/// Classical: pd(L) <= max(pd M, pd N - 1), fd likewise, id(N) <= max(id L - 1, id M),
/// plus two-out-of-three finiteness for each kind; Gorenstein analogues.
SesDimensionCheck check_ses_dimension_calculus(const ShortExact& ses, DimFamily family, int cutoff = -1);

}  // namespace homlevel
