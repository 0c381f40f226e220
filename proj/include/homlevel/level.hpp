#pragma once

// Morphisms in the derived category, and certified bounds on the level of a
// complex with respect to a class of modules.
//
// An upper certificate is a list of verified triangles; in each one a vertex
// has level at most the sum of the levels of the other two. A lower certificate is a chain of
// maps that vanish on homology whose composite is not null-homotopic.

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "homlevel/adams.hpp"
#include "homlevel/resolution.hpp"
#include "json.hpp"

namespace homlevel {

enum class LevelClass { Proj, Inj, Flat, GP, GI, GF };
std::string to_string(LevelClass c);
/// "proj", "inj", "flat", "gp", "gi", "gf" (any case).
LevelClass parse_level_class(const std::string& s);
/// The homological dimension attached to the class.
DimKind dimension_kind(LevelClass c);

/// Membership of a finitely generated module. Over a non-Gorenstein Artin
/// ring only free (GP, GF) or injective (GI) modules are recognised.
bool in_class(const FgModule& m, LevelClass c);

/// Hom in D(R) from m to n, computed as homotopy classes of maps out of a
/// semi-free replacement of m truncated above sup(n) + 1.
struct HomotopyClassSpace {
  Complex source, target;
  Complex free;          // truncated replacement P
  ChainMap augmentation;  // P -> source
  std::vector<ChainMap> chain_maps;  // basis of chain maps P -> target
  Mat null_span;                     // flattened null-homotopic maps, as columns
  Index dimension = 0;

  /// Coordinates of a map P -> target.
  Vec flatten(const ChainMap& f) const;
  bool is_null_homotopic(const ChainMap& f) const;
  /// For f : source -> target: f o augmentation is null-homotopic.
  bool is_zero_in_derived(const ChainMap& f) const;

 private:
  std::map<int, Index> offset_;
  Index width_ = 0;
  friend HomotopyClassSpace derived_hom(const SemiFree&, const Complex&);
};

HomotopyClassSpace derived_hom(const Complex& m, const Complex& n);
/// Reuses a replacement computed far enough up (top >= sup(n) + 1).
HomotopyClassSpace derived_hom(const SemiFree& p, const Complex& n);

/// Is m isomorphic in D(R) to its homology (a complex with zero differential)?
struct LevelOneResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  /// A quasi-isomorphism between m and a complex with zero differential, or
  /// a map P -> H(m) out of the replacement inducing isomorphisms.
  std::optional<ChainMap> witness;
};
LevelOneResult level_one_test(const Complex& m);

struct CertificateStep {
  std::string role;
  Triangle triangle;
  TriangleCheck check;
};

struct UpperCertificate {
  bool known = false;
  int value = 0;
  std::string route;
  std::vector<CertificateStep> steps;
  std::vector<std::string> failures;  // side conditions that did not verify
  std::optional<DimensionReport> dimension;
  std::optional<int> bound;  // d + 1 (Proj, Inj) or max(2, d + 1), when d = dim H(M) is finite
  std::vector<std::string> notes;

  bool verified() const;
  nlohmann::json to_json() const;
};

/// Tries every applicable construction and keeps the smallest value:
/// Adams towers (Proj, Inj), the two-layer triangles Z -> S -> Sigma B and
/// B -> T -> C (Flat, GP, GF, GI), the brutal filtration when every module
/// lies in the class, and a zero-differential model. Throws DimensionUnknown
/// when nothing applies because the dimension is undecided.
UpperCertificate upper_certificate(const Complex& m, LevelClass c);
/// Only the two-layer construction (Flat, GP, GF, GI); throws
/// DimensionUnknown unless the dimension of H(m) is finite.
UpperCertificate two_layer_certificate(const Complex& m, LevelClass c);

struct LowerCertificate {
  int value = 0;
  std::string route;
  int chain_length = 0;                    // ghost maps composed
  std::vector<bool> ghost_homology_zero;   // H(f) = 0 for each map in the chain
  std::string witness;
  nlohmann::json to_json() const;
};

/// Proj: composites m -> Sigma^n Omega^n(m) of Adams connecting maps, kept
/// while they are nonzero in D(R); lower = n + 1. Inj (Artin): the Proj
/// bound of the dual complex.
LowerCertificate ghost_lower_bound(const Complex& m, LevelClass c, int n_max);

struct LevelCertificate {
  LevelClass cls = LevelClass::Proj;
  UpperCertificate upper;
  LowerCertificate lower;
  LevelOneResult level_one;
  std::optional<int> verdict;
  std::vector<std::string> diagnostics;
  nlohmann::json to_json() const;
};

LevelCertificate level_report(const Complex& m, LevelClass c);

/// depth via the Koszul complex on the variables; 0 in Artin mode and
/// nullopt for the zero module.
std::optional<int> depth_module(const FgModule& m);

struct BassReport {
  bool hypothesis_met = false;
  std::string failing_hypothesis;
  DimensionReport id;
  int depth = 0;
  LevelCertificate inj;
  bool formula_holds = false;  // level_Inj = depth + 1
  // Gorenstein injective side: the positive-depth hypothesis excludes
  // artinian rings, so only the upper bound is checked.
  DimensionReport gid;
  std::optional<int> gi_upper;
  bool gi_upper_within_bound = false;
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};

/// Artin mode.
BassReport bass_check(const Complex& m);

/// Every certificate built in this process is checked here.
struct AuditSummary {
  int certificates = 0;
  int triangles = 0;
  int ghost_maps = 0;
  std::vector<std::string> violations;
};

class CertificateAudit {
 public:
  static CertificateAudit& instance();
  void record_upper(const UpperCertificate& u);
  void record_lower(const LowerCertificate& l);
  void record_report(const LevelCertificate& c);
  AuditSummary summary() const;
  void reset();

 private:
  mutable std::mutex mu_;
  AuditSummary s_;
};

}  // namespace homlevel
