#pragma once

// Projective and injective Adams resolutions of bounded complexes.
//
// Projective step:  F --phi--> M --> Cone(phi) = Sigma Omega,  Omega = Sigma^-1 Cone(phi)
// Injective step:   M --iota--> I --> Theta = Cone(iota) --> Sigma M
// F (resp. I) is a complex of frees (resp. injectives) with zero differential,
// H(phi) is onto and H(iota) is one-to-one.

#include <optional>
#include <string>
#include <vector>

#include "homlevel/complex.hpp"
#include "json.hpp"

namespace homlevel {

enum class AdamsSide { Projective, Injective };
std::string to_string(AdamsSide s);

struct AdamsChecks {
  bool homology_condition = false;  // H(phi) onto, or H(iota) one-to-one
  bool ses_exact = false;           // 0 -> H(Omega) -> F -> H(M) -> 0, or 0 -> H(M) -> I -> H(Theta) -> 0
  bool triangle = false;
  std::string detail;
  bool ok() const { return homology_condition && ses_exact && triangle; }
};

struct AdamsStep {
  Complex source;  // Omega^n or Theta^n
  Complex layer;   // F^n or I^n
  ChainMap map;    // phi : F -> source, or iota : source -> I
  Complex next;    // Omega^{n+1} or Theta^{n+1}
  /// Projective: Omega^{n+1} -> F^n. Injective: I^n -> Theta^{n+1}.
  ChainMap link;
  /// Projective: source -> Sigma Omega^{n+1}, zero on homology.
  /// Injective: Theta^{n+1} -> Sigma source.
  ChainMap connecting;
  Triangle triangle;
  AdamsChecks checks;
};

/// Choice of cycle representatives. By default the lifts of a minimal
/// generating set of homology are canonical; a perturbation seed adds
/// random boundaries to them.
struct AdamsOptions {
  std::optional<std::uint64_t> perturb_seed;
};

AdamsStep adams_step_proj(const Complex& m, const AdamsOptions& opt = {});
/// Artin mode: the dual of the projective step of the dual.
AdamsStep adams_step_inj(const Complex& m, const AdamsOptions& opt = {});

struct AdamsTower {
  AdamsSide side = AdamsSide::Projective;
  Complex base;
  std::vector<AdamsStep> steps;

  /// Omega^n / Theta^n; object(0) is the base.
  const Complex& object(std::size_t n) const { return n == 0 ? base : steps.at(n - 1).next; }
  bool verified() const;
  nlohmann::json to_json() const;
};

AdamsTower adams_tower(const Complex& m, AdamsSide side, int n, const AdamsOptions& opt = {});

struct SpliceReport {
  bool exact = true;
  /// Positions in the spliced sequence, 0 at the left end; -1 when exact.
  int first_failure = -1;
  int length = 0;  // number of terms, the zeros at both ends excluded
  std::string detail;
  nlohmann::json to_json() const;
};

/// Exactness of 0 -> H(Omega^n) -> F^{n-1} -> ... -> F^0 -> H(M) -> 0, or of
/// 0 -> H(M) -> I^0 -> ... -> I^{n-1} -> H(Theta^n) -> 0, with each graded
/// object flattened to the direct sum of its pieces.
SpliceReport verify_splice(const AdamsTower& t);

/// The same components viewed as a map between structurally equal complexes.
ChainMap rewrap(const ChainMap& f, const Complex& src, const Complex& tgt);

}  // namespace homlevel
