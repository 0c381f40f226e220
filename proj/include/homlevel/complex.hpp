#pragma once

// Bounded chain complexes, chain maps, homology and cones.
//
// Sign conventions (used everywhere):
//   (Sigma^n X)_k = X_{k-n},  d^{Sigma^n X} = (-1)^n d^X,  (Sigma^n f)_k = f_{k-n}
//   Cone(f)_k = X_{k-1} (+) Y_k,  d(x, y) = (-d x, f x + d y)
// so Y -> Cone(f) -> Sigma X are chain maps (y -> (0, y), (x, y) -> x).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homlevel/module.hpp"

namespace homlevel {

class Complex {
 public:
  Complex() = default;
  /// modules[i] sits in degree lo + i; diffs[i] is d_{lo+i+1}. Verifies
  /// d o d = 0 and trims zero modules at both ends.
  Complex(const Ring& r, int lo, std::vector<FgModule> modules, std::vector<ModuleMap> diffs);

  static Complex zero(const Ring& r);
  /// m placed in degree n.
  static Complex concentrated(const FgModule& m, int n);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  /// No nonzero components.
  bool is_zero() const { return hi_ < lo_; }
  /// X_n; the zero module outside the window.
  const FgModule& at(int n) const;
  /// d_n : X_n -> X_{n-1}.
  ModuleMap d(int n) const;
  bool has_zero_differential() const;
  std::string describe() const;

 private:
  Ring ring_;
  int lo_ = 0, hi_ = -1;
  std::vector<FgModule> modules_;
  std::vector<ModuleMap> diffs_;  // diffs_[i] = d_{lo+i+1}
  FgModule zero_;
};

class ChainMap {
 public:
  ChainMap() = default;
  /// Components outside `comps` are zero. Verifies d f = f d.
  ChainMap(const Complex& src, const Complex& tgt, std::map<int, ModuleMap> comps);
  static ChainMap unchecked(const Complex& src, const Complex& tgt, std::map<int, ModuleMap> comps);
  static ChainMap identity(const Complex& x);
  static ChainMap zero(const Complex& x, const Complex& y);

  const Complex& source() const { return src_; }
  const Complex& target() const { return tgt_; }
  ModuleMap at(int n) const;
  bool is_zero() const;

  friend ChainMap operator*(const ChainMap& g, const ChainMap& f);
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator*(const Scalar& c, const ChainMap& a);

 private:
  Complex src_, tgt_;
  std::map<int, ModuleMap> comps_;
};

/// A k-basis of the chain maps x -> y (degree-0 components in graded mode).
std::vector<ChainMap> chain_map_space(const Complex& x, const Complex& y);

/// Z, B, C, H in one degree and the maps among them.
struct HomologyData {
  int degree = 0;
  FgModule z, b, c, h, bprev;
  ModuleMap z_inc;       // Z_n -> X_n
  ModuleMap b_inc;       // B_n -> X_n
  ModuleMap b_to_z;      // B_n -> Z_n
  ModuleMap h_proj;      // Z_n -> H_n
  ModuleMap c_proj;      // X_n -> C_n
  ModuleMap h_to_c;      // H_n -> C_n
  ModuleMap m_to_bprev;  // X_n -> B_{n-1}
  ModuleMap bprev_inc;   // B_{n-1} -> X_{n-1}
  ModuleMap c_to_bprev;  // C_n -> B_{n-1}
};

HomologyData homology_data(const Complex& x, int n);
FgModule homology(const Complex& x, int n);

/// 0 -> A -f-> B -g-> C -> 0
struct ShortExact {
  ModuleMap f, g;
};

/// f injective, g surjective, g f = 0 and ker g = im f.
bool is_short_exact(const ShortExact& s);
/// g f = 0 and ker g = im f.
bool is_exact_at(const ModuleMap& f, const ModuleMap& g);

/// The four sequences 0->H->C->B'->0, 0->B->Z->H->0, 0->B->X->C->0,
/// 0->Z->X->B'->0 in degree n (B' = B_{n-1}).
std::array<ShortExact, 4> acc_sequences(const HomologyData& hd);

ModuleMap homology_map(const ChainMap& f, int n);
ModuleMap homology_map(const ChainMap& f, const HomologyData& src, const HomologyData& tgt);
bool is_acyclic(const Complex& x);
/// H_n(f) is an isomorphism for every n.
bool is_quasi_iso(const ChainMap& f);
/// (+)_n H_n(x).
FgModule total_homology(const Complex& x);
/// Degrees with nonzero homology, or nullopt when x is acyclic.
std::optional<std::pair<int, int>> homology_range(const Complex& x);

Complex shift(const Complex& x, int n);
ChainMap shift(const ChainMap& f, int n);

struct ComplexSum {
  Complex complex;
  std::map<int, DirectSum> parts;
  std::vector<ChainMap> inj, proj;
};
ComplexSum direct_sum(const std::vector<Complex>& xs);

struct Cone {
  Complex complex;
  std::map<int, DirectSum> parts;  // parts[k] = X_{k-1} (+) Y_k
  ChainMap inc;                    // Y -> Cone(f)
  ChainMap proj;                   // Cone(f) -> Sigma X
};
Cone cone(const ChainMap& f);

enum class Side { Above, Below };
/// Brutal truncation: degrees >= i (Above) or <= i (Below).
Complex truncate_hard(const Complex& x, int i, Side side);
/// The chain maps X -> X_{>=i} (Above, a quotient complex) and
/// X_{<=i} -> X (Below, a subcomplex).
ChainMap truncation_map(const Complex& x, int i, Side side);

/// (X^v)_n = (X_{-n})^v with transposed differentials (Artin mode).
Complex dual(const Complex& x);
ChainMap dual(const ChainMap& f);

/// Z(X), B(X), C(X), H(X) as complexes with zero differential, with the
/// chain maps that relate them to X.
struct Accounting {
  std::map<int, HomologyData> data;
  Complex z, b, c, h;
  ChainMap z_inc;       // Z(X) -> X
  ChainMap b_inc;       // B(X) -> X
  ChainMap c_proj;      // X -> C(X)
  ChainMap to_sigma_b;  // X -> Sigma B(X), x -> d x
};
Accounting accounting(const Complex& x);

/// A distinguished triangle A -f-> B -> C -> Sigma A, recorded as f together
/// with a quasi-isomorphism witness Cone(f) -> C.
struct Triangle {
  ChainMap f;
  Complex c;
  ChainMap witness;
};

struct TriangleCheck {
  bool witness_is_chain_map = false;
  bool witness_is_quasi_iso = false;
  bool composite_null_homotopic = false;
  bool ok() const { return witness_is_chain_map && witness_is_quasi_iso && composite_null_homotopic; }
  std::string detail;
};

/// The triangle A -> B -> Cone(f) with identity witness.
Triangle cone_triangle(const ChainMap& f);
/// 0 -> A -i-> B -p-> C -> 0 degreewise exact: witness (a, b) -> p b.
Triangle ses_triangle(const ChainMap& i, const ChainMap& p);
TriangleCheck verify_triangle(const Triangle& t);

}  // namespace homlevel
