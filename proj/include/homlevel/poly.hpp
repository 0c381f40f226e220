#pragma once

// Polynomials and free-module vectors over k[x_1..x_n], n <= kMaxVars.
//
// Term order: graded reverse lexicographic on monomials; on vectors the
// position-over-term order where a smaller component index is larger.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "homlevel/scalar.hpp"

namespace homlevel {

constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  static Monomial one() { return {}; }
  static Monomial var(int i) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = 1;
    return m;
  }
  int degree() const;
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
  std::string str(const std::vector<std::string>& vars) const;
};

/// >0 when a > b in grevlex, 0 when equal.
int grevlex_compare(const Monomial& a, const Monomial& b);

/// All monomials of total degree d in n variables, largest first.
std::vector<Monomial> monomials_of_degree(int n, int d);

/// Degree-then-lex order used for bases of artinian quotients (ascending).
bool degree_lex_less(const Monomial& a, const Monomial& b);

class Poly {
 public:
  struct Term {
    Monomial m;
    Scalar c;
  };

  Poly() = default;
  static Poly constant(const Scalar& c);
  static Poly monomial(const Monomial& m, const Scalar& c);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  /// Total degree of the leading term; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  /// Coefficient of the constant monomial.
  Scalar constant_term() const;
  const Term& leading() const { return terms_.front(); }
  std::string str(const std::vector<std::string>& vars) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Builds from unsorted terms, combining duplicates and dropping zeros.
  static Poly from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;  // descending grevlex, nonzero coefficients
};

/// Element of a free module R^r: sparse terms c * m * e_comp.
class PolyVec {
 public:
  struct Term {
    int comp;
    Monomial m;
    Scalar c;
  };

  PolyVec() = default;
  static PolyVec unit(int comp, const Scalar& one);
  static PolyVec from_poly(const Poly& p, int comp);
  static PolyVec from_terms(std::vector<Term> terms);
  /// Trusted constructor: terms already sorted, merged and nonzero.
  static PolyVec from_sorted_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  /// The entry at one component as a polynomial.
  Poly component(int comp) const;
  /// Degree deg(m) + twist[comp] of the leading term; twists may be empty (all 0).
  int degree(const std::vector<int>& twists) const;
  bool is_homogeneous(const std::vector<int>& twists) const;
  /// Largest component index present, or -1.
  int max_comp() const;
  /// Keeps components in [lo, hi) and renumbers them to start at 0.
  PolyVec slice(int lo, int hi) const;
  PolyVec shift_components(int by) const;
  /// Renumbers components through a table (entries < 0 drop the term).
  PolyVec remap(const std::vector<int>& table) const;
  std::string str(const std::vector<std::string>& vars) const;

  friend PolyVec operator+(const PolyVec& a, const PolyVec& b);
  friend PolyVec operator-(const PolyVec& a, const PolyVec& b);
  friend PolyVec operator-(const PolyVec& a);
  friend PolyVec operator*(const Poly& p, const PolyVec& v);
  friend PolyVec operator*(const Scalar& c, const PolyVec& v);
  friend bool operator==(const PolyVec& a, const PolyVec& b);
  friend bool operator!=(const PolyVec& a, const PolyVec& b) { return !(a == b); }
  /// c * m * v
  PolyVec times(const Monomial& m, const Scalar& c) const;

 private:
  std::vector<Term> terms_;  // descending position-over-term order
};

/// >0 when (ca, a) > (cb, b) in position-over-term order.
int pot_compare(int ca, const Monomial& a, int cb, const Monomial& b);

}  // namespace homlevel
