#pragma once

// Computable rings: artinian local quotients k[x]/I with an explicit monomial
// basis, and standard graded polynomial rings k[x_1..x_n].

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "homlevel/common.hpp"
#include "homlevel/grobner.hpp"
#include "homlevel/linalg.hpp"
#include "homlevel/poly.hpp"

namespace homlevel {

enum class RingMode { Artin, GradedPoly };

class RingDesc {
 public:
  RingMode mode() const { return mode_; }
  bool is_artin() const { return mode_ == RingMode::Artin; }
  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  /// Canonical text form, accepted by make_ring.
  const std::string& presentation() const { return presentation_; }

  // Artin mode ------------------------------------------------------------
  /// Standard monomials ordered by degree, then lexicographically.
  const std::vector<Monomial>& basis() const { return basis_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<Poly>& ideal() const { return ideal_; }
  /// Regular representation of each variable in the monomial basis.
  const std::vector<Mat>& var_actions() const { return var_actions_; }
  /// Structure constants: coordinates of basis[i] * basis[j].
  Vec product(Index i, Index j) const;
  /// Commutative, associative and unital, checked on the table itself.
  bool verify_multiplication_table() const;

  // Both modes ------------------------------------------------------------
  /// Normal form (Artin) or the polynomial itself (graded).
  Poly reduce(const Poly& p) const;
  /// Coordinates of an element in the monomial basis (Artin).
  Vec coords(const Poly& p) const;
  Poly from_coords(const Vec& v) const;
  /// Matrix of multiplication by p on the regular representation (Artin).
  Mat regular_action(const Poly& p) const;
  Poly var(int i) const { return Poly::monomial(Monomial::var(i), field_.one()); }
  Poly constant(long long c) const { return Poly::constant(field_.from_int(c)); }
  Poly parse(std::string_view text) const;
  std::string str(const Poly& p) const { return p.str(vars_); }

  static std::shared_ptr<const RingDesc> artin(const Field& f, std::vector<std::string> vars,
                                               std::vector<Poly> ideal);
  static std::shared_ptr<const RingDesc> graded(const Field& f, std::vector<std::string> vars);

 private:
  RingMode mode_ = RingMode::GradedPoly;
  Field field_;
  std::vector<std::string> vars_;
  std::string presentation_;
  std::vector<Poly> ideal_;
  GroebnerBasis ideal_gb_;
  std::vector<Monomial> basis_;
  std::vector<Mat> var_actions_;
};

using Ring = std::shared_ptr<const RingDesc>;

/// Parses "artin(F2; x, y | x^2, xy, y^2)" or "poly(F101; x, y, z)".
/// Inside the ideal list "(x,y)^n" expands to all degree-n products.
Ring make_ring(std::string_view text);

/// Parses a field name: "Q" or "F<p>".
Field parse_field(std::string_view text);

/// Parses a polynomial in the given variables. Juxtaposed single-letter
/// variables ("xy") are read as products.
Poly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Field& f);

/// 0 in Artin mode (the maximal ideal is nilpotent), n for k[x_1..x_n].
int depth_ring(const RingDesc& r);

struct GorensteinReport {
  bool gorenstein;
  Index socle_dimension;
};

/// Socle dimension of an artinian ring; Gorenstein iff it is 1.
GorensteinReport is_gorenstein_artin(const RingDesc& r);

}  // namespace homlevel
