#pragma once

// Buchberger's algorithm for submodules of graded free modules R^r.
//
// Leading terms follow the position-over-term order of PolyVec. Kernels and
// lifts use an augmented basis: generator i becomes (f_i, e_{r+i}) in
// R^r (+) R^s, where the f components are ranked above the tail. Basis
// elements with zero f-part then form a Groebner basis of the syzygies, and
// reducing (v, 0) expresses v in terms of the f_i.

#include <cstdint>
#include <optional>
#include <vector>

#include "homlevel/poly.hpp"

namespace homlevel {

class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const std::vector<PolyVec>& elements() const { return elements_; }
  const std::vector<int>& twists() const { return twists_; }
  int rank() const { return rank_; }
  /// Number of S-pairs reduced while building the basis.
  std::uint64_t pairs_processed() const { return pairs_; }
  /// True when some leading term divides (comp, m).
  bool is_leading_divisible(int comp, const Monomial& m) const;

 private:
  friend GroebnerBasis buchberger(const std::vector<PolyVec>&, int, std::vector<int>,
                                  std::uint64_t);
  std::vector<PolyVec> elements_;  // reduced, monic, ascending leading terms
  std::vector<int> twists_;
  int rank_ = 0;
  std::uint64_t pairs_ = 0;
  std::vector<std::vector<std::size_t>> by_comp_;  // element indices per leading component
};

/// Reduced Groebner basis of the submodule of R^rank generated by gens.
/// Throws BudgetExceeded after more than `budget` S-pair reductions.
GroebnerBasis buchberger(const std::vector<PolyVec>& gens, int rank, std::vector<int> twists,
                         std::uint64_t budget);

/// Full reduction of v by gb. Only terms with component < comp_limit are
/// reduced; the rest are carried along unchanged.
PolyVec normal_form(const PolyVec& v, const GroebnerBasis& gb, int comp_limit = -1);

/// Schreyer generators of the syzygies among the elements of gb, as vectors
/// in R^{|gb|}.
std::vector<PolyVec> schreyer_syzygies(const GroebnerBasis& gb);

/// Tracks how submodule elements are written in terms of fixed generators.
class SubmoduleLifter {
 public:
  /// cols are elements of R^rank with homogeneous degrees col_degrees.
  SubmoduleLifter(const std::vector<PolyVec>& cols, const std::vector<int>& col_degrees, int rank,
                  const std::vector<int>& twists, const Field& field, std::uint64_t budget);

  /// Coefficients c with sum c_i cols_i = v, or nullopt if v is not in the span.
  std::optional<PolyVec> lift(const PolyVec& v) const;
  /// Groebner basis of the syzygies of cols, as vectors in R^{|cols|}.
  const std::vector<PolyVec>& syzygies() const { return syzygies_; }
  /// Degree of each syzygy (for the twists col_degrees).
  const std::vector<int>& syzygy_degrees() const { return syzygy_degrees_; }

 private:
  int rank_;
  int ncols_;
  GroebnerBasis augmented_;
  std::vector<PolyVec> syzygies_;
  std::vector<int> syzygy_degrees_;
};

}  // namespace homlevel
