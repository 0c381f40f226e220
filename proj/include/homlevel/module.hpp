#pragma once

// Finitely generated modules and their homomorphisms.
//
// Artin mode: a module is a k-vector space with one action matrix per ring
// variable; maps are intertwining matrices.
// Graded mode: a module is a presentation coker(R^s -> R^g) with generator
// degrees; maps are degree-0 and are given by the images of the generators.
//
// Code that must work in both modes goes through "pieces": piece(a) is the
// k-vector space M_a of degree-a elements (graded), or all of M (Artin, for
// every a). Direct sums have pieces that concatenate in summand order.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "homlevel/common.hpp"
#include "homlevel/grobner.hpp"
#include "homlevel/linalg.hpp"
#include "homlevel/ring.hpp"

namespace homlevel {

/// Process-wide knobs; the CLI sets them from flags.
const Config& config();
void set_config(const Config& c);

class FgModule {
 public:
  FgModule() = default;

  /// Artin mode: actions[v] is the matrix of variable v.
  static FgModule from_action(const Ring& r, Index dim, std::vector<Mat> actions);
  /// Graded mode: R(-d_0) (+) ... (+) R(-d_{g-1}) modulo the given relations.
  static FgModule graded(const Ring& r, std::vector<int> gen_degrees, std::vector<PolyVec> relations);
  /// Free module on generators of the given degrees (all 0 in Artin mode).
  static FgModule free_graded(const Ring& r, const std::vector<int>& degrees);
  static FgModule free(const Ring& r, int rank) { return free_graded(r, std::vector<int>(static_cast<std::size_t>(rank), 0)); }
  static FgModule zero(const Ring& r) { return free(r, 0); }
  /// Cokernel of the matrix of ring elements (columns are relations).
  /// In graded mode every column must be homogeneous for gen_degrees.
  static FgModule from_presentation(const Ring& r, const std::vector<std::vector<Poly>>& matrix,
                                    std::vector<int> gen_degrees = {});
  /// The residue field k = R/m.
  static FgModule residue_field(const Ring& r);

  const Ring& ring() const { return d_->ring; }
  const Field& field() const { return d_->ring->field(); }
  bool is_artin() const { return d_->ring->is_artin(); }

  // Artin mode.
  Index dim() const;
  const std::vector<Mat>& actions() const { return d_->actions; }

  // Graded mode.
  const std::vector<int>& gen_degrees() const { return d_->gen_degrees; }
  int ngens() const { return static_cast<int>(d_->gen_degrees.size()); }
  const std::vector<PolyVec>& relations() const { return d_->relations; }
  const GroebnerBasis& relation_gb() const { return d_->gb; }
  PolyVec reduce(const PolyVec& v) const;
  /// Coordinates of a homogeneous degree-a element in piece(a).
  Vec coords(int a, const PolyVec& v) const;
  /// The element of degree a with the given piece coordinates.
  PolyVec element(int a, const Vec& c) const;

  // Both modes.
  Index piece_dim(int a) const;
  /// Multiplication by p as a map piece(a) -> piece(b); p must be zero or
  /// homogeneous of degree b - a (degrees are ignored in Artin mode).
  Mat mult_matrix(const Poly& p, int a, int b) const;
  /// True when built as a standard free module (generator j is the unit of
  /// copy j in Artin mode, or a presentation without relations).
  bool is_standard_free() const { return d_->standard_free; }
  /// Rank of a standard free module; -1 otherwise.
  int free_rank() const { return d_->standard_free ? d_->free_rank : -1; }
  /// Generator degrees of a standard free module (all 0 in Artin mode).
  std::vector<int> free_degrees() const;
  /// Coordinates of generator j of a standard free module in its piece.
  Vec generator_coords(int j) const;

  bool same_as(const FgModule& o) const;
  bool empty() const { return d_ == nullptr; }
  std::string describe() const;

 private:
  struct Piece {
    std::vector<std::pair<int, Monomial>> basis;  // (component, monomial)
    std::map<std::pair<int, std::array<std::uint16_t, kMaxVars>>, Index> index;
  };
  struct Data {
    Ring ring;
    std::vector<Mat> actions;
    Index dim = 0;
    std::vector<int> gen_degrees;
    std::vector<PolyVec> relations;
    GroebnerBasis gb;
    bool standard_free = false;
    int free_rank = 0;
    mutable std::mutex mu;
    mutable std::map<int, std::shared_ptr<const Piece>> pieces;
  };
  std::shared_ptr<const Piece> piece(int a) const;
  static FgModule make(std::shared_ptr<Data> d);

  std::shared_ptr<const Data> d_;
};

class ModuleMap {
 public:
  ModuleMap() = default;
  /// Artin mode: verifies that m intertwines the actions.
  static ModuleMap from_matrix(const FgModule& src, const FgModule& tgt, Mat m);
  /// Graded mode: images of the source generators in the target's free
  /// cover; verifies homogeneity and that relations go to zero.
  static ModuleMap from_images(const FgModule& src, const FgModule& tgt, std::vector<PolyVec> images);
  /// A map out of a standard free module given by the piece coordinates of
  /// each generator's image.
  static ModuleMap from_generator_coords(const FgModule& free_src, const FgModule& tgt,
                                         const std::vector<Vec>& coords);
  static ModuleMap zero(const FgModule& src, const FgModule& tgt);
  static ModuleMap identity(const FgModule& m);
  /// No verification; for results that are correct by construction.
  static ModuleMap unchecked(const FgModule& src, const FgModule& tgt, Mat m,
                             std::vector<PolyVec> images);

  const FgModule& source() const { return src_; }
  const FgModule& target() const { return tgt_; }
  const Mat& matrix() const { return matrix_; }
  const std::vector<PolyVec>& images() const { return images_; }

  /// The k-linear map source_a -> target_a.
  Mat piece_matrix(int a) const;
  /// Piece coordinates of the image of generator j (standard free source).
  Vec generator_image(int j) const;
  PolyVec apply(const PolyVec& v) const;
  bool is_zero() const;
  /// A default-constructed map; block_map treats it as zero.
  bool is_null() const { return src_.empty(); }

  friend ModuleMap operator*(const ModuleMap& g, const ModuleMap& f);  // g after f
  friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
  friend ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);
  friend ModuleMap operator-(const ModuleMap& a);
  friend ModuleMap operator*(const Scalar& c, const ModuleMap& a);
  friend bool operator==(const ModuleMap& a, const ModuleMap& b);

 private:
  FgModule src_, tgt_;
  Mat matrix_;
  std::vector<PolyVec> images_;
};

struct Kernel {
  FgModule module;
  ModuleMap inclusion;
};
struct Cokernel {
  FgModule module;
  ModuleMap projection;
};
struct Image {
  FgModule module;
  ModuleMap epi;   // source ->> image
  ModuleMap mono;  // image >-> target
};
struct DirectSum {
  FgModule module;
  std::vector<ModuleMap> inj;
  std::vector<ModuleMap> proj;
};
struct Pruned {
  FgModule module;
  ModuleMap to;    // pruned -> original
  ModuleMap from;  // original -> pruned
};

Kernel kernel(const ModuleMap& f);
Cokernel cokernel(const ModuleMap& f);
Image image(const ModuleMap& f);
DirectSum direct_sum(const std::vector<FgModule>& ms);
/// The map (+)_j src_j -> (+)_i tgt_i with components blocks[i][j].
ModuleMap block_map(const DirectSum& src, const DirectSum& tgt,
                    const std::vector<std::vector<ModuleMap>>& blocks);

/// h with mono * h = g; throws VerificationError if g does not factor.
ModuleMap factor_through_mono(const ModuleMap& g, const ModuleMap& mono);
/// h with h * epi = g; throws VerificationError if g does not kill ker(epi).
ModuleMap factor_through_epi(const ModuleMap& g, const ModuleMap& epi);
/// h with epi * h = g for a map g out of a standard free module.
ModuleMap lift_through_epi(const ModuleMap& g, const ModuleMap& epi);

/// Minimal free module mapping onto m (generators reduce to a basis of m/mm).
ModuleMap minimal_cover(const FgModule& m);
/// dim_k m/mm.
int minimal_generators(const FgModule& m);
/// Presentation with minimal generators (graded) or m itself (Artin).
Pruned prune(const FgModule& m);

bool is_zero(const FgModule& m);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);
/// Inverse of an isomorphism; throws VerificationError otherwise.
ModuleMap inverse(const ModuleMap& f);

/// A k-basis of Hom_R(m, n) (degree-0 maps in graded mode).
std::vector<ModuleMap> hom_space(const FgModule& m, const FgModule& n);

enum class Verdict { Yes, No, Inconclusive };

struct IsoResult {
  Verdict verdict;
  std::optional<ModuleMap> witness;
  std::string reason;
};

/// Decides m ~= n: invariants first, then a search through hom_space that
/// is exhaustive over small fields and randomized otherwise.
IsoResult isomorphism(const FgModule& m, const FgModule& n);

struct FreeWitness {
  bool free;
  int rank;
  std::optional<ModuleMap> iso;  // standard free -> m
};
FreeWitness is_free(const FgModule& m);

/// Hom_k(m, k) with transposed actions (Artin mode).
FgModule matlis_dual(const FgModule& m);
/// f^v : target^v -> source^v.
ModuleMap matlis_dual(const ModuleMap& f);
/// E = Hom_k(R, k) (Artin mode).
FgModule matlis_E(const Ring& r);

/// m(s): generator degrees lowered by s (graded); m itself in Artin mode.
FgModule shift_degrees(const FgModule& m, int s);
/// The same map between shifted modules.
ModuleMap shift_degrees(const ModuleMap& f, int s);

/// The map between standard free modules sending generator j to
/// sum_i matrix[i][j] e_i.
ModuleMap multiplication(const FgModule& src, const FgModule& tgt, const std::vector<std::vector<Poly>>& matrix);

/// Coordinates of f in a fixed k-basis of Hom_k-data: the matrix entries
/// (Artin) or the piece coordinates of each generator image (graded).
Vec flatten(const ModuleMap& f);

/// Random module map m -> n drawn from hom_space.
ModuleMap random_hom(const FgModule& m, const FgModule& n, std::mt19937_64& rng);

}  // namespace homlevel
