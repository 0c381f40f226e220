#include "homlevel/module.hpp"

#include <sstream>

namespace homlevel {

namespace {

Config& global_config() {
  static Config c;
  return c;
}

// p(X) for a polynomial and commuting matrices.
Mat eval_poly(const Poly& p, const std::vector<Mat>& xs, Index dim, const Field& f) {
  Mat out = zeros(f, dim, dim);
  for (const auto& t : p.terms()) {
    Mat m = identity(f, dim);
    for (std::size_t v = 0; v < xs.size(); ++v)
      for (int k = 0; k < t.m.e[v]; ++k) m = xs[v] * m;
    out += f.bind(t.c) * m;
  }
  return out;
}

}  // namespace

const Config& config() { return global_config(); }
void set_config(const Config& c) { global_config() = c; }

// ---------------------------------------------------------------- FgModule

FgModule FgModule::make(std::shared_ptr<Data> d) {
  FgModule m;
  m.d_ = std::move(d);
  return m;
}

FgModule FgModule::from_action(const Ring& r, Index dim, std::vector<Mat> actions) {
  if (!r->is_artin()) throw WrongMode("action matrices need an artinian ring");
  const Field& f = r->field();
  if (static_cast<int>(actions.size()) != r->nvars())
    throw VerificationError("expected " + std::to_string(r->nvars()) + " action matrices, got " +
                            std::to_string(actions.size()));
  for (auto& a : actions) {
    if (a.rows() != dim || a.cols() != dim)
      throw VerificationError("action matrices must be " + std::to_string(dim) + "x" +
                              std::to_string(dim));
    a = bind(a, f);
  }
  for (std::size_t u = 0; u < actions.size(); ++u)
    for (std::size_t v = u + 1; v < actions.size(); ++v)
      if (!equal(actions[u] * actions[v], actions[v] * actions[u]))
        throw VerificationError("actions of " + r->vars()[u] + " and " + r->vars()[v] +
                                " do not commute");
  for (const auto& rel : r->ideal())
    if (!is_zero(eval_poly(rel, actions, dim, f)))
      throw VerificationError("actions do not satisfy the relation " + r->str(rel));
  auto d = std::make_shared<Data>();
  d->ring = r;
  d->dim = dim;
  d->actions = std::move(actions);
  return make(std::move(d));
}

FgModule FgModule::graded(const Ring& r, std::vector<int> gen_degrees,
                          std::vector<PolyVec> relations) {
  if (r->is_artin()) throw WrongMode("graded presentations need a polynomial ring");
  const int g = static_cast<int>(gen_degrees.size());
  std::vector<PolyVec> rels;
  for (auto& rel : relations) {
    if (rel.is_zero()) continue;
    if (rel.max_comp() >= g) throw VerificationError("relation has a component beyond the generators");
    if (!rel.is_homogeneous(gen_degrees))
      throw VerificationError("relation " + rel.str(r->vars()) + " is not homogeneous");
    rels.push_back(std::move(rel));
  }
  auto d = std::make_shared<Data>();
  d->ring = r;
  d->gb = buchberger(rels, g, gen_degrees, config().grobner_pair_budget);
  d->gen_degrees = std::move(gen_degrees);
  d->relations = std::move(rels);
  if (d->relations.empty()) {
    d->standard_free = true;
    d->free_rank = g;
  }
  return make(std::move(d));
}

FgModule FgModule::free_graded(const Ring& r, const std::vector<int>& degrees) {
  const int rank = static_cast<int>(degrees.size());
  if (!r->is_artin()) return graded(r, degrees, {});
  const Field& f = r->field();
  std::vector<Mat> actions;
  for (const auto& x : r->var_actions())
    actions.push_back(block_diagonal(std::vector<Mat>(static_cast<std::size_t>(rank), x), f));
  auto d = std::make_shared<Data>();
  d->ring = r;
  d->dim = rank * r->dim();
  d->actions = std::move(actions);
  d->standard_free = true;
  d->free_rank = rank;
  d->gen_degrees.assign(static_cast<std::size_t>(rank), 0);
  return make(std::move(d));
}

FgModule FgModule::from_presentation(const Ring& r, const std::vector<std::vector<Poly>>& matrix,
                                     std::vector<int> gen_degrees) {
  const int g = static_cast<int>(matrix.size());
  const int m = g ? static_cast<int>(matrix[0].size()) : 0;
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != m) throw VerificationError("ragged presentation matrix");
  if (gen_degrees.empty()) gen_degrees.assign(static_cast<std::size_t>(g), 0);
  if (static_cast<int>(gen_degrees.size()) != g)
    throw VerificationError("generator degrees do not match the matrix");
  if (r->is_artin()) {
    auto src = free(r, m), tgt = free(r, g);
    return cokernel(multiplication(src, tgt, matrix)).module;
  }
  std::vector<PolyVec> rels;
  for (int j = 0; j < m; ++j) {
    PolyVec col;
    for (int i = 0; i < g; ++i)
      col = col + PolyVec::from_poly(matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], i);
    rels.push_back(col);
  }
  return graded(r, std::move(gen_degrees), std::move(rels));
}

FgModule FgModule::residue_field(const Ring& r) {
  if (r->is_artin()) {
    std::vector<Mat> acts(static_cast<std::size_t>(r->nvars()), zeros(r->field(), 1, 1));
    return from_action(r, 1, std::move(acts));
  }
  std::vector<PolyVec> rels;
  for (int v = 0; v < r->nvars(); ++v) rels.push_back(PolyVec::from_poly(r->var(v), 0));
  return graded(r, {0}, std::move(rels));
}

Index FgModule::dim() const {
  if (!is_artin()) throw WrongMode("k-dimension of a graded module is not finite in general");
  return d_->dim;
}

PolyVec FgModule::reduce(const PolyVec& v) const {
  if (is_artin()) throw WrongMode("reduce needs a graded module");
  return normal_form(v, d_->gb);
}

std::shared_ptr<const FgModule::Piece> FgModule::piece(int a) const {
  std::lock_guard<std::mutex> lock(d_->mu);
  auto it = d_->pieces.find(a);
  if (it != d_->pieces.end()) return it->second;
  auto p = std::make_shared<Piece>();
  const int n = ring()->nvars();
  for (int c = 0; c < ngens(); ++c) {
    const int deg = a - d_->gen_degrees[static_cast<std::size_t>(c)];
    for (const auto& m : monomials_of_degree(n, deg)) {
      if (d_->gb.is_leading_divisible(c, m)) continue;
      p->index[{c, m.e}] = static_cast<Index>(p->basis.size());
      p->basis.emplace_back(c, m);
    }
  }
  d_->pieces[a] = p;
  return p;
}

Index FgModule::piece_dim(int a) const {
  if (is_artin()) return d_->dim;
  return static_cast<Index>(piece(a)->basis.size());
}

Vec FgModule::coords(int a, const PolyVec& v) const {
  if (is_artin()) throw WrongMode("coords needs a graded module");
  auto p = piece(a);
  Vec out = zeros(field(), static_cast<Index>(p->basis.size()), 1);
  const PolyVec r = reduce(v);
  for (const auto& t : r.terms()) {
    auto it = p->index.find({t.comp, t.m.e});
    if (it == p->index.end())
      throw Error("element " + r.str(ring()->vars()) + " does not have degree " + std::to_string(a));
    out(it->second) = t.c;
  }
  return out;
}

PolyVec FgModule::element(int a, const Vec& c) const {
  if (is_artin()) throw WrongMode("element needs a graded module");
  auto p = piece(a);
  if (c.size() != static_cast<Index>(p->basis.size()))
    throw Error("coordinate vector does not match the piece of degree " + std::to_string(a));
  std::vector<PolyVec::Term> ts;
  for (Index i = 0; i < c.size(); ++i) {
    if (c(i).is_zero()) continue;
    const auto& [comp, m] = p->basis[static_cast<std::size_t>(i)];
    ts.push_back({comp, m, field().bind(c(i))});
  }
  return PolyVec::from_terms(std::move(ts));
}

Mat FgModule::mult_matrix(const Poly& p, int a, int b) const {
  if (is_artin()) return eval_poly(p, d_->actions, d_->dim, field());
  auto src = piece(a);
  Mat out = zeros(field(), piece_dim(b), static_cast<Index>(src->basis.size()));
  if (p.is_zero()) return out;
  if (!p.is_homogeneous() || p.degree() != b - a)
    throw Error("mult_matrix: polynomial is not homogeneous of degree " + std::to_string(b - a));
  for (std::size_t i = 0; i < src->basis.size(); ++i) {
    const auto& [comp, m] = src->basis[i];
    PolyVec v = p * PolyVec::from_sorted_terms({{comp, m, field().one()}});
    out.col(static_cast<Index>(i)) = coords(b, v);
  }
  return out;
}

std::vector<int> FgModule::free_degrees() const {
  if (!is_standard_free()) throw Error("free_degrees needs a standard free module");
  return d_->gen_degrees;
}

Vec FgModule::generator_coords(int j) const {
  if (!is_standard_free()) throw Error("generator_coords needs a standard free module");
  if (is_artin()) return unit_vector(field(), d_->dim, j * ring()->dim());
  const int a = d_->gen_degrees[static_cast<std::size_t>(j)];
  return coords(a, PolyVec::unit(j, field().one()));
}

bool FgModule::same_as(const FgModule& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  if (ring() != o.ring() && ring()->presentation() != o.ring()->presentation()) return false;
  if (is_artin()) {
    if (d_->dim != o.d_->dim) return false;
    for (std::size_t v = 0; v < d_->actions.size(); ++v)
      if (!equal(d_->actions[v], o.d_->actions[v])) return false;
    return true;
  }
  return d_->gen_degrees == o.d_->gen_degrees && d_->relations == o.d_->relations;
}

std::string FgModule::describe() const {
  std::ostringstream os;
  if (is_artin()) {
    os << "dim " << d_->dim;
    if (d_->standard_free) os << " (free of rank " << d_->free_rank << ")";
    return os.str();
  }
  os << "generators in degrees [";
  for (std::size_t i = 0; i < d_->gen_degrees.size(); ++i) os << (i ? "," : "") << d_->gen_degrees[i];
  os << "], " << d_->relations.size() << " relations";
  return os.str();
}

// ---------------------------------------------------------------- ModuleMap

ModuleMap ModuleMap::unchecked(const FgModule& src, const FgModule& tgt, Mat m,
                               std::vector<PolyVec> images) {
  ModuleMap f;
  f.src_ = src;
  f.tgt_ = tgt;
  f.matrix_ = std::move(m);
  f.images_ = std::move(images);
  return f;
}

ModuleMap ModuleMap::from_matrix(const FgModule& src, const FgModule& tgt, Mat m) {
  if (!src.is_artin()) throw WrongMode("from_matrix needs artinian modules");
  if (m.rows() != tgt.dim() || m.cols() != src.dim())
    throw VerificationError("map matrix has shape " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(tgt.dim()) +
                            "x" + std::to_string(src.dim()));
  m = bind(m, src.field());
  for (std::size_t v = 0; v < src.actions().size(); ++v)
    if (!equal(m * src.actions()[v], tgt.actions()[v] * m))
      throw VerificationError("map is not R-linear (fails for " + src.ring()->vars()[v] + ")");
  return unchecked(src, tgt, std::move(m), {});
}

ModuleMap ModuleMap::from_images(const FgModule& src, const FgModule& tgt,
                                 std::vector<PolyVec> images) {
  if (src.is_artin()) throw WrongMode("from_images needs graded modules");
  if (static_cast<int>(images.size()) != src.ngens())
    throw VerificationError("expected one image per source generator");
  for (std::size_t j = 0; j < images.size(); ++j) {
    auto& im = images[j];
    if (im.max_comp() >= tgt.ngens()) throw VerificationError("image has a component beyond the target");
    im = tgt.reduce(im);
    if (im.is_zero()) continue;
    if (!im.is_homogeneous(tgt.gen_degrees()) || im.degree(tgt.gen_degrees()) != src.gen_degrees()[j])
      throw VerificationError("image of generator " + std::to_string(j) + " is not of degree " +
                              std::to_string(src.gen_degrees()[j]));
  }
  ModuleMap f = unchecked(src, tgt, {}, std::move(images));
  for (const auto& rel : src.relations())
    if (!f.apply(rel).is_zero()) throw VerificationError("map does not respect the source relations");
  return f;
}

ModuleMap ModuleMap::from_generator_coords(const FgModule& free_src, const FgModule& tgt,
                                           const std::vector<Vec>& coords) {
  if (!free_src.is_standard_free()) throw Error("from_generator_coords needs a standard free source");
  if (static_cast<int>(coords.size()) != free_src.free_rank())
    throw Error("expected one coordinate vector per generator");
  const Field& f = free_src.field();
  if (!free_src.is_artin()) {
    std::vector<PolyVec> images;
    const auto degs = free_src.free_degrees();
    for (std::size_t j = 0; j < coords.size(); ++j) images.push_back(tgt.element(degs[j], coords[j]));
    return unchecked(free_src, tgt, {}, std::move(images));
  }
  const auto& ring = *free_src.ring();
  const Index da = ring.dim();
  std::vector<Mat> monomial_actions;
  for (const auto& b : ring.basis())
    monomial_actions.push_back(tgt.mult_matrix(Poly::monomial(b, f.one()), 0, 0));
  Mat m = zeros(f, tgt.dim(), free_src.dim());
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (Index i = 0; i < da; ++i)
      m.col(static_cast<Index>(j) * da + i) = monomial_actions[static_cast<std::size_t>(i)] * coords[j];
  return unchecked(free_src, tgt, std::move(m), {});
}

ModuleMap ModuleMap::zero(const FgModule& src, const FgModule& tgt) {
  if (src.is_artin()) return unchecked(src, tgt, zeros(src.field(), tgt.dim(), src.dim()), {});
  return unchecked(src, tgt, {}, std::vector<PolyVec>(static_cast<std::size_t>(src.ngens())));
}

ModuleMap ModuleMap::identity(const FgModule& m) {
  if (m.is_artin()) return unchecked(m, m, homlevel::identity(m.field(), m.dim()), {});
  std::vector<PolyVec> images;
  for (int j = 0; j < m.ngens(); ++j) images.push_back(m.reduce(PolyVec::unit(j, m.field().one())));
  return unchecked(m, m, {}, std::move(images));
}

Mat ModuleMap::piece_matrix(int a) const {
  if (src_.is_artin()) return matrix_;
  const Index n = src_.piece_dim(a);
  Mat out = zeros(src_.field(), tgt_.piece_dim(a), n);
  for (Index i = 0; i < n; ++i) {
    PolyVec e = src_.element(a, unit_vector(src_.field(), n, i));
    out.col(i) = tgt_.coords(a, apply(e));
  }
  return out;
}

Vec ModuleMap::generator_image(int j) const {
  if (!src_.is_standard_free()) throw Error("generator_image needs a standard free source");
  if (src_.is_artin()) return matrix_.col(j * src_.ring()->dim());
  return tgt_.coords(src_.free_degrees()[static_cast<std::size_t>(j)], images_[static_cast<std::size_t>(j)]);
}

PolyVec ModuleMap::apply(const PolyVec& v) const {
  if (src_.is_artin()) throw WrongMode("apply needs graded modules");
  PolyVec out;
  for (const auto& t : v.terms()) out = out + images_[static_cast<std::size_t>(t.comp)].times(t.m, t.c);
  return tgt_.reduce(out);
}

bool ModuleMap::is_zero() const {
  if (src_.is_artin()) return homlevel::is_zero(matrix_);
  for (const auto& im : images_)
    if (!im.is_zero()) return false;
  return true;
}

ModuleMap operator*(const ModuleMap& g, const ModuleMap& f) {
  if (!f.tgt_.same_as(g.src_)) throw Error("composition of maps with mismatched modules");
  if (f.src_.is_artin()) return ModuleMap::unchecked(f.src_, g.tgt_, g.matrix_ * f.matrix_, {});
  std::vector<PolyVec> images;
  for (const auto& im : f.images_) images.push_back(g.apply(im));
  return ModuleMap::unchecked(f.src_, g.tgt_, {}, std::move(images));
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  if (!a.src_.same_as(b.src_) || !a.tgt_.same_as(b.tgt_)) throw Error("sum of maps with mismatched modules");
  if (a.src_.is_artin()) return ModuleMap::unchecked(a.src_, a.tgt_, a.matrix_ + b.matrix_, {});
  std::vector<PolyVec> images;
  for (std::size_t j = 0; j < a.images_.size(); ++j)
    images.push_back(a.tgt_.reduce(a.images_[j] + b.images_[j]));
  return ModuleMap::unchecked(a.src_, a.tgt_, {}, std::move(images));
}

ModuleMap operator*(const Scalar& c, const ModuleMap& a) {
  const Scalar cb = a.src_.field().bind(c);
  if (a.src_.is_artin()) return ModuleMap::unchecked(a.src_, a.tgt_, cb * a.matrix_, {});
  std::vector<PolyVec> images;
  for (const auto& im : a.images_) images.push_back(cb * im);
  return ModuleMap::unchecked(a.src_, a.tgt_, {}, std::move(images));
}

ModuleMap operator-(const ModuleMap& a) { return a.src_.field().from_int(-1) * a; }
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) { return a + (-b); }

bool operator==(const ModuleMap& a, const ModuleMap& b) {
  if (a.src_.is_artin()) return equal(a.matrix_, b.matrix_);
  return a.images_ == b.images_;
}

}  // namespace homlevel
