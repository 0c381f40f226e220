#include "homlevel/grobner.hpp"

#include <algorithm>
#include <limits>

#include "homlevel/common.hpp"

namespace homlevel {

namespace {

using Index = std::size_t;

struct Reducer {
  const std::vector<PolyVec>& elements;
  const std::vector<std::vector<Index>>& by_comp;
  Index skip = std::numeric_limits<Index>::max();

  const PolyVec* find(int comp, const Monomial& m) const {
    if (comp < 0 || static_cast<std::size_t>(comp) >= by_comp.size()) return nullptr;
    for (Index k : by_comp[static_cast<std::size_t>(comp)]) {
      if (k == skip) continue;
      if (elements[k].leading().m.divides(m)) return &elements[k];
    }
    return nullptr;
  }

  // Full reduction; quotients (if requested) are accumulated per element index.
  PolyVec reduce(PolyVec p, int comp_limit, std::vector<PolyVec::Term>* quotient = nullptr) const {
    std::vector<PolyVec::Term> rest;
    while (!p.is_zero()) {
      const auto& t = p.leading();
      const PolyVec* g = nullptr;
      if (comp_limit < 0 || t.comp < comp_limit) g = find(t.comp, t.m);
      if (g == nullptr) {
        rest.push_back(t);
        std::vector<PolyVec::Term> tail(p.terms().begin() + 1, p.terms().end());
        p = PolyVec::from_sorted_terms(std::move(tail));
        continue;
      }
      const Monomial q = t.m / g->leading().m;
      const Scalar c = t.c / g->leading().c;
      if (quotient != nullptr) {
        const auto idx = static_cast<int>(g - elements.data());
        quotient->push_back({idx, q, c});
      }
      p = p - g->times(q, c);
    }
    return PolyVec::from_sorted_terms(std::move(rest));
  }
};

PolyVec make_monic(const PolyVec& v) {
  if (v.is_zero()) return v;
  return v.leading().c.inverse() * v;
}

std::vector<std::vector<Index>> index_by_comp(const std::vector<PolyVec>& els, int rank) {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(std::max(rank, 0)));
  for (Index k = 0; k < els.size(); ++k) {
    const int c = els[k].leading().comp;
    if (static_cast<std::size_t>(c) >= out.size()) out.resize(static_cast<std::size_t>(c) + 1);
    out[static_cast<std::size_t>(c)].push_back(k);
  }
  return out;
}

struct Pair {
  Index i, j;
  int degree;
};

PolyVec s_vector(const PolyVec& a, const PolyVec& b) {
  const Monomial l = a.leading().m.lcm(b.leading().m);
  return a.times(l / a.leading().m, b.leading().c) - b.times(l / b.leading().m, a.leading().c);
}

}  // namespace

bool GroebnerBasis::is_leading_divisible(int comp, const Monomial& m) const {
  if (comp < 0 || static_cast<std::size_t>(comp) >= by_comp_.size()) return false;
  for (auto k : by_comp_[static_cast<std::size_t>(comp)])
    if (elements_[k].leading().m.divides(m)) return true;
  return false;
}

GroebnerBasis buchberger(const std::vector<PolyVec>& gens, int rank, std::vector<int> twists,
                         std::uint64_t budget) {
  twists.resize(static_cast<std::size_t>(std::max(rank, 0)), 0);
  auto twist = [&](int comp) { return twists[static_cast<std::size_t>(comp)]; };

  std::vector<PolyVec> basis;
  std::vector<std::vector<Index>> by_comp(static_cast<std::size_t>(std::max(rank, 0)));
  std::vector<Pair> pairs;
  std::uint64_t processed = 0;

  auto add = [&](PolyVec g) {
    g = make_monic(g);
    const Index idx = basis.size();
    const int c = g.leading().comp;
    for (Index k : by_comp[static_cast<std::size_t>(c)]) {
      const Monomial l = basis[k].leading().m.lcm(g.leading().m);
      pairs.push_back({k, idx, l.degree() + twist(c)});
    }
    basis.push_back(std::move(g));
    by_comp[static_cast<std::size_t>(c)].push_back(idx);
  };

  // Seed with the generators in increasing order so the result does not
  // depend on the caller's ordering more than necessary.
  std::vector<PolyVec> seeds;
  for (const auto& g : gens)
    if (!g.is_zero()) seeds.push_back(g);
  std::stable_sort(seeds.begin(), seeds.end(), [](const PolyVec& a, const PolyVec& b) {
    return pot_compare(a.leading().comp, a.leading().m, b.leading().comp, b.leading().m) < 0;
  });
  for (auto& g : seeds) {
    Reducer r{basis, by_comp};
    PolyVec red = r.reduce(g, -1);
    if (!red.is_zero()) add(std::move(red));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    const Pair p = *best;
    pairs.erase(best);
    if (++processed > budget) {
      throw BudgetExceeded("Groebner basis computation exceeded the pair budget of " +
                           std::to_string(budget));
    }
    Reducer r{basis, by_comp};
    PolyVec s = r.reduce(s_vector(basis[p.i], basis[p.j]), -1);
    if (!s.is_zero()) add(std::move(s));
  }

  // Minimize: drop elements whose leading term is divisible by another's.
  std::vector<PolyVec> minimal;
  for (Index k = 0; k < basis.size(); ++k) {
    bool redundant = false;
    const auto& lk = basis[k].leading();
    for (Index l = 0; l < basis.size() && !redundant; ++l) {
      if (l == k) continue;
      const auto& ll = basis[l].leading();
      if (ll.comp != lk.comp || !ll.m.divides(lk.m)) continue;
      if (ll.m != lk.m || l < k) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[k]);
  }
  std::sort(minimal.begin(), minimal.end(), [](const PolyVec& a, const PolyVec& b) {
    return pot_compare(a.leading().comp, a.leading().m, b.leading().comp, b.leading().m) < 0;
  });

  // Interreduce the tails.
  auto idx = index_by_comp(minimal, rank);
  for (Index k = 0; k < minimal.size(); ++k) {
    Reducer r{minimal, idx, k};
    PolyVec head = PolyVec::from_sorted_terms({minimal[k].leading()});
    std::vector<PolyVec::Term> tail(minimal[k].terms().begin() + 1, minimal[k].terms().end());
    minimal[k] = make_monic(head + r.reduce(PolyVec::from_sorted_terms(std::move(tail)), -1));
  }

  GroebnerBasis gb;
  gb.elements_ = std::move(minimal);
  gb.twists_ = std::move(twists);
  gb.rank_ = rank;
  gb.pairs_ = processed;
  gb.by_comp_ = index_by_comp(gb.elements_, rank);
  return gb;
}

PolyVec normal_form(const PolyVec& v, const GroebnerBasis& gb, int comp_limit) {
  auto idx = index_by_comp(gb.elements(), gb.rank());
  Reducer r{gb.elements(), idx};
  return r.reduce(v, comp_limit);
}

std::vector<PolyVec> schreyer_syzygies(const GroebnerBasis& gb) {
  const auto& els = gb.elements();
  auto idx = index_by_comp(els, gb.rank());
  Reducer r{els, idx};
  std::vector<PolyVec> out;
  for (Index i = 0; i < els.size(); ++i) {
    for (Index j = i + 1; j < els.size(); ++j) {
      if (els[i].leading().comp != els[j].leading().comp) continue;
      const Monomial l = els[i].leading().m.lcm(els[j].leading().m);
      const Monomial mi = l / els[i].leading().m;
      const Monomial mj = l / els[j].leading().m;
      const Scalar ci = els[j].leading().c;
      const Scalar cj = els[i].leading().c;
      PolyVec s = els[i].times(mi, ci) - els[j].times(mj, cj);
      std::vector<PolyVec::Term> q;
      PolyVec rem = r.reduce(s, -1, &q);
      if (!rem.is_zero()) throw Error("schreyer_syzygies: input is not a Groebner basis");
      std::vector<PolyVec::Term> terms = {{static_cast<int>(i), mi, ci},
                                          {static_cast<int>(j), mj, -cj}};
      for (auto& t : q) terms.push_back({t.comp, t.m, -t.c});
      PolyVec syz = PolyVec::from_terms(std::move(terms));
      if (!syz.is_zero()) out.push_back(std::move(syz));
    }
  }
  return out;
}

SubmoduleLifter::SubmoduleLifter(const std::vector<PolyVec>& cols,
                                 const std::vector<int>& col_degrees, int rank,
                                 const std::vector<int>& twists, const Field& field,
                                 std::uint64_t budget)
    : rank_(rank), ncols_(static_cast<int>(cols.size())) {
  std::vector<int> tw = twists;
  tw.resize(static_cast<std::size_t>(rank), 0);
  for (int d : col_degrees) tw.push_back(d);
  std::vector<PolyVec> aug;
  for (int i = 0; i < ncols_; ++i) {
    aug.push_back(cols[static_cast<std::size_t>(i)] + PolyVec::unit(rank + i, field.one()));
  }
  augmented_ = buchberger(aug, rank + ncols_, tw, budget);
  for (const auto& g : augmented_.elements()) {
    if (g.leading().comp < rank) continue;
    PolyVec s = g.slice(rank, rank + ncols_);
    syzygy_degrees_.push_back(g.degree(tw));
    syzygies_.push_back(std::move(s));
  }
}

std::optional<PolyVec> SubmoduleLifter::lift(const PolyVec& v) const {
  PolyVec r = normal_form(v, augmented_, rank_);
  if (!r.is_zero() && r.leading().comp < rank_) return std::nullopt;
  return -r.slice(rank_, rank_ + ncols_);
}

}  // namespace homlevel
