#include "homlevel/poly.hpp"

#include <algorithm>
#include <sstream>

namespace homlevel {

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(e[i], o.e[i]);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  return r;
}

std::string Monomial::str(const std::vector<std::string>& vars) const {
  std::string out;
  for (std::size_t i = 0; i < vars.size() && i < kMaxVars; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

bool degree_lex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Within a degree, x before y: larger exponent of the first variable first.
  for (int i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  }
  return false;
}

namespace {

void fill_monomials(int n, int var, int left, Monomial& cur, std::vector<Monomial>& out) {
  if (var == n - 1) {
    cur.e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(left);
    out.push_back(cur);
    cur.e[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
    fill_monomials(n, var + 1, left - k, cur, out);
  }
  cur.e[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.push_back(Monomial::one());
    return out;
  }
  Monomial cur;
  fill_monomials(n, 0, d, cur, out);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) > 0; });
  return out;
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(const Scalar& c) { return monomial(Monomial::one(), c); }

Poly Poly::monomial(const Monomial& m, const Scalar& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_compare(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.front().m.degree(); }

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.degree() != degree()) return false;
  return true;
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return Scalar(0);
}

std::string Poly::str(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.c.str();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (t.c.is_modular() && t.c.characteristic() > 2 &&
        t.c.residue() > static_cast<std::int64_t>(t.c.characteristic() / 2)) {
      // Print residues above p/2 as negatives: -1 reads better than 100.
      c = std::to_string(static_cast<std::int64_t>(t.c.characteristic()) - t.c.residue());
      neg = true;
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (t.m.is_one()) {
      os << c;
    } else {
      if (c != "1") os << c << "*";
      os << t.m.str(vars);
    }
  }
  return os.str();
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    int cmp = i == a.terms_.end() ? -1 : j == b.terms_.end() ? 1 : grevlex_compare(i->m, j->m);
    if (cmp > 0) {
      r.terms_.push_back(*i++);
    } else if (cmp < 0) {
      r.terms_.push_back(*j++);
    } else {
      Scalar c = i->c + j->c;
      if (!c.is_zero()) r.terms_.push_back({i->m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Scalar& c, const Poly& a) {
  if (c.is_zero()) return {};
  Poly r = a;
  for (auto& t : r.terms_) t.c = c * t.c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<Poly::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.m * t.m, s.c * t.c});
  return Poly::from_terms(std::move(terms));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  }
  return true;
}

// ---------------------------------------------------------------- PolyVec

int pot_compare(int ca, const Monomial& a, int cb, const Monomial& b) {
  if (ca != cb) return ca < cb ? 1 : -1;
  return grevlex_compare(a, b);
}

PolyVec PolyVec::unit(int comp, const Scalar& one) {
  PolyVec v;
  v.terms_.push_back({comp, Monomial::one(), one});
  return v;
}

PolyVec PolyVec::from_poly(const Poly& p, int comp) {
  PolyVec v;
  for (const auto& t : p.terms()) v.terms_.push_back({comp, t.m, t.c});
  return v;
}

PolyVec PolyVec::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return pot_compare(a.comp, a.m, b.comp, b.m) > 0;
  });
  PolyVec v;
  for (auto& t : terms) {
    if (!v.terms_.empty() && v.terms_.back().comp == t.comp && v.terms_.back().m == t.m) {
      v.terms_.back().c += t.c;
      if (v.terms_.back().c.is_zero()) v.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      v.terms_.push_back(std::move(t));
    }
  }
  return v;
}

PolyVec PolyVec::from_sorted_terms(std::vector<Term> terms) {
  PolyVec v;
  v.terms_ = std::move(terms);
  return v;
}

Poly PolyVec::component(int comp) const {
  std::vector<Poly::Term> ts;
  for (const auto& t : terms_)
    if (t.comp == comp) ts.push_back({t.m, t.c});
  return Poly::from_terms(std::move(ts));
}

int PolyVec::degree(const std::vector<int>& twists) const {
  if (terms_.empty()) return -1;
  const auto& t = terms_.front();
  int tw = static_cast<std::size_t>(t.comp) < twists.size() ? twists[static_cast<std::size_t>(t.comp)] : 0;
  return t.m.degree() + tw;
}

bool PolyVec::is_homogeneous(const std::vector<int>& twists) const {
  if (terms_.empty()) return true;
  const int d = degree(twists);
  for (const auto& t : terms_) {
    int tw = static_cast<std::size_t>(t.comp) < twists.size() ? twists[static_cast<std::size_t>(t.comp)] : 0;
    if (t.m.degree() + tw != d) return false;
  }
  return true;
}

int PolyVec::max_comp() const {
  int m = -1;
  for (const auto& t : terms_) m = std::max(m, t.comp);
  return m;
}

PolyVec PolyVec::slice(int lo, int hi) const {
  PolyVec v;
  for (const auto& t : terms_)
    if (t.comp >= lo && t.comp < hi) v.terms_.push_back({t.comp - lo, t.m, t.c});
  return v;
}

PolyVec PolyVec::shift_components(int by) const {
  PolyVec v = *this;
  for (auto& t : v.terms_) t.comp += by;
  return v;
}

PolyVec PolyVec::remap(const std::vector<int>& table) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    int c = table[static_cast<std::size_t>(t.comp)];
    if (c >= 0) ts.push_back({c, t.m, t.c});
  }
  return from_terms(std::move(ts));
}

std::string PolyVec::str(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  int max = max_comp();
  os << "(";
  for (int c = 0; c <= max; ++c) {
    if (c) os << ", ";
    os << component(c).str(vars);
  }
  os << ")";
  return os.str();
}

PolyVec operator+(const PolyVec& a, const PolyVec& b) {
  PolyVec r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    int cmp = i == a.terms_.end()   ? -1
              : j == b.terms_.end() ? 1
                                    : pot_compare(i->comp, i->m, j->comp, j->m);
    if (cmp > 0) {
      r.terms_.push_back(*i++);
    } else if (cmp < 0) {
      r.terms_.push_back(*j++);
    } else {
      Scalar c = i->c + j->c;
      if (!c.is_zero()) r.terms_.push_back({i->comp, i->m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

PolyVec operator-(const PolyVec& a) {
  PolyVec r = a;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

PolyVec operator-(const PolyVec& a, const PolyVec& b) { return a + (-b); }

PolyVec operator*(const Scalar& c, const PolyVec& v) {
  if (c.is_zero()) return {};
  PolyVec r = v;
  for (auto& t : r.terms_) t.c = c * t.c;
  return r;
}

PolyVec PolyVec::times(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return {};
  PolyVec r = *this;
  for (auto& t : r.terms_) {
    t.m = t.m * m;
    t.c = c * t.c;
  }
  // Multiplying by a monomial preserves the order within a component.
  return r;
}

PolyVec operator*(const Poly& p, const PolyVec& v) {
  PolyVec r;
  for (const auto& t : p.terms()) r = r + v.times(t.m, t.c);
  return r;
}

bool operator==(const PolyVec& a, const PolyVec& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& s = a.terms_[i];
    const auto& t = b.terms_[i];
    if (s.comp != t.comp || s.m != t.m || s.c != t.c) return false;
  }
  return true;
}

}  // namespace homlevel
