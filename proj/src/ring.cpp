#include "homlevel/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace homlevel {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Splits at commas that are not nested in parentheses or brackets.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars, const Field& f)
      : s_(text), vars_(vars), f_(f) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in polynomial \"" + std::string(s_) + "\"", 1,
                     static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Poly expr() {
    Poly acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Poly d = power();
        if (d.is_zero() || d.degree() != 0) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        acc = d.leading().c.inverse() * acc;
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      Poly r = Poly::constant(f_.one());
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return Poly::constant(f_.from_mpq(mpq_class(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return identifier(s_.substr(start, pos_ - start), start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // A whole variable name, or a run of variable names ("xy" = x*y, "x2" is
  // only accepted if x2 is itself a variable).
  Poly identifier(std::string_view id, std::size_t start) {
    Monomial m;
    std::size_t i = 0;
    while (i < id.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        const auto& name = vars_[v];
        if (name.size() > best_len && id.substr(i, name.size()) == name) {
          best = static_cast<int>(v);
          best_len = name.size();
        }
      }
      if (best < 0) {
        pos_ = start;
        fail("unknown variable '" + std::string(id) + "'");
      }
      m = m * Monomial::var(best);
      i += best_len;
    }
    return Poly::monomial(m, f_.one());
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  const Field& f_;
  std::size_t pos_ = 0;
};

std::vector<Poly> parse_ideal_item(const std::string& item, const std::vector<std::string>& vars,
                                   const Field& f) {
  // "(g1, ..., gk)^n" expands to all products of n generators.
  if (!item.empty() && item[0] == '(') {
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < item.size(); ++i) {
      if (item[i] == '(') ++depth;
      if (item[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close != std::string::npos) {
      auto inner = split_top(std::string_view(item).substr(1, close - 1), ',');
      std::string rest = trim(std::string_view(item).substr(close + 1));
      if (inner.size() > 1) {
        int power = 1;
        if (!rest.empty()) {
          if (rest[0] != '^') throw ParseError("malformed ideal power \"" + item + "\"");
          try {
            power = std::stoi(trim(rest.substr(1)));
          } catch (const std::exception&) {
            throw ParseError("malformed ideal power \"" + item + "\"");
          }
        }
        std::vector<Poly> gens;
        for (const auto& g : inner) gens.push_back(parse_poly(g, vars, f));
        std::vector<Poly> out = {Poly::constant(f.one())};
        for (int k = 0; k < power; ++k) {
          std::vector<Poly> next;
          for (const auto& a : out)
            for (const auto& g : gens) next.push_back(a * g);
          out = std::move(next);
        }
        // Drop repeats produced by commuting factors.
        std::vector<Poly> uniq;
        for (auto& p : out)
          if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(std::move(p));
        return uniq;
      }
    }
  }
  return {parse_poly(item, vars, f)};
}

std::vector<std::string> parse_vars(const std::string& text) {
  std::vector<std::string> vars;
  for (auto& v : split_top(text, ',')) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw ParseError("bad variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError("bad variable name '" + v + "'");
    if (std::find(vars.begin(), vars.end(), v) != vars.end())
      throw ParseError("duplicate variable '" + v + "'");
    vars.push_back(v);
  }
  if (static_cast<int>(vars.size()) > kMaxVars)
    throw ParseError("at most " + std::to_string(kMaxVars) + " variables are supported");
  return vars;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

Field parse_field(std::string_view text) {
  std::string t = trim(text);
  if (t == "Q" || t == "QQ") return Field::rationals();
  if (t.size() >= 2 && (t[0] == 'F' || t[0] == 'f')) {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw ParseError("bad field '" + t + "'");
      p = p * 10 + static_cast<std::uint64_t>(t[i] - '0');
      if (p >= (1ull << 31)) throw ParseError("field characteristic must be below 2^31");
    }
    if (!is_prime(p)) throw ParseError("F" + std::to_string(p) + " is not a prime field");
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw ParseError("bad field '" + t + "' (expected Q or F<p>)");
}

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Field& f) {
  return PolyParser(text, vars, f).parse();
}

Ring make_ring(std::string_view text) {
  std::string t = trim(text);
  auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ParseError("expected artin(...) or poly(...)");
  std::string kind = trim(std::string_view(t).substr(0, open));
  std::string body = t.substr(open + 1, t.size() - open - 2);
  auto semi = body.find(';');
  if (semi == std::string::npos) throw ParseError("expected ';' after the field");
  Field f = parse_field(std::string_view(body).substr(0, semi));
  std::string rest = body.substr(semi + 1);
  if (kind == "poly") {
    if (rest.find('|') != std::string::npos)
      throw ParseError("poly(...) takes no relations");
    return RingDesc::graded(f, parse_vars(rest));
  }
  if (kind == "artin") {
    auto bar = rest.find('|');
    if (bar == std::string::npos) throw ParseError("artin(...) needs '|' before the relations");
    auto vars = parse_vars(rest.substr(0, bar));
    std::vector<Poly> ideal;
    for (const auto& item : split_top(std::string_view(rest).substr(bar + 1), ',')) {
      for (auto& p : parse_ideal_item(item, vars, f)) ideal.push_back(std::move(p));
    }
    return RingDesc::artin(f, std::move(vars), std::move(ideal));
  }
  throw ParseError("unknown ring kind '" + kind + "'");
}

std::shared_ptr<const RingDesc> RingDesc::graded(const Field& f, std::vector<std::string> vars) {
  auto r = std::make_shared<RingDesc>();
  r->mode_ = RingMode::GradedPoly;
  r->field_ = f;
  r->vars_ = std::move(vars);
  r->presentation_ = "poly(" + f.name() + "; " + join(r->vars_, ", ") + ")";
  return r;
}

std::shared_ptr<const RingDesc> RingDesc::artin(const Field& f, std::vector<std::string> vars,
                                                std::vector<Poly> ideal) {
  auto r = std::make_shared<RingDesc>();
  r->mode_ = RingMode::Artin;
  r->field_ = f;
  r->vars_ = std::move(vars);
  const int n = r->nvars();

  std::vector<PolyVec> gens;
  for (const auto& p : ideal)
    if (!p.is_zero()) gens.push_back(PolyVec::from_poly(p, 0));
  r->ideal_gb_ = buchberger(gens, 1, {0}, Config{}.grobner_pair_budget);
  for (const auto& g : r->ideal_gb_.elements()) {
    if (g.leading().m.is_one()) throw VerificationError("the relations generate the unit ideal");
  }
  // The quotient is finite-dimensional iff every variable has a pure power
  // among the leading terms.
  for (int v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& g : r->ideal_gb_.elements()) {
      const Monomial& m = g.leading().m;
      if (m.degree() == m.e[static_cast<std::size_t>(v)]) found = true;
    }
    if (!found)
      throw InfiniteDimensional("k[" + join(r->vars_, ",") + "]/I has infinite dimension: no power of " +
                                r->vars_[static_cast<std::size_t>(v)] + " is a leading term");
  }
  for (int d = 0;; ++d) {
    bool any = false;
    for (const auto& m : monomials_of_degree(n, d)) {
      if (!r->ideal_gb_.is_leading_divisible(0, m)) {
        r->basis_.push_back(m);
        any = true;
      }
    }
    if (!any) break;
  }
  std::sort(r->basis_.begin(), r->basis_.end(), degree_lex_less);
  for (int v = 0; v < n; ++v) {
    Mat a = zeros(f, r->dim(), r->dim());
    for (Index j = 0; j < r->dim(); ++j) {
      a.col(j) = r->coords(Poly::monomial(r->basis_[static_cast<std::size_t>(j)] * Monomial::var(v),
                                          f.one()));
    }
    r->var_actions_.push_back(std::move(a));
  }
  for (const auto& g : r->ideal_gb_.elements()) r->ideal_.push_back(g.component(0));

  if (!r->verify_multiplication_table())
    throw VerificationError("multiplication table is not commutative, associative and unital");
  for (int v = 0; v < n; ++v) {
    Mat p = identity(f, r->dim());
    for (Index k = 0; k < r->dim(); ++k) p = p * r->var_actions_[static_cast<std::size_t>(v)];
    if (!is_zero(p))
      throw VerificationError("variable " + r->vars_[static_cast<std::size_t>(v)] +
                              " is not nilpotent; the quotient is not local");
  }

  std::vector<std::string> rels;
  for (const auto& p : r->ideal_) rels.push_back(p.str(r->vars_));
  r->presentation_ =
      "artin(" + f.name() + "; " + join(r->vars_, ", ") + " | " + join(rels, ", ") + ")";
  return r;
}

Poly RingDesc::reduce(const Poly& p) const {
  if (!is_artin()) return p;
  return normal_form(PolyVec::from_poly(p, 0), ideal_gb_).component(0);
}

Vec RingDesc::coords(const Poly& p) const {
  if (!is_artin()) throw WrongMode("coordinates need an artinian ring");
  Vec v = zeros(field_, dim(), 1);
  const Poly r = reduce(p);
  for (const auto& t : r.terms()) {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), t.m, degree_lex_less);
    v(it - basis_.begin()) = t.c;
  }
  return v;
}

Poly RingDesc::from_coords(const Vec& v) const {
  std::vector<Poly::Term> ts;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) ts.push_back({basis_[static_cast<std::size_t>(i)], field_.bind(v(i))});
  return Poly::from_terms(std::move(ts));
}

Mat RingDesc::regular_action(const Poly& p) const {
  if (!is_artin()) throw WrongMode("the regular representation needs an artinian ring");
  Mat out = zeros(field_, dim(), dim());
  for (const auto& t : p.terms()) {
    Mat m = identity(field_, dim());
    for (int v = 0; v < nvars(); ++v)
      for (int k = 0; k < t.m.e[static_cast<std::size_t>(v)]; ++k)
        m = var_actions_[static_cast<std::size_t>(v)] * m;
    out += t.c * m;
  }
  return out;
}

Vec RingDesc::product(Index i, Index j) const {
  return coords(Poly::monomial(basis_[static_cast<std::size_t>(i)] *
                                   basis_[static_cast<std::size_t>(j)],
                               field_.one()));
}

bool RingDesc::verify_multiplication_table() const {
  if (!is_artin()) return true;
  const Index n = dim();
  std::vector<Vec> table(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) table[static_cast<std::size_t>(i * n + j)] = product(i, j);
  auto mul = [&](const Vec& a, const Vec& b) {
    Vec out = zeros(field_, n, 1);
    for (Index i = 0; i < n; ++i) {
      if (a(i).is_zero()) continue;
      for (Index j = 0; j < n; ++j) {
        if (b(j).is_zero()) continue;
        out += (a(i) * b(j)) * table[static_cast<std::size_t>(i * n + j)];
      }
    }
    return out;
  };
  // basis_[0] is 1.
  Vec one = unit_vector(field_, n, 0);
  for (Index i = 0; i < n; ++i) {
    Vec ei = unit_vector(field_, n, i);
    if (!equal(mul(one, ei), ei) || !equal(mul(ei, one), ei)) return false;
    for (Index j = 0; j < n; ++j) {
      Vec ej = unit_vector(field_, n, j);
      if (!equal(mul(ei, ej), mul(ej, ei))) return false;
      for (Index k = 0; k < n; ++k) {
        Vec ek = unit_vector(field_, n, k);
        if (!equal(mul(mul(ei, ej), ek), mul(ei, mul(ej, ek)))) return false;
      }
    }
  }
  return true;
}

Poly RingDesc::parse(std::string_view text) const { return reduce(parse_poly(text, vars_, field_)); }

int depth_ring(const RingDesc& r) { return r.is_artin() ? 0 : r.nvars(); }

GorensteinReport is_gorenstein_artin(const RingDesc& r) {
  if (!r.is_artin()) throw WrongMode("is_gorenstein_artin needs an artinian ring");
  Mat stacked = zeros(r.field(), 0, r.dim());
  for (const auto& a : r.var_actions()) stacked = vstack(stacked, a);
  Index socle = kernel_basis(stacked, r.field()).cols();
  return {socle == 1, socle};
}

}  // namespace homlevel
