#include "homlevel/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace homlevel {

std::string Command::str() const {
  std::string s = name;
  for (const auto& a : args) s += " " + a;
  return s;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  return w;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Splits on `sep` outside brackets and parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

// Statement-level context for error positions.
struct Where {
  int line;
  std::string_view text;
  [[noreturn]] void fail(const std::string& msg, std::string_view at = {}) const {
    int col = 1;
    if (!at.empty()) {
      auto pos = text.find(at);
      if (pos != std::string_view::npos) col = static_cast<int>(pos) + 1;
    }
    throw ParseError(msg, line, col);
  }
};

std::string inner_brackets(const Where& w, const std::string& s) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') w.fail("expected a bracketed list", s);
  return t.substr(1, t.size() - 2);
}

std::vector<std::vector<std::string>> matrix_cells(const Where& w, const std::string& s) {
  std::string body = inner_brackets(w, s);
  std::vector<std::vector<std::string>> rows;
  if (trim(body).empty()) return rows;
  for (const auto& row : split_top(body, ';')) {
    rows.push_back(split_top(row, ','));
    if (rows.back().size() != rows.front().size()) w.fail("matrix rows have different lengths", s);
  }
  return rows;
}

std::vector<std::vector<Poly>> poly_matrix(const Where& w, const Ring& r, const std::string& s) {
  std::vector<std::vector<Poly>> m;
  for (const auto& row : matrix_cells(w, s)) {
    m.emplace_back();
    for (const auto& cell : row) {
      try {
        m.back().push_back(r->parse(cell));
      } catch (const ParseError& e) {
        w.fail(std::string("bad matrix entry '") + cell + "': " + e.what(), cell);
      }
    }
  }
  return m;
}

std::vector<int> int_list(const Where& w, const std::string& s) {
  std::vector<int> out;
  std::string body = inner_brackets(w, s);
  if (trim(body).empty()) return out;
  for (const auto& c : split_top(body, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(c, &used));
      if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::exception&) {
      w.fail("expected an integer, got '" + c + "'", c);
    }
  }
  return out;
}

int parse_int(const Where& w, const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  w.fail("expected an integer, got '" + s + "'", s);
}

// "poly(x, y)" -> "poly(F101; x, y)" when a default field is configured.
std::string with_field(const std::string& lit, const std::string& field) {
  auto open = lit.find('(');
  if (open == std::string::npos) return lit;
  auto stop = lit.find_first_of("|)", open);
  auto semi = lit.find(';', open);
  if (semi != std::string::npos && (stop == std::string::npos || semi < stop)) return lit;
  return lit.substr(0, open + 1) + field + "; " + lit.substr(open + 1);
}

}  // namespace

struct SessionBuilder {
  Session& s;
  std::string default_field;
  std::set<std::string> names;

  void bind(const Where& w, const std::string& name) {
    if (!valid_name(name)) w.fail("invalid name '" + name + "'", name);
    if (!names.insert(name).second) w.fail("name '" + name + "' is already bound", name);
  }

  const Ring& ring_named(const Where& w, const std::string& name) {
    auto it = s.rings_.find(name);
    if (it == s.rings_.end()) w.fail("unknown ring '" + name + "'", name);
    return it->second;
  }

  // ring NAME = literal
  void ring_decl(const Where& w, const std::string& rest) {
    auto eq = rest.find('=');
    if (eq == std::string::npos) w.fail("expected 'ring NAME = literal'");
    std::string name = trim(rest.substr(0, eq));
    std::string lit = with_field(trim(rest.substr(eq + 1)), default_field);
    bind(w, name);
    try {
      s.rings_.emplace(name, make_ring(lit));
    } catch (const ParseError& e) {
      w.fail(e.what(), lit);
    }
    s.decls_.push_back("ring " + name + " = " + collapse_spaces(lit));
  }

  // module NAME over R = body
  void module_decl(const Where& w, const std::string& rest) {
    auto eq = rest.find('=');
    if (eq == std::string::npos) w.fail("expected 'module NAME over RING = ...'");
    auto head = words(rest.substr(0, eq));
    if (head.size() != 3 || head[1] != "over") w.fail("expected 'module NAME over RING = ...'");
    bind(w, head[0]);
    const Ring& r = ring_named(w, head[2]);
    std::string body = trim(rest.substr(eq + 1));
    auto kw = words(body);
    if (kw.empty()) w.fail("missing module description");
    FgModule m;
    const std::string& k = kw[0];
    if (k == "residue" && kw.size() == 1) {
      m = FgModule::residue_field(r);
    } else if (k == "E" && kw.size() == 1) {
      if (!r->is_artin()) w.fail("E needs an artinian ring", k);
      m = matlis_E(r);
    } else if (k == "free") {
      std::string arg = trim(body.substr(4));
      if (!arg.empty() && arg.front() == '[')
        m = FgModule::free_graded(r, int_list(w, arg));
      else
        m = FgModule::free(r, parse_int(w, arg));
    } else if (k == "coker") {
      std::string arg = trim(body.substr(5));
      std::vector<int> degs;
      if (auto d = arg.find("degrees"); d != std::string::npos) {
        degs = int_list(w, trim(arg.substr(d + 7)));
        arg = trim(arg.substr(0, d));
      }
      auto mat = poly_matrix(w, r, arg);
      if (mat.empty()) w.fail("coker needs at least one row", arg);
      m = FgModule::from_presentation(r, mat, degs);
    } else if (k == "action") {
      if (!r->is_artin()) w.fail("action literals need an artinian ring", k);
      auto colon = body.find(':');
      if (colon == std::string::npos) w.fail("expected 'action DIM : x = [..], ...'");
      const int dim = parse_int(w, trim(body.substr(6, colon - 6)));
      std::vector<Mat> actions(static_cast<std::size_t>(r->nvars()));
      std::vector<bool> seen(actions.size(), false);
      for (const auto& part : split_top(body.substr(colon + 1), ',')) {
        auto e = part.find('=');
        if (e == std::string::npos) w.fail("expected 'var = [matrix]'", part);
        std::string var = trim(part.substr(0, e));
        const auto& vars = r->vars();
        auto vi = std::find(vars.begin(), vars.end(), var);
        if (vi == vars.end()) w.fail("unknown variable '" + var + "'", var);
        const auto idx = static_cast<std::size_t>(vi - vars.begin());
        auto cells = matrix_cells(w, trim(part.substr(e + 1)));
        if (static_cast<int>(cells.size()) != dim || (dim > 0 && static_cast<int>(cells[0].size()) != dim))
          w.fail("action of '" + var + "' must be " + std::to_string(dim) + "x" + std::to_string(dim), part);
        Mat a = zeros(r->field(), dim, dim);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            const std::string& c = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Poly p;
            try {
              p = r->parse(c);
            } catch (const ParseError& err) {
              w.fail(err.what(), c);
            }
            if (p.degree() > 0) w.fail("action entries must be scalars, got '" + c + "'", c);
            a(i, j) = p.is_zero() ? r->field().zero() : p.constant_term();
          }
        actions[idx] = a;
        seen[idx] = true;
      }
      for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) actions[v] = zeros(r->field(), dim, dim);
      m = FgModule::from_action(r, dim, std::move(actions));
    } else {
      w.fail("unknown module description '" + k + "'", k);
    }
    s.modules_.emplace(head[0], m);
    s.decls_.push_back("module " + head[0] + " over " + head[2] + " = " + collapse_spaces(body));
  }

  // complex NAME over R : range hi..lo ; d<i> = [..] ; m<i> = NAME ; rank<i> = n ; deg<i> = [..]
  void complex_decl(const Where& w, const std::string& rest) {
    auto colon = rest.find(':');
    if (colon == std::string::npos) w.fail("expected 'complex NAME over RING : range HI..LO ; ...'");
    auto head = words(rest.substr(0, colon));
    if (head.size() != 3 || head[1] != "over") w.fail("expected 'complex NAME over RING : ...'");
    bind(w, head[0]);
    const Ring& r = ring_named(w, head[2]);
    std::string body = rest.substr(colon + 1);

    std::optional<std::pair<int, int>> range;
    std::map<int, std::vector<std::vector<Poly>>> ds;
    std::map<int, FgModule> named;
    std::map<int, int> ranks;
    std::map<int, std::vector<int>> degs;
    auto indexed = [&](const std::string& key, const std::string& prefix) -> std::optional<int> {
      if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) return std::nullopt;
      std::string num = key.substr(prefix.size());
      if (!std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; }))
        return std::nullopt;
      return parse_int(w, num);
    };
    for (const auto& part : split_top(body, ';')) {
      if (part.empty()) continue;
      if (part.rfind("range", 0) == 0) {
        std::string span = trim(part.substr(5));
        auto dots = span.find("..");
        if (dots == std::string::npos) w.fail("expected 'range HI..LO'", part);
        int a = parse_int(w, trim(span.substr(0, dots))), b = parse_int(w, trim(span.substr(dots + 2)));
        range = std::make_pair(std::min(a, b), std::max(a, b));
        continue;
      }
      auto e = part.find('=');
      if (e == std::string::npos) w.fail("expected 'key = value'", part);
      std::string key = trim(part.substr(0, e)), val = trim(part.substr(e + 1));
      if (auto i = indexed(key, "rank")) {
        ranks[*i] = parse_int(w, val);
      } else if (auto i2 = indexed(key, "deg")) {
        degs[*i2] = int_list(w, val);
      } else if (auto i3 = indexed(key, "d")) {
        if (val == "0") continue;
        ds[*i3] = poly_matrix(w, r, val);
      } else if (auto i4 = indexed(key, "m")) {
        auto it = s.modules_.find(val);
        if (it == s.modules_.end()) w.fail("unknown module '" + val + "'", val);
        if (it->second.ring() != r) w.fail("module '" + val + "' is over a different ring", val);
        named[*i4] = it->second;
      } else {
        w.fail("unknown complex component '" + key + "'", key);
      }
    }
    if (!range) w.fail("missing 'range HI..LO'");
    const int lo = range->first, hi = range->second;
    auto in_range = [&](int i) { return i >= lo && i <= hi; };
    for (const auto& [i, _] : ds)
      if (!in_range(i) || !in_range(i - 1)) w.fail("d" + std::to_string(i) + " lies outside the range");
    for (const auto& [i, _] : named)
      if (!in_range(i)) w.fail("m" + std::to_string(i) + " lies outside the range");

    std::vector<FgModule> mods;
    std::vector<ModuleMap> diffs;
    if (!named.empty()) {
      if (!ds.empty() || !ranks.empty()) w.fail("complexes of named modules take zero differentials only");
      for (int i = lo; i <= hi; ++i) {
        auto it = named.find(i);
        mods.push_back(it != named.end() ? it->second : FgModule::zero(r));
      }
      for (int i = lo + 1; i <= hi; ++i) {
        const auto ii = static_cast<std::size_t>(i - lo);
        diffs.push_back(ModuleMap::zero(mods[ii], mods[ii - 1]));
      }
    } else {
      auto set_rank = [&](int i, int v) {
        auto [it, fresh] = ranks.emplace(i, v);
        if (!fresh && it->second != v)
          w.fail("rank of degree " + std::to_string(i) + " is " + std::to_string(it->second) + " here but " +
                 std::to_string(v) + " elsewhere");
      };
      for (const auto& [i, m] : ds) {
        set_rank(i - 1, static_cast<int>(m.size()));
        set_rank(i, m.empty() ? 0 : static_cast<int>(m[0].size()));
      }
      std::map<int, std::vector<int>> gd;
      for (int i = lo; i <= hi; ++i) {
        const int rk = ranks.count(i) ? ranks[i] : 0;
        if (auto it = degs.find(i); it != degs.end()) {
          if (static_cast<int>(it->second.size()) != rk) w.fail("deg" + std::to_string(i) + " has the wrong length");
          gd[i] = it->second;
          continue;
        }
        std::vector<int> d(static_cast<std::size_t>(rk), 0);
        if (!r->is_artin() && ds.count(i) && i > lo) {
          const auto& m = ds[i];
          const auto& below = gd[i - 1];
          for (std::size_t j = 0; j < d.size(); ++j)
            for (std::size_t row = 0; row < m.size(); ++row)
              if (!m[row][j].is_zero()) {
                d[j] = below[row] + m[row][j].degree();
                break;
              }
        }
        gd[i] = d;
      }
      for (int i = lo; i <= hi; ++i) mods.push_back(FgModule::free_graded(r, gd[i]));
      for (int i = lo + 1; i <= hi; ++i) {
        const auto ii = static_cast<std::size_t>(i - lo);
        auto it = ds.find(i);
        if (it == ds.end()) {
          diffs.push_back(ModuleMap::zero(mods[ii], mods[ii - 1]));
        } else {
          try {
            diffs.push_back(multiplication(mods[ii], mods[ii - 1], it->second));
          } catch (const VerificationError& e) {
            throw VerificationError("line " + std::to_string(w.line) + ": d" + std::to_string(i) + ": " + e.what());
          }
        }
      }
    }
    try {
      s.complexes_.emplace(head[0], Complex(r, lo, mods, diffs));
    } catch (const VerificationError& e) {
      throw VerificationError("line " + std::to_string(w.line) + ": " + e.what());
    }
    std::string canon;
    for (const auto& part : split_top(body, ';')) {
      if (part.empty()) continue;
      auto e = part.find('=');
      canon += canon.empty() ? "" : " ; ";
      canon += e == std::string::npos ? collapse_spaces(part)
                                      : trim(part.substr(0, e)) + " = " + collapse_spaces(part.substr(e + 1));
    }
    s.decls_.push_back("complex " + head[0] + " over " + head[2] + " : " + canon);
  }

  void command(const Where& w, const std::vector<std::string>& ws) {
    static const std::map<std::string, std::pair<int, int>> arity = {
        {"homology", {1, 1}}, {"resolve", {1, 1}}, {"pd", {1, 1}},     {"id", {1, 1}},  {"gpd", {1, 1}},
        {"gid", {1, 1}},      {"fd", {1, 1}},      {"gfd", {1, 1}},    {"depth", {1, 1}}, {"adams", {1, 3}},
        {"splice", {1, 3}},   {"level", {2, 2}},   {"bass", {1, 1}},   {"corpus", {0, 0}}};
    auto it = arity.find(ws[0]);
    if (it == arity.end()) w.fail("unknown statement '" + ws[0] + "'", ws[0]);
    const int n = static_cast<int>(ws.size()) - 1;
    if (n < it->second.first || n > it->second.second)
      w.fail("'" + ws[0] + "' takes " + std::to_string(it->second.first) +
             (it->second.first == it->second.second ? "" : " to " + std::to_string(it->second.second)) +
             " argument(s)");
    Command c;
    c.line = w.line;
    c.name = ws[0];
    c.args.assign(ws.begin() + 1, ws.end());
    if (c.name == "level") parse_level_class(c.args[0]);
    const std::string& obj = c.name == "level" ? c.args[1] : (c.args.empty() ? std::string() : c.args[0]);
    if (!obj.empty() && !s.modules_.count(obj) && !s.complexes_.count(obj)) w.fail("unknown object '" + obj + "'", obj);
    s.commands_.push_back(c);
  }
};

Session Session::parse(std::string_view source, const std::string& default_field) {
  Session s;
  SessionBuilder b{s, default_field, {}};
  std::istringstream in{std::string(source)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    Where w{lineno, raw};
    auto ws = words(line);
    const std::string rest = trim(std::string_view(line).substr(line.find(ws[0]) + ws[0].size()));
    if (ws[0] == "ring") b.ring_decl(w, rest);
    else if (ws[0] == "module") b.module_decl(w, rest);
    else if (ws[0] == "complex") b.complex_decl(w, rest);
    else b.command(w, ws);
  }
  return s;
}

const Ring& Session::ring(const std::string& name) const {
  auto it = rings_.find(name);
  if (it == rings_.end()) throw Error("unknown ring '" + name + "'");
  return it->second;
}

const FgModule& Session::module(const std::string& name) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) throw Error("'" + name + "' is not a module");
  return it->second;
}

Complex Session::complex(const std::string& name) const {
  if (auto it = complexes_.find(name); it != complexes_.end()) return it->second;
  if (auto it = modules_.find(name); it != modules_.end()) return Complex::concentrated(it->second, 0);
  throw Error("unknown object '" + name + "'");
}

std::string Session::print() const {
  std::string out;
  for (const auto& d : decls_) out += d + "\n";
  for (const auto& c : commands_) out += c.str() + "\n";
  return out;
}

// ------------------------------------------------------------- commands

namespace {

nlohmann::json module_summary(const FgModule& m) {
  nlohmann::json e;
  e["generators"] = minimal_generators(m);
  if (m.is_artin()) e["dim"] = m.dim();
  return e;
}

nlohmann::json homology_json(const Complex& x) {
  nlohmann::json out = nlohmann::json::object();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    FgModule h = homology(x, n);
    if (!is_zero(h)) out[std::to_string(n)] = module_summary(h);
  }
  return out;
}

AdamsSide parse_side(const std::string& s) {
  if (s == "proj" || s == "projective") return AdamsSide::Projective;
  if (s == "inj" || s == "injective") return AdamsSide::Injective;
  throw ParseError("unknown Adams side '" + s + "' (expected proj or inj)");
}

DimKind parse_kind(const std::string& s) {
  static const std::map<std::string, DimKind> k = {{"pd", DimKind::Pd},   {"id", DimKind::Id},   {"fd", DimKind::Fd},
                                                   {"gpd", DimKind::Gpd}, {"gid", DimKind::Gid}, {"gfd", DimKind::Gfd}};
  return k.at(s);
}

nlohmann::json corpus_json(const std::vector<CorpusRow>& rows) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  int passed = 0;
  for (const auto& r : rows) {
    nlohmann::json e = {{"name", r.name}, {"expected", r.expected}, {"got", r.got}, {"pass", r.pass}};
    if (!r.error.empty()) e["error"] = r.error;
    j["rows"].push_back(e);
    passed += r.pass ? 1 : 0;
  }
  j["passed"] = passed;
  j["total"] = rows.size();
  return j;
}

}  // namespace

CommandResult run_command(const Session& s, const Command& c, const RunOptions& opt) {
  CommandResult r;
  nlohmann::json& j = r.json;
  j["command"] = c.str();
  j["line"] = c.line;
  const std::string& n = c.name;
  if (n == "homology") {
    Complex x = s.complex(c.args[0]);
    j["homology"] = homology_json(x);
    j["acyclic"] = x.is_zero() || is_acyclic(x);
  } else if (n == "resolve") {
    const FgModule& m = s.module(c.args[0]);
    Resolution res = minimal_free_resolution(m, config().cutoff);
    ResolutionCheck chk = verify_resolution(res);
    j["betti"] = res.betti();
    j["complete"] = res.complete;
    if (res.complete) j["length"] = res.length();
    if (!m.is_artin()) {
      nlohmann::json g = nlohmann::json::array();
      for (const auto& row : res.graded_betti()) {
        nlohmann::json e = nlohmann::json::object();
        for (const auto& [deg, count] : row) e[std::to_string(deg)] = count;
        g.push_back(e);
      }
      j["graded_betti"] = g;
    }
    j["exact"] = chk.exact;
    j["minimal"] = chk.minimal;
    r.failed = !chk.exact || !chk.minimal;
    r.inconclusive = !res.complete;
  } else if (n == "pd" || n == "id" || n == "gpd" || n == "gid" || n == "fd" || n == "gfd") {
    const FgModule& m = s.module(c.args[0]);
    DimensionReport d = dimension(m, parse_kind(n));
    j.update(d.to_json());
    if ((n == "pd" || n == "fd") && d.state == DimState::Exact)
      j["betti"] = minimal_free_resolution(m, std::max(config().cutoff, d.value + 1)).betti();
    r.inconclusive = !d.decided();
  } else if (n == "depth") {
    auto d = depth_module(s.module(c.args[0]));
    j["depth"] = d ? nlohmann::json(*d) : nlohmann::json(nullptr);
  } else if (n == "adams" || n == "splice") {
    const AdamsSide side = c.args.size() > 1 ? parse_side(c.args[1]) : AdamsSide::Projective;
    const int len = c.args.size() > 2 ? std::stoi(c.args[2]) : 2;
    AdamsTower t = adams_tower(s.complex(c.args[0]), side, len);
    if (n == "adams") {
      j.update(t.to_json());
      r.failed = !t.verified();
    } else {
      SpliceReport sp = verify_splice(t);
      j.update(sp.to_json());
      j["tower_verified"] = t.verified();
      r.failed = !sp.exact || !t.verified();
    }
  } else if (n == "level") {
    LevelCertificate cert = level_report(s.complex(c.args[1]), parse_level_class(c.args[0]));
    j.update(cert.to_json());
    r.inconclusive = !cert.verdict;
    r.failed = cert.upper.known && !cert.upper.verified();
  } else if (n == "bass") {
    BassReport b = bass_check(s.complex(c.args[0]));
    j.update(b.to_json());
  } else if (n == "corpus") {
    auto rows = run_corpus(opt);
    j.update(corpus_json(rows));
    r.failed = std::any_of(rows.begin(), rows.end(), [](const CorpusRow& row) { return !row.pass; });
  } else {
    throw Error("unknown command '" + n + "'");
  }
  return r;
}

std::string render(const nlohmann::json& j) {
  std::ostringstream o;
  const std::string cmd = j.value("command", "");
  o << cmd << ": ";
  auto word = [](const std::string& c) { return c.substr(0, c.find(' ')); };
  const std::string n = word(cmd);
  if (n == "homology") {
    if (j["acyclic"].get<bool>()) {
      o << "acyclic";
    } else {
      bool first = true;
      for (const auto& [deg, e] : j["homology"].items()) {
        o << (first ? "" : ", ") << "H_" << deg << " needs " << e["generators"] << " generator(s)";
        if (e.contains("dim")) o << " (dim " << e["dim"] << ")";
        first = false;
      }
    }
  } else if (n == "resolve") {
    o << "Betti " << j["betti"].dump() << (j["complete"].get<bool>() ? "" : " (truncated)")
      << (j["exact"].get<bool>() && j["minimal"].get<bool>() ? ", verified" : ", NOT verified");
  } else if (n == "pd" || n == "id" || n == "gpd" || n == "gid" || n == "fd" || n == "gfd") {
    o << j["kind"].get<std::string>() << " " << j["state"].get<std::string>();
    if (j.contains("value")) o << " " << j["value"];
    if (j.contains("betti")) o << ", Betti " << j["betti"].dump();
    if (!j["witness"].get<std::string>().empty()) o << " [" << j["witness"].get<std::string>() << "]";
  } else if (n == "depth") {
    o << "depth " << j["depth"].dump();
  } else if (n == "adams") {
    o << j["steps"].size() << " " << j["side"].get<std::string>() << " step(s), "
      << (j["verified"].get<bool>() ? "verified" : "NOT verified");
  } else if (n == "splice") {
    o << j["terms"] << " terms, " << (j["exact"].get<bool>() ? "exact" : "NOT exact at " + j["first_failure"].dump());
  } else if (n == "level") {
    o << "level_" << j["class"].get<std::string>() << " ";
    if (j.contains("verdict")) o << "= " << j["verdict"];
    else o << "inconclusive";
    o << " (lower " << j["lower"]["value"] << " via " << j["lower"]["route"].get<std::string>() << "; upper ";
    if (j["upper"]["known"].get<bool>()) o << j["upper"]["value"] << " via " << j["upper"]["route"].get<std::string>();
    else o << "unknown";
    o << ")";
  } else if (n == "bass") {
    o << (j["hypothesis_met"].get<bool>() ? "hypothesis met" : "hypothesis not met: " + j["failing_hypothesis"].get<std::string>());
    o << "; level_Inj ";
    if (j["level_inj"].contains("verdict")) o << "= " << j["level_inj"]["verdict"];
    else o << "inconclusive";
    o << ", depth + 1 = " << j["depth"].get<int>() + 1 << (j["formula_holds"].get<bool>() ? ", formula holds" : "");
  } else if (n == "corpus") {
    o << j["passed"] << "/" << j["total"] << " passed";
    for (const auto& row : j["rows"])
      o << "\n  " << (row["pass"].get<bool>() ? "PASS " : "FAIL ") << row["name"].get<std::string>() << ": expected "
        << row["expected"].dump() << ", got " << row["got"].dump()
        << (row.contains("error") ? " (" + row["error"].get<std::string>() + ")" : "");
  }
  return o.str();
}

RunOutcome run_session(const Session& s, const RunOptions& opt) {
  RunOutcome out;
  bool inconclusive = false, failed = false;
  for (const auto& c : s.commands()) {
    try {
      CommandResult r = run_command(s, c, opt);
      out.json.push_back(r.json);
      out.report += render(r.json) + "\n";
      inconclusive = inconclusive || r.inconclusive;
      failed = failed || r.failed;
    } catch (const Error& e) {
      out.report += "error: line " + std::to_string(c.line) + ": " + c.str() + ": " + e.what() + "\n";
      out.json.push_back({{"command", c.str()}, {"line", c.line}, {"error", e.what()}});
      out.exit_code = 1;
      return out;
    }
  }
  out.exit_code = failed ? 1 : inconclusive ? 2 : 0;
  return out;
}

// ------------------------------------------------------------- corpus

const std::vector<CorpusCase>& corpus_cases() {
  static const std::string dual = "ring A = artin(F2; x | x^2)\n";
  static const std::string koszul = dual + "complex K over A : range 1..0 ; d1 = [x]\n";
  static const std::string dual_k = dual + "module k over A = residue\n";
  static const std::string reg3 = "ring R = poly(F101; x, y, z)\nmodule k over R = residue\n";
  static const std::vector<CorpusCase> cases = {
      {"koszul-inj-level", koszul + "level inj K\n", "/verdict", 2},
      {"koszul-gi-level", koszul + "level gi K\n", "/verdict", 2},
      {"residue-gi-level", dual_k + "level gi k\n", "/verdict", 1},
      {"regular-pd", reg3 + "pd k\n", "/value", 3},
      {"regular-betti", reg3 + "resolve k\n", "/betti", nlohmann::json::array({1, 3, 3, 1})},
      {"regular-proj-level", reg3 + "level proj k\n", "/verdict", 4},
      {"bass-E", dual + "module E over A = E\nbass E\n", "/formula_holds", true},
      {"bass-koszul-hypothesis", koszul + "bass K\n", "/hypothesis_met", false},
      {"residue-gid", dual_k + "gid k\n", "/value", 0},
      {"plane-gpd", "ring R = poly(F101; x, y)\nmodule k over R = residue\ngpd k\n", "/value", 2},
      {"koszul-splice", koszul + "splice K proj 2\n", "/exact", true},
  };
  return cases;
}

std::vector<CorpusRow> run_corpus(const RunOptions& opt) {
  std::vector<CorpusRow> rows;
  for (const auto& c : corpus_cases()) {
    if (!opt.corpus_filter.empty() && c.name.find(opt.corpus_filter) == std::string::npos) continue;
    CorpusRow row;
    row.name = c.name;
    row.expected = c.expected;
    if (opt.perturb_case && *opt.perturb_case == c.name) {
      if (row.expected.is_boolean()) row.expected = !row.expected.get<bool>();
      else if (row.expected.is_number_integer()) row.expected = row.expected.get<int>() + 1;
      else row.expected = nullptr;
    }
    try {
      Session s = Session::parse(c.script);
      CommandResult r = run_command(s, s.commands().back());
      const nlohmann::json::json_pointer ptr(c.pointer);
      row.got = r.json.contains(ptr) ? r.json.at(ptr) : nlohmann::json(nullptr);
      row.pass = row.got == row.expected;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace homlevel
