#include "baut/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "baut/rational.hpp"

namespace baut {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Tok {
  enum Kind { kName, kInt, kSym } kind;
  std::string text;
  int col;  // 1-based
};

std::vector<Tok> tokenize(int line_no, const std::string& line) {
  std::vector<Tok> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                                 line[j] == '_'))
        ++j;
      toks.push_back({Tok::kName, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      toks.push_back({Tok::kInt, line.substr(i, j - i), col});
      i = j;
    } else if (c == '+' && i + 1 < line.size() && line[i + 1] == '=') {
      toks.push_back({Tok::kSym, "+=", col});
      i += 2;
    } else if (c == '=' || c == '+' || c == '-' || c == '*' || c == '^' || c == '/') {
      toks.push_back({Tok::kSym, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  return toks;
}

struct Cursor {
  int line;
  const std::vector<Tok>& toks;
  std::size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  int end_col() const {
    return toks.empty() ? 1 : toks.back().col + static_cast<int>(toks.back().text.size());
  }
  int here_col() const { return done() ? end_col() : toks[pos].col; }
  Tok next() {
    if (done()) throw ParseError(line, end_col(), "unexpected end of line");
    return toks[pos++];
  }
  bool is_sym(const char* s) const {
    return !done() && toks[pos].kind == Tok::kSym && toks[pos].text == s;
  }
  bool is_int() const { return !done() && toks[pos].kind == Tok::kInt; }
  Tok expect_name(const char* what) {
    if (done() || toks[pos].kind != Tok::kName)
      throw ParseError(line, here_col(), std::string("expected ") + what);
    return toks[pos++];
  }
  Tok expect_int(const char* what) {
    if (!is_int())
      throw ParseError(line, here_col(), std::string("expected ") + what);
    return toks[pos++];
  }
  void expect_end() const {
    if (!done())
      throw ParseError(line, toks[pos].col, "unexpected trailing input '" + toks[pos].text + "'");
  }
};

int to_int(const Tok& t, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, t.col, "integer out of range '" + t.text + "'");
  }
}

struct RawFactor {
  std::string name;
  int exponent;
  int col;
};

struct RawTerm {
  Rational coeff;
  std::vector<RawFactor> factors;
  int col;
};

/* degree_of resolves a generator name; nullopt means unknown. */
template <typename Lookup>
RawTerm parse_term(Cursor& cur, const Lookup& degree_of, const Rational& sign) {
  RawTerm t;
  t.coeff = sign;
  t.col = cur.here_col();
  if (cur.is_int()) {
    Tok num = cur.next();
    std::string text = num.text;
    if (cur.is_sym("/")) {
      cur.next();
      Tok den = cur.expect_int("a denominator after '/'");
      text += "/" + den.text;
    }
    std::optional<Rational> q = parse_rational(text);
    if (!q) throw ParseError(cur.line, num.col, "malformed rational '" + text + "'");
    t.coeff = Rational(t.coeff * *q);
    if (!cur.is_sym("*"))
      throw ParseError(cur.line, cur.here_col(), "expected '*' after the coefficient");
    cur.next();
  }
  for (;;) {
    Tok nm = cur.expect_name("a generator name");
    std::optional<int> deg = degree_of(nm.text);
    if (!deg) throw ParseError(cur.line, nm.col, "unknown generator '" + nm.text + "'");
    int exp = 1;
    if (cur.is_sym("^")) {
      int caret_col = cur.toks[cur.pos].col;
      cur.next();
      Tok e = cur.expect_int("an integer exponent after '^'");
      exp = to_int(e, cur.line);
      if (exp < 1) throw ParseError(cur.line, e.col, "exponent must be at least 1");
      if (*deg % 2 != 0)
        throw ParseError(cur.line, caret_col,
                         "'^' needs an even-degree generator ('" + nm.text +
                             "' has degree " + std::to_string(*deg) + ")");
    }
    t.factors.push_back({nm.text, exp, nm.col});
    if (cur.is_sym("*")) {
      cur.next();
      continue;
    }
    break;
  }
  return t;
}

/* EXPR := '0' | ['-'] TERM (('+'|'-') TERM)*. A leading '-' must open a
 * rational coefficient; elsewhere '-' is the binary operator. */
template <typename Lookup>
std::vector<RawTerm> parse_expr(Cursor& cur, const Lookup& degree_of) {
  std::vector<RawTerm> terms;
  if (cur.is_int() && cur.toks[cur.pos].text == "0" && cur.pos + 1 == cur.toks.size()) {
    cur.next();
    return terms;
  }
  Rational sign(1);
  if (cur.is_sym("-")) {
    Tok minus = cur.next();
    if (!cur.is_int())
      throw ParseError(cur.line, minus.col,
                       "a leading '-' must be followed by a rational coefficient");
    sign = Rational(-1);
  }
  for (;;) {
    terms.push_back(parse_term(cur, degree_of, sign));
    if (cur.done()) break;
    const Tok& op = cur.toks[cur.pos];
    if (op.kind != Tok::kSym || (op.text != "+" && op.text != "-"))
      throw ParseError(cur.line, op.col, "expected '+' or '-' between terms");
    sign = Rational(op.text == "-" ? -1 : 1);
    cur.next();
  }
  return terms;
}

}  // namespace

ParsedModel parse_model(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string curline;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(curline);
        curline.clear();
      } else {
        curline.push_back(c);
      }
    }
    if (!curline.empty()) lines.push_back(curline);
  }

  struct GenDecl {
    std::string name;
    int degree;
    int line, col;
  };
  struct DLine {
    std::string name;
    int name_col;
    bool plus;  // '+=' rather than '='
    std::vector<Tok> toks;
    std::size_t start;
    int line;
  };
  std::vector<GenDecl> gens;
  std::optional<GenDecl> ext;
  std::vector<DLine> dlines;

  for (int ln = 1; ln <= static_cast<int>(lines.size()); ++ln) {
    const std::string& raw = lines[ln - 1];
    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::vector<Tok> toks = tokenize(ln, raw);
    Cursor cur{ln, toks};
    Tok head = cur.next();
    if (head.kind != Tok::kName)
      throw ParseError(ln, head.col, "expected 'generator', 'extend', 'd', or a comment");
    if (head.text == "generator" || head.text == "extend") {
      bool is_ext = head.text == "extend";
      Tok name = cur.expect_name("a generator name");
      Tok deg = cur.expect_int("a degree");
      cur.expect_end();
      int degree = to_int(deg, ln);
      if (!is_ext && degree < 1)
        throw ParseError(ln, deg.col, "generator degree must be at least 1");
      if (is_ext && degree < 2)
        throw ParseError(ln, deg.col, "extension base degree must be at least 2");
      for (const GenDecl& g : gens)
        if (g.name == name.text)
          throw ParseError(ln, name.col, "duplicate generator '" + name.text + "'");
      if (ext && ext->name == name.text)
        throw ParseError(ln, name.col, "duplicate generator '" + name.text + "'");
      if (is_ext) {
        if (ext) throw ParseError(ln, head.col, "duplicate 'extend' declaration");
        ext = GenDecl{name.text, degree, ln, name.col};
      } else {
        gens.push_back({name.text, degree, ln, name.col});
      }
    } else if (head.text == "d") {
      Tok name = cur.expect_name("a generator name after 'd'");
      bool plus;
      if (cur.is_sym("=")) {
        plus = false;
      } else if (cur.is_sym("+=")) {
        plus = true;
      } else {
        throw ParseError(ln, cur.here_col(), "expected '=' or '+='");
      }
      cur.next();
      if (cur.done()) throw ParseError(ln, cur.end_col(), "expected an expression");
      dlines.push_back({name.text, name.col, plus, std::move(toks), cur.pos, ln});
    } else {
      throw ParseError(ln, head.col, "expected 'generator', 'extend', 'd', or a comment");
    }
  }

  Algebra alg;
  for (const GenDecl& g : gens) alg.add_generator(g.name, g.degree);
  MinimalModel model(alg);

  auto fibre_degree = [&](const std::string& n) -> std::optional<int> {
    int id = alg.find(n);
    if (id < 0) return std::nullopt;
    return alg.generator(id).degree;
  };
  auto total_degree = [&](const std::string& n) -> std::optional<int> {
    if (ext && n == ext->name) return ext->degree;
    return fibre_degree(n);
  };

  std::set<std::string> diff_seen;
  std::vector<std::pair<std::string, std::vector<KSExtensionSpec::Term>>> perts;
  std::map<std::string, std::size_t> pert_index;

  for (const DLine& dl : dlines) {
    Cursor cur{dl.line, dl.toks};
    cur.pos = dl.start;
    if (ext && dl.name == ext->name)
      throw ParseError(dl.line, dl.name_col,
                       "the extension base '" + dl.name + "' stays closed; it cannot carry a differential line");
    int id = alg.find(dl.name);
    if (id < 0)
      throw ParseError(dl.line, dl.name_col, "unknown generator '" + dl.name + "'");
    if (!dl.plus) {
      if (!diff_seen.insert(dl.name).second)
        throw ParseError(dl.line, dl.name_col,
                         "differential for '" + dl.name + "' already given");
      std::vector<RawTerm> terms = parse_expr(cur, total_degree);
      Polynomial p;
      for (const RawTerm& t : terms) {
        std::vector<GenId> word;
        for (const RawFactor& f : t.factors) {
          if (ext && f.name == ext->name)
            throw ParseError(dl.line, f.col,
                             "the extension base may appear only in 'd NAME +=' lines");
          GenId gid = alg.find(f.name);
          for (int k = 0; k < f.exponent; ++k) word.push_back(gid);
        }
        p += alg.term(t.coeff, word);
      }
      if (!p.is_zero()) model.set_differential(id, std::move(p));
    } else {
      if (!ext)
        throw ParseError(dl.line, dl.name_col,
                         "'d " + dl.name + " +=' needs an 'extend' declaration");
      std::vector<RawTerm> terms = parse_expr(cur, total_degree);
      std::vector<KSExtensionSpec::Term> out;
      for (const RawTerm& t : terms) {
        bool has_base = false;
        std::vector<std::string> word;
        for (const RawFactor& f : t.factors) {
          if (f.name == ext->name) has_base = true;
          for (int k = 0; k < f.exponent; ++k) word.push_back(f.name);
        }
        if (!has_base)
          throw ParseError(dl.line, t.col,
                           "every perturbation term must contain the extension base '" +
                               ext->name + "'");
        out.push_back({t.coeff, std::move(word)});
      }
      auto it = pert_index.find(dl.name);
      if (it == pert_index.end()) {
        pert_index.emplace(dl.name, perts.size());
        perts.emplace_back(dl.name, std::move(out));
      } else {
        auto& dst = perts[it->second].second;
        dst.insert(dst.end(), std::make_move_iterator(out.begin()),
                   std::make_move_iterator(out.end()));
      }
    }
  }

  ParsedModel pm{std::move(model), std::nullopt};
  if (ext) pm.extension = KSExtensionSpec{ext->name, ext->degree, std::move(perts)};
  return pm;
}

std::string print_model(const MinimalModel& m) {
  std::ostringstream os;
  const Algebra& alg = m.algebra();
  for (const Generator& g : alg.generators())
    os << "generator " << g.name << ' ' << g.degree << '\n';
  for (const Generator& g : alg.generators()) {
    const Polynomial& p = m.differential(g.id);
    if (!p.is_zero()) os << "d " << g.name << " = " << alg.polynomial_str(p) << '\n';
  }
  return os.str();
}

std::string print_model(const ParsedModel& pm) {
  if (!pm.extension) return print_model(pm.model);
  const KSExtensionSpec& ext = *pm.extension;
  const Algebra& fibre = pm.model.algebra();
  std::ostringstream os;
  for (const Generator& g : fibre.generators())
    os << "generator " << g.name << ' ' << g.degree << '\n';
  os << "extend " << ext.base_name << ' ' << ext.base_degree << '\n';
  for (const Generator& g : fibre.generators()) {
    const Polynomial& p = pm.model.differential(g.id);
    if (!p.is_zero()) os << "d " << g.name << " = " << fibre.polynomial_str(p) << '\n';
  }
  Algebra total;
  total.add_generator(ext.base_name, ext.base_degree);
  for (const Generator& g : fibre.generators()) total.add_generator(g.name, g.degree);
  for (const auto& [name, terms] : ext.perturbations) {
    Polynomial p;
    for (const KSExtensionSpec::Term& t : terms) {
      std::vector<GenId> word;
      for (const std::string& n : t.word) {
        GenId gid = total.find(n);
        if (gid < 0) throw Error("unknown generator '" + n + "' in a perturbation");
        word.push_back(gid);
      }
      p += total.term(t.coeff, word);
    }
    if (!p.is_zero()) os << "d " << name << " += " << total.polynomial_str(p) << '\n';
  }
  return os.str();
}

}  // namespace baut
