#include "baut/gca.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace baut {

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  if (text[i] == '-') ++i;
  if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    if (i == text.size()) return std::nullopt;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) return std::nullopt;
    if (text.substr(den_begin) == std::string(text.size() - den_begin, '0')) return std::nullopt;
  }
  Rational q(text);
  q.canonicalize();
  return q;
}

int Monomial::degree() const {
  int d = 0;
  for (const Factor& f : factors_) d += f.degree * f.exponent;
  return d;
}

int Monomial::word_length() const {
  int n = 0;
  for (const Factor& f : factors_) n += f.exponent;
  return n;
}

bool Monomial::contains(GenId g) const {
  for (const Factor& f : factors_)
    if (f.gen == g) return true;
  return false;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  if (auto c = word_length() <=> other.word_length(); c != 0) return c;
  /* Lexicographic on the expanded factor sequence, keyed by (degree, id).
   * Runs are compared without expansion. */
  std::size_t i = 0, j = 0;
  int ei = 0, ej = 0;  // symbols consumed within the current run
  while (i < factors_.size() && j < other.factors_.size()) {
    const Factor& a = factors_[i];
    const Factor& b = other.factors_[j];
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    int step = std::min(a.exponent - ei, b.exponent - ej);
    ei += step;
    ej += step;
    if (ei == a.exponent) { ++i; ei = 0; }
    if (ej == b.exponent) { ++j; ej = 0; }
  }
  bool a_end = i == factors_.size();
  bool b_end = j == other.factors_.size();
  if (a_end && b_end) return std::strong_ordering::equal;
  return a_end ? std::strong_ordering::less : std::strong_ordering::greater;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& p) {
  for (const auto& [m, c] : p.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& p) {
  for (const auto& [m, c] : p.terms_) add_term(m, Rational(-c));
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(-c));
  return r;
}

Polynomial& Polynomial::scale(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

int Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return -1;
  return d;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }

GenId Algebra::add_generator(const std::string& name, int degree) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw Error("generator name must start with a letter: '" + name + "'");
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      throw Error("generator name contains invalid character: '" + name + "'");
  if (by_name_.count(name)) throw Error("duplicate generator name: '" + name + "'");
  if (degree < 1) throw Error("generator degree must be >= 1: '" + name + "'");
  GenId id = static_cast<GenId>(gens_.size());
  gens_.push_back({id, name, degree});
  by_name_.emplace(name, id);
  return id;
}

GenId Algebra::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int Algebra::top_degree() const {
  int n = 0;
  for (const Generator& g : gens_) n = std::max(n, g.degree);
  return n;
}

namespace {

/* (degree, id) key that canonical factor order sorts by. */
inline std::pair<int, GenId> factor_key(const Generator& g) { return {g.degree, g.id}; }

}  // namespace

Monomial Algebra::normalize_word(const std::vector<GenId>& word, int& sign) const {
  /* Koszul sign = parity of inversions among the odd-degree factors. Even
   * factors commute with everything and contribute nothing. */
  std::vector<std::pair<int, GenId>> odd_keys;
  for (GenId g : word) {
    const Generator& gen = generator(g);
    if (gen.degree % 2 != 0) odd_keys.push_back(factor_key(gen));
  }
  long inversions = 0;
  for (std::size_t i = 0; i < odd_keys.size(); ++i)
    for (std::size_t j = i + 1; j < odd_keys.size(); ++j) {
      if (odd_keys[i] == odd_keys[j]) { sign = 0; return Monomial(); }
      if (odd_keys[i] > odd_keys[j]) ++inversions;
    }

  std::vector<GenId> sorted = word;
  std::sort(sorted.begin(), sorted.end(), [this](GenId a, GenId b) {
    return factor_key(generator(a)) < factor_key(generator(b));
  });
  std::vector<Factor> factors;
  for (GenId g : sorted) {
    if (!factors.empty() && factors.back().gen == g) {
      ++factors.back().exponent;
    } else {
      factors.push_back({g, generator(g).degree, 1});
    }
  }
  sign = inversions % 2 == 0 ? 1 : -1;
  return Monomial(std::move(factors));
}

Monomial Algebra::monomial(const std::vector<GenId>& word) const {
  int sign = 0;
  Monomial m = normalize_word(word, sign);
  if (sign == 0) throw Error("monomial vanishes: repeated odd-degree generator");
  if (sign < 0) throw Error("word is not in canonical order");
  return m;
}

Polynomial Algebra::term(const Rational& c, const std::vector<GenId>& word) const {
  int sign = 0;
  Monomial m = normalize_word(word, sign);
  Polynomial p;
  if (sign != 0) p.add_term(m, Rational(c * sign));
  return p;
}

Polynomial Algebra::unit_poly(const Rational& c) const {
  Polynomial p;
  p.add_term(Monomial(), c);
  return p;
}

Monomial Algebra::multiply(const Monomial& a, const Monomial& b, int& sign) const {
  /* Merge of two canonical factor runs. When a factor of b is emitted while
   * factors of a remain, it has moved past all of them; odd-odd passes flip
   * the sign. A shared odd generator kills the product. */
  long flips = 0;
  int odd_remaining_a = 0;
  for (const Factor& f : a.factors())
    if (f.degree % 2 != 0) ++odd_remaining_a;

  std::vector<Factor> out;
  std::size_t i = 0, j = 0;
  auto emit = [&out](const Factor& f, int exp) {
    if (!out.empty() && out.back().gen == f.gen)
      out.back().exponent += exp;
    else
      out.push_back({f.gen, f.degree, exp});
  };
  while (i < a.factors().size() || j < b.factors().size()) {
    bool take_a;
    if (i == a.factors().size())
      take_a = false;
    else if (j == b.factors().size())
      take_a = true;
    else {
      const Factor& fa = a.factors()[i];
      const Factor& fb = b.factors()[j];
      if (fa.gen == fb.gen) {
        if (fa.degree % 2 != 0) { sign = 0; return Monomial(); }
        take_a = true;
      } else {
        take_a = std::pair(fa.degree, fa.gen) < std::pair(fb.degree, fb.gen);
      }
    }
    if (take_a) {
      const Factor& fa = a.factors()[i];
      if (fa.degree % 2 != 0) --odd_remaining_a;
      emit(fa, fa.exponent);
      ++i;
    } else {
      const Factor& fb = b.factors()[j];
      if (fb.degree % 2 != 0) flips += odd_remaining_a;
      emit(fb, fb.exponent);
      ++j;
    }
  }
  sign = flips % 2 == 0 ? 1 : -1;
  return Monomial(std::move(out));
}

Polynomial Algebra::multiply(const Polynomial& p, const Polynomial& q) const {
  Polynomial r;
  for (const auto& [mp, cp] : p.terms())
    for (const auto& [mq, cq] : q.terms()) {
      int sign = 0;
      Monomial m = multiply(mp, mq, sign);
      if (sign != 0) r.add_term(m, Rational(cp * cq * sign));
    }
  return r;
}

std::vector<Monomial> Algebra::basis_of_degree(int n) const {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<Factor> current;
  /* Generators visited in canonical (degree, id) order so emitted factor lists
   * are canonical; recursion depth bounded by the generator count. */
  std::vector<GenId> order;
  for (const Generator& g : gens_) order.push_back(g.id);
  std::sort(order.begin(), order.end(), [this](GenId a, GenId b) {
    return factor_key(generator(a)) < factor_key(generator(b));
  });
  auto rec = [&](auto&& self, std::size_t idx, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (idx == order.size()) return;
    const Generator& g = generator(order[idx]);
    self(self, idx + 1, remaining);  // exponent 0
    int max_exp = g.degree % 2 != 0 ? 1 : remaining / g.degree;
    for (int e = 1; e <= max_exp && e * g.degree <= remaining; ++e) {
      current.push_back({g.id, g.degree, e});
      self(self, idx + 1, remaining - e * g.degree);
      current.pop_back();
    }
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Algebra::monomial_str(const Monomial& m) const {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Factor& f : m.factors()) {
    if (!first) os << '*';
    first = false;
    os << generator(f.gen).name;
    if (f.exponent > 1) os << '^' << f.exponent;
  }
  return os.str();
}

std::string Algebra::polynomial_str(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    if (first) {
      /* Grammar has no leading '-', so a negative first coefficient is
       * printed explicitly, e.g. "-1*v2*w". */
      if (c < 0)
        os << to_string(c) << '*' << monomial_str(m);
      else if (a == 1 && !m.is_unit())
        os << monomial_str(m);
      else if (m.is_unit())
        os << to_string(c);
      else
        os << to_string(c) << '*' << monomial_str(m);
      first = false;
      continue;
    }
    os << (c < 0 ? " - " : " + ");
    if (m.is_unit())
      os << to_string(a);
    else if (a == 1)
      os << monomial_str(m);
    else
      os << to_string(a) << '*' << monomial_str(m);
  }
  return os.str();
}

}  // namespace baut
