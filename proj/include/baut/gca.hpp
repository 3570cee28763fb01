#pragma once

/* Free graded-commutative algebra over the rationals on a finite list of
 * generators. Monomials are kept in a canonical form: factors sorted by
 * (degree, id), powers of even-degree generators stored as exponents,
 * odd-degree generators never repeated (their squares vanish). Reordering
 * a word into canonical form contributes the Koszul sign (-1) for every
 * transposition of two odd-degree factors. */

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "baut/rational.hpp"

namespace baut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* Index into the owning algebra's generator list; stable once assigned. */
using GenId = int;

struct Generator {
  GenId id = -1;
  std::string name;
  int degree = 0;  // >= 1
};

/* One canonical factor: a generator raised to a power. exponent = 1 unless
 * the generator has even degree. The degree is denormalized into the factor
 * so monomials order themselves without an algebra in hand. */
struct Factor {
  GenId gen = -1;
  int degree = 0;
  int exponent = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

class Monomial {
 public:
  Monomial() = default;  // the unit monomial, degree 0
  explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  int degree() const;
  int word_length() const;  // number of generator symbols counted with exponents
  bool contains(GenId g) const;

  /* Canonical order: total degree, then word length, then lexicographic on the
   * expanded (degree, id) factor sequence. Restricted to one degree this is the
   * graded-length-then-lex basis order. */
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return (*this <=> other) == 0; }

 private:
  std::vector<Factor> factors_;
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a < b; }
};

/* Sum of canonical monomials with nonzero rational coefficients. The zero
 * polynomial has no terms. May be degree-inhomogeneous (validation reports
 * such defects; the arithmetic does not hide them). */
class Polynomial {
 public:
  Polynomial() = default;

  const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c);
  Polynomial& operator+=(const Polynomial& p);
  Polynomial& operator-=(const Polynomial& p);
  Polynomial operator-() const;
  Polynomial& scale(const Rational& c);

  /* Degree common to all terms, or -1 for zero/inhomogeneous polynomials. */
  int homogeneous_degree() const;

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

 private:
  std::map<Monomial, Rational, MonomialLess> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);

/* The free graded-commutative algebra Lambda(V) on an ordered generator list.
 * Immutable after construction; all operations are const and safe to call
 * concurrently. */
class Algebra {
 public:
  Algebra() = default;

  /* Throws Error on duplicate names, bad identifiers or degree < 1. */
  GenId add_generator(const std::string& name, int degree);

  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(GenId id) const { return gens_.at(id); }
  GenId find(const std::string& name) const;  // -1 if absent
  int top_degree() const;                     // 0 for the empty algebra

  bool is_odd(GenId id) const { return generator(id).degree % 2 != 0; }

  /* Canonical monomial from a sequence of generator ids (a word). Returns the
   * Koszul sign in `sign` (+1/-1), or 0 when an odd generator repeats (the
   * monomial is then the unit and must be discarded). */
  Monomial normalize_word(const std::vector<GenId>& word, int& sign) const;

  Monomial monomial(const std::vector<GenId>& word) const;  // throws if sign is 0
  Polynomial term(const Rational& c, const std::vector<GenId>& word) const;
  Polynomial unit_poly(const Rational& c) const;

  /* Product of canonical monomials; sign receives the Koszul sign (0 when an
   * odd generator occurs in both). */
  Monomial multiply(const Monomial& a, const Monomial& b, int& sign) const;
  Polynomial multiply(const Polynomial& p, const Polynomial& q) const;

  /* All canonical monomials of total degree n in the graded-length-then-lex
   * order. basis_of_degree(0) = { unit }. Empty for n < 0. */
  std::vector<Monomial> basis_of_degree(int n) const;

  std::string monomial_str(const Monomial& m) const;  // "x*y", "v^2*x", "1"
  std::string polynomial_str(const Polynomial& p) const;  // canonical expr form, "0" if zero

 private:
  std::vector<Generator> gens_;
  std::map<std::string, GenId> by_name_;
};

}  // namespace baut
