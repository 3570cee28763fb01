#pragma once

/* The derivation complex of a minimal model. A derivation of degree n >= 1
 * lowers word degree by n and is determined by its values on generators; the
 * basis element (v, chi) sends generator v to the monomial chi and the other
 * generators to zero. Degree-0 derivations are never chain-complex degrees,
 * but they do occur as *targets* of the differential on degree-1 derivations,
 * so the basis enumeration admits n = 0 and the boundary matrix at n = 1 has
 * rows. The differential is D(theta) = d . theta - (-1)^{|theta|} theta . d;
 * the bracket is [t1, t2] = t1 . t2 - (-1)^{|t1||t2|} t2 . t1. */

#include <map>
#include <string>
#include <vector>

#include "baut/linalg.hpp"
#include "baut/model.hpp"

namespace baut {

struct DerBasisElement {
  GenId source = -1;
  Monomial target;  // degree |source| - n; the unit for v*

  std::strong_ordering operator<=>(const DerBasisElement&) const = default;
};

/* Finitely supported rational combination of basis elements, all of one
 * derivation degree. Degree 0 is allowed (targets of D at degree 1). */
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  bool is_zero() const { return coords_.empty(); }
  const std::map<DerBasisElement, Rational>& coords() const { return coords_; }

  void add(const DerBasisElement& e, const Rational& c);
  Derivation& operator+=(const Derivation& other);
  Derivation& scale(const Rational& c);

  /* Value on a generator, as a polynomial. */
  Polynomial value_on(const MinimalModel& m, GenId g) const;

  bool operator==(const Derivation&) const = default;

 private:
  int degree_ = 0;
  std::map<DerBasisElement, Rational> coords_;
};

/* Basis of derivation degree n: all (v, chi) with chi in basis_of_degree(|v| - n),
 * sources in model order, targets in basis order. Empty for n < 0. */
std::vector<DerBasisElement> der_basis(const MinimalModel& m, int n);

/* theta extended to Lambda(V) by the derivation law
 * theta(ab) = theta(a) b + (-1)^{n|a|} a theta(b). */
Polynomial extend(const MinimalModel& m, const Derivation& theta, const Polynomial& p);

/* D(theta) = d . theta - (-1)^{|theta|} theta . d, one derivation degree lower.
 * Components of derivation degree < 0 cannot occur; degree-0 components are kept. */
Derivation differential_D(const MinimalModel& m, const Derivation& theta);

/* Graded commutator. Components whose target degree would be negative vanish,
 * so brackets beyond the top generator degree come back as the zero derivation. */
Derivation bracket(const MinimalModel& m, const Derivation& a, const Derivation& b);

std::string der_basis_str(const MinimalModel& m, const DerBasisElement& e);  // "z*", "(w,x*y)"
std::string derivation_str(const MinimalModel& m, const Derivation& theta);

/* Bases and boundary matrices of the complex, degree range 0..N (chain degrees
 * are 1..N; degree 0 appears only as the target of D_1). */
class DerComplex {
 public:
  explicit DerComplex(MinimalModel model);

  const MinimalModel& model() const { return model_; }
  int top_degree() const { return N_; }

  const std::vector<DerBasisElement>& basis(int n) const;  // empty outside 0..N

  /* Boundary matrix of D: Der_n -> Der_{n-1} for 1 <= n <= N + 1. Columns are
   * indexed by basis(n), rows by basis(n-1); n = N + 1 yields a matrix with
   * zero columns. */
  RationalMatrix matrix_of_D(int n) const;

  Derivation basis_derivation(int n, std::size_t index) const;
  Derivation from_coords(int n, const std::vector<Rational>& coords) const;

 private:
  MinimalModel model_;
  int N_ = 0;
  std::vector<std::vector<DerBasisElement>> bases_;  // index n in 0..N
  std::vector<DerBasisElement> empty_;
};

}  // namespace baut
