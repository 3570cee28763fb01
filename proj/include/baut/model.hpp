#pragma once

/* Sullivan minimal models: a free graded-commutative algebra with a degree +1
 * differential that squares to zero and takes every generator to a sum of
 * words of length >= 2. Elementary single-generator extensions of such models
 * are built and checked here as well. */

#include <optional>
#include <string>
#include <vector>

#include "baut/gca.hpp"

namespace baut {

struct ValidationIssue {
  enum class Kind {
    degree,        // a differential monomial does not have degree |v| + 1
    not_minimal,   // a differential monomial has word length < 2
    not_square_zero,  // d(d(v)) != 0
    degree_one_generator,  // warning: nilpotent but not simply connected
  };
  Kind kind;
  std::string generator;
  std::string detail;
  bool is_warning = false;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid = true;  // no error-severity issues

  std::vector<const ValidationIssue*> errors() const;
  std::vector<const ValidationIssue*> warnings() const;
};

class MinimalModel {
 public:
  MinimalModel() = default;
  explicit MinimalModel(Algebra alg) : alg_(std::move(alg)) {
    diff_.resize(alg_.generators().size());
  }

  const Algebra& algebra() const { return alg_; }
  const std::vector<Generator>& generators() const { return alg_.generators(); }
  int top_degree() const { return alg_.top_degree(); }

  /* Throws Error if id is unknown or a differential was already set. */
  void set_differential(GenId id, Polynomial p);
  const Polynomial& differential(GenId id) const { return diff_.at(id); }

  /* d extended to Lambda(V) as a degree +1 derivation. */
  Polynomial d(const Polynomial& p) const;

  ValidationReport validate() const;

  /* degree -> dim V^degree, nonzero entries only. */
  std::vector<std::pair<int, int>> homotopy_ranks() const;

 private:
  Algebra alg_;
  std::vector<Polynomial> diff_;
};

/* Elementary extension data over a fibre model (Lambda V, d): one new closed
 * base generator w of degree >= 2, and for fibre generators a perturbation
 * polynomial every term of which is divisible by w. */
struct KSExtensionSpec {
  std::string base_name;
  int base_degree = 0;
  /* Pairs (fibre generator name, perturbation written over the total algebra's
   * generator names). Stored as raw term lists so the extension data can be
   * carried around before the total algebra exists. */
  struct Term {
    Rational coeff;
    std::vector<std::string> word;  // generator names, base included
  };
  std::vector<std::pair<std::string, std::vector<Term>>> perturbations;
};

/* Total model of an elementary extension: generators [w] + V, D(w) = 0,
 * D(v) = d(v) + perturbation(v). Throws Error unless the result is a valid
 * minimal model (degree check, D^2 = 0, minimality) and every perturbation
 * term is divisible by w. */
MinimalModel build_ks_total(const MinimalModel& fibre, const KSExtensionSpec& ext);

/* Certificate for the essential-map criterion on an elementary extension with
 * base generator w of degree n: PASS when every D-cycle of derivation degree n
 * on the total model vanishes on w; FAIL carries a cycle with theta(w) != 0. */
struct KSCertificate {
  bool pass = false;
  int degree = 0;
  int cycle_space_dim = 0;
  /* Witness cycle as coordinates over the degree-n derivation basis, in basis
   * order; only present on FAIL. */
  std::vector<std::pair<std::string, Rational>> witness;
};

KSCertificate ks_check(const MinimalModel& total, const std::string& base_name);

}  // namespace baut
