#pragma once

/* Positive weight decompositions diagonal in the given generator basis: the
 * constraint system forced by weight-homogeneity of every differential, an
 * exact feasibility decision with a human-checkable derivation chain, and the
 * fixed block-weight assignment on derivations of degrees-{2,3,4} models. */

#include <map>
#include <string>
#include <vector>

#include "baut/dercomplex.hpp"
#include "baut/model.hpp"
#include "baut/rational.hpp"

namespace baut {

struct WeightSystem {
  std::map<std::string, Rational> weights;  // generator name -> weight
};

/* One homogeneous equation sum coeff * wt(gen) = 0, tagged with the
 * differential term pair it came from. */
struct WeightEquation {
  std::map<GenId, Rational> form;
  std::string source;  // e.g. "d(x): wt(a^2) = wt(a*c)"
};

struct WeightConstraintSystem {
  std::vector<std::string> variables;  // generator names, declaration order
  std::vector<WeightEquation> equations;
};

/* For each generator v with d(v) = m1 + ... + mk (canonical term order):
 * a defining equation wt(v) = wt(m1) and pair equations wt(m1) = wt(mi). */
WeightConstraintSystem weight_constraints(const MinimalModel& m);

struct WeightResult {
  bool feasible = false;
  /* Feasible: a strictly positive solution scaled to coprime integers. */
  WeightSystem weights;
  /* Infeasible: the chain of implied equalities, in deduction order, ending
   * with the arithmetic contradiction. Each step is re-checkable by
   * substituting the derived values back into the named differential. */
  std::vector<std::string> witness;
};

WeightResult find_positive_weights(const MinimalModel& m);

/* True iff all weights are positive and every d(v) is weight-homogeneous of
 * weight ws(v). Throws Error when a generator has no assigned weight. */
bool check_weight_system(const MinimalModel& m, const WeightSystem& ws);

/* Weight of the block a positive-degree derivation basis element belongs to,
 * for a model with generators only in degrees 2, 3, 4:
 *   weight 1: V2^*, (V3, V2), (V4, V3)
 *   weight 2: V3^*, (V4, V2)
 *   weight 3: V4^*                                                      */
int der_block_weight(const MinimalModel& m, const DerBasisElement& e);

struct BlockWeightReport {
  bool ok = false;
  int differential_checks = 0;  // basis elements whose D was verified
  int bracket_checks = 0;       // basis pairs whose bracket was verified
  std::vector<std::string> violations;
};

/* Verifies, over the full positive-degree derivation basis of a degrees-
 * {2,3,4} model, that D preserves block weight and that brackets add block
 * weights. Throws Error on generators outside degrees {2,3,4}. */
BlockWeightReport block_weight_verify(const MinimalModel& m);

}  // namespace baut
