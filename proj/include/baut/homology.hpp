#pragma once

/* Homology of (Der(LambdaV), D) and its consequences: the classifying-space
 * homotopy rank table dim pi_{n+1} = dim H_n, the top-degree rank law, and
 * Gottlieb groups via restriction of cycles to generators. */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "baut/dercomplex.hpp"
#include "baut/model.hpp"
#include "baut/rational.hpp"

namespace baut {

struct HomologyReport {
  int top_degree = 0;                 // N, the top generator degree
  std::map<int, int> dims;            // n -> dim H_n for every 1 <= n <= N
  std::map<int, std::vector<Derivation>> representatives;  // cycles spanning H_n

  /* {n+1 -> dim H_n}, nonzero entries only. */
  std::map<int, int> baut_ranks() const;
};

HomologyReport homology(const DerComplex& c);
HomologyReport homology(const MinimalModel& m);  // throws Error if m is invalid

struct TopDegreeLaw {
  int degree = 0;  // N + 1
  int rank = 0;    // dim V^N
  bool agrees_with_homology = false;  // dim H_N == dim V^N
};

TopDegreeLaw top_degree_law(const MinimalModel& m);

/* Image of H_n(Der(LambdaV)) -> Hom(V^n, Q), a cycle acting by the scalar it
 * sends each degree-n generator to. Functionals are rows of a reduced basis,
 * listed as (generator name, value) over the degree-n generators. */
struct GottliebReport {
  std::map<int, int> dims;  // n -> dim G_n for every 1 <= n <= N
  std::map<int, std::vector<std::vector<std::pair<std::string, Rational>>>> functionals;
};

GottliebReport gottlieb(const MinimalModel& m);
GottliebReport gottlieb(const DerComplex& c, const HomologyReport& h);

}  // namespace baut
