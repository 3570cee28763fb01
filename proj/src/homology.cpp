#include "baut/homology.hpp"

#include <cstddef>

#include "baut/linalg.hpp"

namespace baut {

std::map<int, int> HomologyReport::baut_ranks() const {
  std::map<int, int> out;
  for (const auto& [n, dim] : dims)
    if (dim > 0) out.emplace(n + 1, dim);
  return out;
}

HomologyReport homology(const DerComplex& c) {
  HomologyReport report;
  report.top_degree = c.top_degree();
  for (int n = 1; n <= c.top_degree(); ++n) {
    auto cycles = kernel_basis(c.matrix_of_D(n));
    RationalMatrix next = c.matrix_of_D(n + 1);
    std::vector<std::vector<Rational>> boundaries;
    for (std::size_t j = 0; j < next.cols(); ++j) {
      std::vector<Rational> col(next.rows(), Rational(0));
      for (std::size_t i = 0; i < next.rows(); ++i) col[i] = next.get(i, j);
      boundaries.push_back(std::move(col));
    }
    std::size_t boundary_rank = rank(next);
    report.dims[n] = static_cast<int>(cycles.size() - boundary_rank);

    auto& reps = report.representatives[n];
    for (std::size_t idx : independent_mod(boundaries, cycles))
      reps.push_back(c.from_coords(n, cycles[idx]));
  }
  return report;
}

HomologyReport homology(const MinimalModel& m) {
  ValidationReport v = m.validate();
  if (!v.valid) throw Error("homology requires a valid model");
  return homology(DerComplex(m));
}

TopDegreeLaw top_degree_law(const MinimalModel& m) {
  TopDegreeLaw law;
  int N = m.top_degree();
  law.degree = N + 1;
  for (const Generator& g : m.generators())
    if (g.degree == N) ++law.rank;
  if (N > 0) {
    HomologyReport h = homology(m);
    law.agrees_with_homology = h.dims.at(N) == law.rank;
  } else {
    law.agrees_with_homology = true;
  }
  return law;
}

GottliebReport gottlieb(const DerComplex& c, const HomologyReport& h) {
  const MinimalModel& m = c.model();
  GottliebReport report;
  for (int n = 1; n <= h.top_degree; ++n) {
    std::vector<GenId> degree_n_gens;
    for (const Generator& g : m.generators())
      if (g.degree == n) degree_n_gens.push_back(g.id);

    auto it = h.representatives.find(n);
    std::vector<std::vector<Rational>> rows;
    if (it != h.representatives.end() && !degree_n_gens.empty()) {
      for (const Derivation& theta : it->second) {
        std::vector<Rational> row;
        for (GenId g : degree_n_gens)
          row.push_back(theta.value_on(m, g).coefficient(Monomial()));
        rows.push_back(std::move(row));
      }
    }
    auto pivots = rref(rows);
    report.dims[n] = static_cast<int>(pivots.size());
    auto& fs = report.functionals[n];
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::vector<std::pair<std::string, Rational>> f;
      for (std::size_t j = 0; j < degree_n_gens.size(); ++j)
        if (rows[r][j] != 0)
          f.emplace_back(m.algebra().generator(degree_n_gens[j]).name, rows[r][j]);
      fs.push_back(std::move(f));
    }
  }
  return report;
}

GottliebReport gottlieb(const MinimalModel& m) {
  ValidationReport v = m.validate();
  if (!v.valid) throw Error("gottlieb requires a valid model");
  DerComplex c(m);
  return gottlieb(c, homology(c));
}

}  // namespace baut
