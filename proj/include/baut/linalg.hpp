#pragma once

/* Exact linear algebra over the rationals: sparse storage, dense
 * fraction-pivot Gaussian elimination. Dimensions here are tiny (derivation
 * bases of pi-finite models), so density per degree is the simple and
 * predictable choice. */

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "baut/rational.hpp"

namespace baut {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v);
  Rational get(std::size_t r, std::size_t c) const;  // 0 when absent
  const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const {
    return entries_;
  }

  std::vector<std::vector<Rational>> dense() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

std::size_t rank(const RationalMatrix& m);

/* Basis of the null space in reduced echelon form: one vector per free column,
 * unit in the free coordinate, deterministic order (free columns ascending). */
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

/* Reduced row echelon form of a dense matrix, in place; returns pivot column
 * indices in row order. */
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a);

/* Given spanning vectors of a subspace B and candidate vectors vs (all of one
 * ambient dimension), returns indices into vs of a deterministic subset whose
 * classes form a basis of span(B + vs) / span(B). */
std::vector<std::size_t> independent_mod(const std::vector<std::vector<Rational>>& b,
                                         const std::vector<std::vector<Rational>>& vs);

}  // namespace baut
