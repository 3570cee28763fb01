#include "baut/linalg.hpp"

#include <algorithm>

namespace baut {

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

Rational RationalMatrix::get(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<std::vector<Rational>> RationalMatrix::dense() const {
  std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_, Rational(0)));
  for (const auto& [rc, v] : entries_) a[rc.first][rc.second] = v;
  return a;
}

std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[row], a[pivot]);
    Rational inv = 1 / a[row][col];
    for (std::size_t c = col; c < cols; ++c) a[row][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const RationalMatrix& m) {
  auto a = m.dense();
  return rref(a).size();
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  auto a = m.dense();
  std::vector<std::size_t> pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_mod(const std::vector<std::vector<Rational>>& b,
                                         const std::vector<std::vector<Rational>>& vs) {
  std::vector<std::vector<Rational>> rows = b;
  std::vector<std::size_t> chosen;
  auto current_rank = [&rows]() {
    auto copy = rows;
    return rref(copy).size();
  };
  std::size_t r = current_rank();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    rows.push_back(vs[i]);
    std::size_t r2 = current_rank();
    if (r2 > r) {
      chosen.push_back(i);
      r = r2;
    } else {
      rows.pop_back();
    }
  }
  return chosen;
}

}  // namespace baut
