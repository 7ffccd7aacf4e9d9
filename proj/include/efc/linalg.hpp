#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "efc/rational.hpp"

namespace efc {

using Matrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form; zero rows are dropped. Returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

inline std::size_t rank(Matrix m, std::size_t cols) { return rref(m, cols).size(); }

/// Basis of {v : m v = 0}, as rows in reduced echelon form.
inline Matrix nullspace(Matrix m, std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  rref(basis, cols);
  return basis;
}

/// Scale a rational row to a primitive integer row (positive first nonzero entry kept as is).
inline std::vector<Integer> clear_denominators(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& q : row) l = lcm(l, Integer(q.get_den()));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : row) {
    Integer v = Integer(q.get_num()) * (l / q.get_den());
    g = gcd(g, v);
    out.push_back(v);
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

}  // namespace efc
