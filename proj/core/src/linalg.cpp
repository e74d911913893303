#include "okapain/linalg.hpp"

#include <cassert>

namespace okapain::linalg {

using cas::Polynomial;
using cas::RationalFunction;

namespace {

// Reduced row echelon form in place; returns the pivot column of each row
// (-1 for zero rows).
std::vector<int> rref(Matrix& m) {
  size_t rows = m.size();
  size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<int> pivot_of_row(rows, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = row;
    while (p < rows && m[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    RationalFunction inv = RationalFunction::constant(1) / m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      RationalFunction factor = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - factor * m[row][j];
    }
    pivot_of_row[row] = static_cast<int>(col);
    ++row;
  }
  return pivot_of_row;
}

}  // namespace

int rank(Matrix m) {
  auto pivots = rref(m);
  int r = 0;
  for (int p : pivots)
    if (p >= 0) ++r;
  return r;
}

std::optional<Vector> solve(Matrix a, Vector b) {
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a);
  for (size_t i = 0; i < rows; ++i)
    if (pivots[i] == static_cast<int>(cols)) return std::nullopt;  // 0 = nonzero
  Vector x(cols, RationalFunction());
  for (size_t i = 0; i < rows; ++i)
    if (pivots[i] >= 0) x[pivots[i]] = a[i][cols];
  return x;
}

std::vector<Vector> nullspace(Matrix a) {
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots)
    if (p >= 0) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, RationalFunction());
    v[free] = RationalFunction::constant(1);
    for (size_t i = 0; i < rows; ++i) {
      if (pivots[i] < 0) continue;
      v[pivots[i]] = -a[i][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

cas::RationalFunction determinant(const Matrix& m) {
  size_t n = m.size();
  if (n == 0) return RationalFunction::constant(1);
  assert(m[0].size() == n);

  // Clear each row to a polynomial matrix, remembering the factors.
  std::vector<std::vector<Polynomial>> p(n, std::vector<Polynomial>(n));
  RationalFunction cleared = RationalFunction::constant(1);
  for (size_t i = 0; i < n; ++i) {
    Polynomial common = Polynomial::constant(1);
    for (size_t j = 0; j < n; ++j) {
      const Polynomial& den = m[i][j].den();
      Polynomial g = Polynomial::gcd(common, den);
      common = common * (*Polynomial::try_divide(den, g));
    }
    cleared = cleared * RationalFunction(common);
    for (size_t j = 0; j < n; ++j) {
      RationalFunction scaled = m[i][j] * RationalFunction(common);
      assert(scaled.is_polynomial());
      p[i][j] = scaled.num();
    }
  }

  // Bareiss fraction-free elimination.
  Polynomial prev = Polynomial::constant(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (p[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && p[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return RationalFunction();  // singular
      std::swap(p[swap_row], p[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Polynomial numer = p[k][k] * p[i][j] - p[i][k] * p[k][j];
        auto q = Polynomial::try_divide(numer, prev);
        assert(q.has_value());
        p[i][j] = *q;
      }
      p[i][k] = Polynomial();
    }
    prev = p[k][k];
  }
  RationalFunction det(p[n - 1][n - 1]);
  if (sign < 0) det = -det;
  return det / cleared;
}

}  // namespace okapain::linalg
