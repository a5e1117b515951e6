#include "arithdyn/linear.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

std::optional<std::vector<Rational>> exact_linear_solve(const Matrix& a, const std::vector<Rational>& b) {
  std::size_t rows = a.size();
  if (b.size() != rows) throw InvalidArgument("linear solve: right-hand side length mismatch");
  std::size_t cols = rows ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != cols) throw InvalidArgument("linear solve: ragged matrix");

  Matrix m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
    m[i][cols] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j <= cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;

  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][cols];

  for (std::size_t i = 0; i < rows; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0 && x[j] != 0) s += a[i][j] * x[j];
    if (s != b[i]) throw Error("linear solve: back-substitution check failed");
  }
  return x;
}

Rational determinant(Matrix a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw InvalidArgument("determinant: matrix is not square");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

}  // namespace arithdyn
