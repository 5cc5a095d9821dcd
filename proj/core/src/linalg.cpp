#include "crmw/linalg.hpp"

#include "crmw/errors.hpp"

#include <utility>

namespace crmw {

namespace {

// Bareiss elimination in place; returns rank and the sign of the row swaps.
std::size_t bareiss(Matrix &a, int &sign) {
  const std::size_t n = a.rows(), m = a.cols();
  GR prev(1);
  std::size_t row = 0;
  sign = 1;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a(p, col).is_zero())
      ++p;
    if (p == n)
      continue;
    if (p != row) {
      for (std::size_t j = 0; j < m; ++j)
        std::swap(a(p, j), a(row, j));
      sign = -sign;
    }
    for (std::size_t i = row + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < m; ++j) {
        GR v = a(row, col) * a(i, j) - a(i, col) * a(row, j);
        v /= prev;
        a(i, j) = std::move(v);
      }
      a(i, col) = GR(0);
    }
    prev = a(row, col);
    ++row;
  }
  return row;
}

} // namespace

GR determinant(const Matrix &m) {
  if (!m.square())
    throw DimensionMismatch("determinant of non-square matrix");
  if (m.rows() == 0)
    return GR(1);
  Matrix a(m);
  int sign = 1;
  std::size_t r = bareiss(a, sign);
  if (r < m.rows())
    return GR(0);
  GR d = a(m.rows() - 1, m.cols() - 1);
  return sign < 0 ? -d : d;
}

std::size_t rank(const Matrix &m) {
  Matrix a(m);
  int sign = 1;
  return bareiss(a, sign);
}

Echelon rref(const Matrix &m) {
  Echelon e{m, {}};
  Matrix &a = e.reduced;
  const std::size_t n = a.rows(), cols = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a(p, col).is_zero())
      ++p;
    if (p == n)
      continue;
    if (p != row)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(a(p, j), a(row, j));
    GR inv = a(row, col).inverse();
    for (std::size_t j = col; j < cols; ++j)
      a(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col).is_zero())
        continue;
      GR f = a(i, col);
      for (std::size_t j = col; j < cols; ++j)
        if (!a(row, j).is_zero())
          a(i, j) -= f * a(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::vector<Vec> nullspace(const Matrix &m) {
  Echelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots)
    is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f])
      continue;
    Vec v(cols);
    v[f] = GR(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix &m, const Vec &b) {
  if (b.size() != m.rows())
    throw DimensionMismatch("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < b.size(); ++i)
    aug(i, m.cols()) = b[i];
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols())
    return std::nullopt;
  Vec x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

Matrix inverse(const Matrix &m) {
  if (!m.square())
    throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    throw SingularMatrix("matrix is singular");
  return e.reduced.block(0, n, n, n);
}

Matrix from_rows(const std::vector<Vec> &rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionMismatch("vector length mismatch");
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

std::optional<Vec> span_coefficients(const std::vector<Vec> &basis, const Vec &target) {
  Matrix a(target.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].size() != target.size())
      throw DimensionMismatch("vector length mismatch");
    for (std::size_t i = 0; i < target.size(); ++i)
      a(i, k) = basis[k][i];
  }
  return solve(a, target);
}

bool in_span(const std::vector<Vec> &basis, const Vec &target) {
  return span_coefficients(basis, target).has_value();
}

std::vector<Vec> row_basis(const std::vector<Vec> &vectors, std::size_t dim) {
  if (vectors.empty())
    return {};
  Echelon e = rref(from_rows(vectors, dim));
  std::vector<Vec> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Vec v(dim);
    for (std::size_t j = 0; j < dim; ++j)
      v[j] = e.reduced(r, j);
    out.push_back(std::move(v));
  }
  return out;
}

Vec reduce_modulo(const std::vector<Vec> &rows, const Vec &v) {
  Vec out = v;
  if (rows.empty())
    return out;
  std::vector<Vec> basis = row_basis(rows, v.size());
  for (const auto &b : basis) {
    std::size_t p = 0;
    while (b[p].is_zero())
      ++p;
    if (out[p].is_zero())
      continue;
    GR f = out[p];
    for (std::size_t j = p; j < out.size(); ++j)
      if (!b[j].is_zero())
        out[j] -= f * b[j];
  }
  return out;
}

Vec flatten(const Matrix &m) { return m.entries(); }

Matrix unflatten(const Vec &v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw DimensionMismatch("cannot reshape vector");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = v[i * cols + j];
  return m;
}

bool is_zero(const Vec &v) {
  for (const auto &x : v)
    if (!x.is_zero())
      return false;
  return true;
}

} // namespace crmw
