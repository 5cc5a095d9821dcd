#include "crmw/matrix.hpp"

#include "crmw/errors.hpp"

namespace crmw {

Matrix::Matrix(std::initializer_list<std::initializer_list<GR>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = GR(1);
  return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Matrix m(rows, cols);
  m(i, j) = GR(1);
  return m;
}

Matrix Matrix::column(const std::vector<GR> &v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    m(i, 0) = v[i];
  return m;
}

bool Matrix::is_zero() const {
  for (const auto &x : data_)
    if (!x.is_zero())
      return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!square())
    return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i))
        return false;
  return true;
}

bool Matrix::is_hermitian() const { return square() && *this == adjoint(); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conj() const {
  Matrix c(*this);
  for (auto &x : c.data_)
    x = x.conj();
  return c;
}

Matrix &Matrix::operator+=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix addition shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] += o.data_[k];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix subtraction shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] -= o.data_[k];
  return *this;
}

Matrix &Matrix::operator*=(const GR &c) {
  for (auto &x : data_)
    x *= c;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m(*this);
  for (auto &x : m.data_)
    x = -x;
  return m;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GR &x = a(i, k);
      if (x.is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero())
          c(i, j).add_product(x, b(k, j));
    }
  return c;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionMismatch("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

} // namespace crmw
