#include "crmw/series_matrix.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <algorithm>

namespace crmw {

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols, VarSpace space, int order,
                           Grading grading)
    : rows_(rows), cols_(cols), space_(space), order_(order), grading_(grading),
      data_(rows * cols, TruncatedSeries(space, order, grading)) {}

SeriesMatrix SeriesMatrix::identity(std::size_t n, VarSpace space, int order, Grading grading) {
  return from_constant(Matrix::identity(n), space, order, grading);
}

SeriesMatrix SeriesMatrix::from_constant(const Matrix &m, VarSpace space, int order,
                                         Grading grading) {
  SeriesMatrix out(m.rows(), m.cols(), space, order, grading);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.data_[i * m.cols() + j].add_term(Monomial{}, m(i, j));
  return out;
}

SeriesMatrix SeriesMatrix::from_entries(std::size_t rows, std::size_t cols,
                                        std::vector<TruncatedSeries> entries) {
  if (entries.size() != rows * cols || entries.empty())
    throw DimensionMismatch("entry count does not match shape");
  int order = entries[0].order();
  for (const auto &e : entries) {
    if (e.space() != entries[0].space() || e.grading() != entries[0].grading())
      throw VarSpaceMismatch("matrix entries live in different spaces");
    order = std::min(order, e.order());
  }
  SeriesMatrix out(rows, cols, entries[0].space(), order, entries[0].grading());
  for (std::size_t k = 0; k < entries.size(); ++k)
    out.data_[k] = entries[k].order() == order ? std::move(entries[k]) : entries[k].truncated(order);
  return out;
}

void SeriesMatrix::set(std::size_t i, std::size_t j, const TruncatedSeries &f) {
  if (f.space() != space_ || f.grading() != grading_)
    throw VarSpaceMismatch("entry lives in a different space");
  if (f.order() < order_)
    throw DomainError("entry order below matrix order");
  data_[i * cols_ + j] = f.order() == order_ ? f : f.truncated(order_);
}

Matrix SeriesMatrix::constant_part() const {
  Matrix m(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    m(k / cols_, k % cols_) = data_[k].constant_term();
  return m;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto &f) { return f.is_zero(); });
}

SeriesMatrix SeriesMatrix::transpose() const {
  SeriesMatrix t(cols_, rows_, space_, order_, grading_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

namespace {

template <class F> SeriesMatrix map_entries(const SeriesMatrix &m, F f) {
  std::vector<TruncatedSeries> e;
  e.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e.push_back(f(m(i, j)));
  return SeriesMatrix::from_entries(m.rows(), m.cols(), std::move(e));
}

} // namespace

SeriesMatrix SeriesMatrix::conjugate() const {
  return map_entries(*this, [](const TruncatedSeries &f) { return f.conjugate(); });
}

SeriesMatrix SeriesMatrix::differentiate(std::size_t var) const {
  return map_entries(*this, [var](const TruncatedSeries &f) { return f.differentiate(var); });
}

SeriesMatrix SeriesMatrix::truncated(int order) const {
  return map_entries(*this, [order](const TruncatedSeries &f) { return f.truncated(order); });
}

SeriesMatrix SeriesMatrix::without(VarKind kind) const {
  return map_entries(*this, [kind](const TruncatedSeries &f) { return f.without(kind); });
}

SeriesMatrix SeriesMatrix::lifted(const VarSpace &target) const {
  return map_entries(*this, [&target](const TruncatedSeries &f) { return f.lifted(target); });
}

SeriesMatrix SeriesMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionMismatch("block out of range");
  SeriesMatrix b(nr, nc, space_, order_, grading_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
  return b;
}

SeriesMatrix SeriesMatrix::operator-() const {
  SeriesMatrix m(*this);
  for (auto &f : m.data_)
    f = -f;
  return m;
}

SeriesMatrix &SeriesMatrix::operator+=(const SeriesMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix addition shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] += o.data_[k];
  order_ = std::min(order_, o.order_);
  return *this;
}

SeriesMatrix &SeriesMatrix::operator-=(const SeriesMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix subtraction shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] -= o.data_[k];
  order_ = std::min(order_, o.order_);
  return *this;
}

SeriesMatrix &SeriesMatrix::operator*=(const GR &c) {
  for (auto &f : data_)
    f *= c;
  return *this;
}

SeriesMatrix operator*(const SeriesMatrix &a, const SeriesMatrix &b) {
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("matrix product shape mismatch");
  if (a.space_ != b.space_ || a.grading_ != b.grading_)
    throw VarSpaceMismatch("matrix product of series in different spaces");
  const int order = std::min(a.order_, b.order_);
  SeriesMatrix c(a.rows_, b.cols_, a.space_, order, a.grading_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      TruncatedSeries acc(a.space_, order, a.grading_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto &x = a(i, k);
        const auto &y = b(k, j);
        if (x.is_zero() || y.is_zero())
          continue;
        acc += x * y;
      }
      c.data_[i * b.cols_ + j] = std::move(acc);
    }
  return c;
}

SeriesMatrix operator*(const Matrix &a, const SeriesMatrix &b) {
  if (a.cols() != b.rows_)
    throw DimensionMismatch("matrix product shape mismatch");
  SeriesMatrix c(a.rows(), b.cols_, b.space_, b.order_, b.grading_);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero())
          c.data_[i * b.cols_ + j] += b(k, j) * a(i, k);
    }
  return c;
}

SeriesMatrix operator*(const SeriesMatrix &a, const Matrix &b) {
  if (a.cols_ != b.rows())
    throw DimensionMismatch("matrix product shape mismatch");
  SeriesMatrix c(a.rows_, b.cols(), a.space_, a.order_, a.grading_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero())
          c.data_[i * b.cols() + j] += a(i, k) * b(k, j);
    }
  return c;
}

SeriesMatrix neumann_inverse(const SeriesMatrix &n) {
  if (n.rows() != n.cols())
    throw DimensionMismatch("Neumann series of a non-square matrix");
  int val = n.order() + 1;
  for (std::size_t i = 0; i < n.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j)
      val = std::min(val, n(i, j).valuation());
  if (val < 1)
    throw DomainError("Neumann series needs a matrix with zero constant part");
  SeriesMatrix sum = SeriesMatrix::identity(n.rows(), n.space(), n.order(), n.grading());
  if (n.is_zero())
    return sum;
  // Horner: Id + N(Id + N(...)). Powers beyond order/val vanish.
  int terms = n.order() / val;
  for (int k = 0; k < terms; ++k)
    sum = SeriesMatrix::identity(n.rows(), n.space(), n.order(), n.grading()) + n * sum;
  return sum;
}

SeriesMatrix inverse(const SeriesMatrix &m) {
  Matrix c = m.constant_part();
  Matrix cinv = inverse(c);
  SeriesMatrix rest = m - SeriesMatrix::from_constant(c, m.space(), m.order(), m.grading());
  // m = c (Id + c^{-1} rest)
  SeriesMatrix n = -(cinv * rest);
  return neumann_inverse(n) * cinv;
}

bool agree(const SeriesMatrix &a, const SeriesMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  return (a - b).is_zero();
}

} // namespace crmw
