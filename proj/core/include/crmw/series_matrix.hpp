#pragma once

#include "crmw/matrix.hpp"
#include "crmw/series.hpp"

#include <vector>

namespace crmw {

// Dense matrix of truncated series sharing one variable space, grading and order.
class SeriesMatrix {
public:
  SeriesMatrix() = default;
  SeriesMatrix(std::size_t rows, std::size_t cols, VarSpace space, int order,
               Grading grading = Grading::Total);

  static SeriesMatrix identity(std::size_t n, VarSpace space, int order,
                               Grading grading = Grading::Total);
  static SeriesMatrix from_constant(const Matrix &m, VarSpace space, int order,
                                    Grading grading = Grading::Total);
  // Entries must share space and grading; the order becomes their minimum.
  static SeriesMatrix from_entries(std::size_t rows, std::size_t cols,
                                   std::vector<TruncatedSeries> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const VarSpace &space() const { return space_; }
  int order() const { return order_; }
  Grading grading() const { return grading_; }

  const TruncatedSeries &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  // Assigning an entry truncates it to the matrix order.
  void set(std::size_t i, std::size_t j, const TruncatedSeries &f);

  Matrix constant_part() const;
  bool is_zero() const;

  SeriesMatrix transpose() const;
  SeriesMatrix conjugate() const;
  SeriesMatrix differentiate(std::size_t var) const;
  SeriesMatrix truncated(int order) const;
  SeriesMatrix without(VarKind kind) const;
  SeriesMatrix lifted(const VarSpace &target) const;
  SeriesMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  SeriesMatrix operator-() const;
  SeriesMatrix &operator+=(const SeriesMatrix &o);
  SeriesMatrix &operator-=(const SeriesMatrix &o);
  SeriesMatrix &operator*=(const GR &c);

  friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix &b) { return a += b; }
  friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix &b) { return a -= b; }
  friend SeriesMatrix operator*(SeriesMatrix a, const GR &c) { return a *= c; }
  friend SeriesMatrix operator*(const SeriesMatrix &a, const SeriesMatrix &b);
  friend SeriesMatrix operator*(const Matrix &a, const SeriesMatrix &b);
  friend SeriesMatrix operator*(const SeriesMatrix &a, const Matrix &b);
  friend bool operator==(const SeriesMatrix &a, const SeriesMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.order_ == b.order_;
  }
  friend bool operator!=(const SeriesMatrix &a, const SeriesMatrix &b) { return !(a == b); }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  VarSpace space_;
  int order_ = 0;
  Grading grading_ = Grading::Total;
  std::vector<TruncatedSeries> data_;
};

// (Id - N)^{-1} = sum_k N^k. N must have zero constant part.
SeriesMatrix neumann_inverse(const SeriesMatrix &n);

// Inverse of a matrix with invertible constant part.
SeriesMatrix inverse(const SeriesMatrix &m);

// Entries agree up to the smaller of the two orders.
bool agree(const SeriesMatrix &a, const SeriesMatrix &b);

} // namespace crmw
