#pragma once

#include "crmw/gaussian_rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace crmw {

// Dense row-major matrix over Q(i).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<GR>> rows);

  static Matrix identity(std::size_t n);
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static Matrix column(const std::vector<GR> &v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  GR &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GR &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_hermitian() const;

  Matrix transpose() const;
  Matrix conj() const;
  Matrix adjoint() const { return conj().transpose(); }

  Matrix &operator+=(const Matrix &o);
  Matrix &operator-=(const Matrix &o);
  Matrix &operator*=(const GR &c);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator*(Matrix a, const GR &c) { return a *= c; }
  friend Matrix operator*(const GR &c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

  // Entries in row-major order.
  const std::vector<GR> &entries() const { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix &b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GR> data_;
};

// Commutator AB - BA.
Matrix commutator(const Matrix &a, const Matrix &b);

} // namespace crmw
