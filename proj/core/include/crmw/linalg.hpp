#pragma once

#include "crmw/matrix.hpp"

#include <optional>
#include <vector>

namespace crmw {

using Vec = std::vector<GR>;

// Fraction-free (Bareiss) determinant and rank.
GR determinant(const Matrix &m);
std::size_t rank(const Matrix &m);

struct Echelon {
  Matrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

// Gauss-Jordan with the first nonzero entry of each column as pivot.
Echelon rref(const Matrix &m);

// Basis of {x : m x = 0}, one vector per free column in increasing order.
std::vector<Vec> nullspace(const Matrix &m);

// A solution of m x = b with every free variable set to zero.
std::optional<Vec> solve(const Matrix &m, const Vec &b);

Matrix inverse(const Matrix &m);

// Coefficients c with sum c_k basis_k = target, if any.
std::optional<Vec> span_coefficients(const std::vector<Vec> &basis, const Vec &target);
bool in_span(const std::vector<Vec> &basis, const Vec &target);

// Nonzero rows of the reduced echelon form of the given vectors.
std::vector<Vec> row_basis(const std::vector<Vec> &vectors, std::size_t dim);

// Canonical representative of v modulo span(rows): entries at the pivot
// columns of the reduced basis are cleared.
Vec reduce_modulo(const std::vector<Vec> &rows, const Vec &v);

Matrix from_rows(const std::vector<Vec> &rows, std::size_t cols);
Vec flatten(const Matrix &m);
Matrix unflatten(const Vec &v, std::size_t rows, std::size_t cols);
bool is_zero(const Vec &v);

} // namespace crmw
