#include "crmw/random.hpp"

#include "crmw/linalg.hpp"

namespace crmw {

long Rng::integer(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(eng_() % span);
}

GR Rng::gr(long bound, bool complex) {
  mpq_class re(integer(-bound, bound), integer(1, 2));
  mpq_class im(complex ? integer(-bound, bound) : 0, integer(1, 2));
  return {re, im};
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols, long bound, bool complex) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = gr(bound, complex);
  return m;
}

Matrix Rng::symmetric(std::size_t n, long bound) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      m(i, j) = m(j, i) = gr(bound);
  return m;
}

Matrix Rng::hermitian_nondegenerate(std::size_t n, long bound) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = gr(bound, false);
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = gr(bound);
        m(j, i) = m(i, j).conj();
      }
    }
    if (!determinant(m).is_zero())
      return m;
  }
}

Matrix Rng::invertible(std::size_t n, long bound) {
  for (;;) {
    Matrix m = matrix(n, n, bound);
    if (!determinant(m).is_zero())
      return m;
  }
}

CspElement Rng::csp(int s, long bound) {
  const auto n = static_cast<std::size_t>(s);
  CspElement e = CspElement::zero(s);
  e.c = gr(bound);
  e.L = matrix(n, n, bound);
  e.S02 = symmetric(n, bound);
  e.S0m2 = symmetric(n, bound);
  for (std::size_t j = 0; j < n; ++j) {
    e.v1[j] = gr(bound);
    e.v2[j] = gr(bound);
  }
  e.u = gr(bound);
  return e;
}

} // namespace crmw
