#include <doctest.h>

#include <crmw/errors.hpp>
#include <crmw/linalg.hpp>

using namespace crmw;

namespace {

// Cofactor expansion, used as an independent determinant.
GR cofactor_det(const Matrix &m) {
  const std::size_t n = m.rows();
  if (n == 1)
    return m(0, 0);
  GR d(0);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j)
          minor(i - 1, c++) = m(i, k);
    GR term = m(0, j) * cofactor_det(minor);
    d += (j % 2 == 0) ? term : -term;
  }
  return d;
}

Matrix sample(unsigned seed, std::size_t n) {
  Matrix m(n, n);
  unsigned x = seed;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      x = x * 1103515245u + 12345u;
      long re = static_cast<long>((x >> 16) % 7) - 3;
      x = x * 1103515245u + 12345u;
      long im = static_cast<long>((x >> 16) % 5) - 2;
      m(i, j) = GR(mpq_class(re, 1), mpq_class(im, 2));
    }
  return m;
}

} // namespace

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  for (unsigned seed = 1; seed <= 12; ++seed)
    for (std::size_t n = 1; n <= 4; ++n) {
      Matrix m = sample(seed, n);
      CHECK(determinant(m) == cofactor_det(m));
    }
  Matrix sing{{GR(1), GR(2)}, {GR(2), GR(4)}};
  CHECK(determinant(sing) == GR(0));
  CHECK(rank(sing) == 1);
}

TEST_CASE("inverse and solve") {
  for (unsigned seed = 3; seed <= 10; ++seed) {
    Matrix m = sample(seed, 3);
    if (determinant(m).is_zero())
      continue;
    CHECK(inverse(m) * m == Matrix::identity(3));
    Vec b{GR(1), GR::i(), GR(-2)};
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(flatten(m * Matrix::column(*x)) == b);
  }
  Matrix sing{{GR(1), GR(2)}, {GR(2), GR(4)}};
  CHECK_THROWS_AS(inverse(sing), SingularMatrix);
  CHECK_FALSE(solve(sing, Vec{GR(1), GR(0)}));
}

TEST_CASE("nullspace vectors are annihilated and independent") {
  Matrix m{{GR(1), GR(2), GR(3), GR(4)}, {GR(2), GR(4), GR(6), GR(8)}, {GR(0), GR(1), GR::i(), GR(0)}};
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto &v : ns)
    CHECK(is_zero(flatten(m * Matrix::column(v))));
  CHECK(rank(from_rows(ns, 4)) == 2);
}

TEST_CASE("reduce modulo a subspace is canonical") {
  std::vector<Vec> sub{{GR(1), GR(1), GR(0)}, {GR(0), GR(1), GR(1)}};
  Vec v{GR(3), GR(5), GR(7)};
  Vec w = reduce_modulo(sub, v);
  // The pivots of the reduced basis are columns 0 and 1.
  CHECK(w[0].is_zero());
  CHECK(w[1].is_zero());
  // Same class, same representative.
  Vec v2 = v;
  for (std::size_t k = 0; k < 3; ++k)
    v2[k] += GR(2) * sub[0][k] - GR(5) * sub[1][k];
  CHECK(reduce_modulo(sub, v2) == w);
  CHECK(in_span(sub, Vec{GR(1), GR(2), GR(1)}));
  CHECK_FALSE(in_span(sub, Vec{GR(1), GR(0), GR(0)}));
}
