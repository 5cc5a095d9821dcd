#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>

using namespace crmw;
using namespace testing_support;

namespace {

// Univariate rational polynomials truncated at degree n, for oracles.
using UPoly = std::vector<mpq_class>;

UPoly umul(const UPoly &a, const UPoly &b, std::size_t n) {
  UPoly c(n + 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size() && i <= n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

// 1/a for a(0) != 0.
UPoly uinv(const UPoly &a, std::size_t n) {
  UPoly b(n + 1, mpq_class(0));
  b[0] = 1 / a[0];
  for (std::size_t k = 1; k <= n; ++k) {
    mpq_class s = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j)
      s += a[j] * b[k - j];
    b[k] = -s / a[0];
  }
  return b;
}

// Lagrange inversion: [x^n] G = (1/n) [u^{n-1}] (u / F(u))^n.
UPoly lagrange_inverse(const UPoly &f, std::size_t n) {
  UPoly f_over_u(f.begin() + 1, f.end());
  UPoly phi = uinv(f_over_u, n);
  UPoly g(n + 1, mpq_class(0));
  UPoly pw{mpq_class(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    pw = umul(pw, phi, n);
    g[k] = pw[k - 1] / mpq_class(static_cast<long>(k));
  }
  return g;
}

} // namespace

TEST_CASE("variable layout and weights") {
  VarSpace sp(2, 3, true);
  CHECK(sp.size() == 11);
  CHECK(sp.z(1) == 1);
  CHECK(sp.zbar(0) == 2);
  CHECK(sp.zeta(0) == 4);
  CHECK(sp.zetabar(2) == 9);
  CHECK(sp.t() == 10);
  CHECK(sp.weight(sp.zeta(0), Grading::Weighted) == 0);
  CHECK(sp.weight(sp.t(), Grading::Weighted) == 2);
  CHECK(sp.weight(sp.z(0), Grading::Weighted) == 1);
  CHECK(sp.conjugate_var(sp.zeta(1)) == sp.zetabar(1));
  CHECK_THROWS_AS(VarSpace(10, 7, false), DomainError);
}

TEST_CASE("geometric series product is one") {
  VarSpace sp(0, 1);
  auto a = poly(sp, 4, {{{0, 0}, "1"}, {{1, 1}, "-1"}});
  auto b = poly(sp, 4, {{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}});
  CHECK(a * b == TruncatedSeries::constant(sp, 4, GR(1)));
  auto x = poly(sp, 6, {{{0, 0}, "1"}, {{1, 1}, "-1"}});
  auto y = poly(sp, 6, {{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}});
  CHECK(x * y == poly(sp, 6, {{{0, 0}, "1"}, {{3, 3}, "-1"}}));
}

TEST_CASE("products truncate at the smaller order") {
  VarSpace sp(1, 1);
  auto a = poly(sp, 2, {{{1, 0, 0, 0}, "1"}});
  auto b = poly(sp, 5, {{{0, 1, 0, 0}, "1"}, {{0, 0, 2, 0}, "1"}});
  auto c = a * b;
  CHECK(c.order() == 2);
  CHECK(c.size() == 1);
  CHECK(c.coeff(mono({1, 1, 0, 0})) == GR(1));
}

TEST_CASE("space mismatch is rejected") {
  TruncatedSeries a(VarSpace(1, 1), 3), b(VarSpace(1, 2), 3);
  CHECK_THROWS_AS(a + b, VarSpaceMismatch);
  TruncatedSeries c(VarSpace(1, 1), 3, Grading::Weighted);
  CHECK_THROWS_AS(a * c, VarSpaceMismatch);
}

TEST_CASE("conjugation swaps holomorphic and antiholomorphic variables") {
  VarSpace sp(1, 1, true);
  auto f = poly(sp, 5, {{{1, 0, 2, 0, 1}, "1+2i"}, {{0, 0, 0, 1, 0}, "3i"}});
  auto g = f.conjugate();
  CHECK(g.coeff(mono({0, 1, 0, 2, 1})) == q("1-2i"));
  CHECK(g.coeff(mono({0, 0, 1, 0, 0})) == q("-3i"));
  CHECK(g.conjugate() == f);
}

TEST_CASE("differentiation and the truncation order") {
  VarSpace sp(0, 1);
  // 1/(1 - x) with x = zeta zetabar, order 4.
  auto f = poly(sp, 4, {{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}});
  auto d = f.differentiate(sp.zeta(0)).differentiate(sp.zetabar(0));
  CHECK(d.order() == 2);
  CHECK(d.constant_term() == GR(1));
  CHECK(d.coeff(mono({1, 1})) == GR(4));
  VarSpace w(1, 1);
  auto p = poly(w, 3, {{{1, 1, 1, 0}, "1"}}, Grading::Weighted);
  CHECK(p.differentiate(w.zeta(0)).order() == 3);
  CHECK(p.differentiate(w.z(0)).order() == 2);
  CHECK_THROWS_AS(TruncatedSeries(sp, 0).differentiate(sp.zeta(0)), DomainError);
}

TEST_CASE("composition") {
  VarSpace sp(0, 1);
  auto f = poly(sp, 3, {{{2, 0}, "1"}});
  auto g = poly(sp, 3, {{{1, 0}, "1"}, {{2, 0}, "1"}});
  auto h = compose(f, {{sp.zeta(0), g}});
  CHECK(h == poly(sp, 3, {{{2, 0}, "1"}, {{3, 0}, "2"}}));
  auto bad = poly(sp, 3, {{{0, 0}, "1"}, {{1, 0}, "1"}});
  CHECK_THROWS_AS(compose(f, {{sp.zeta(0), bad}}), DomainError);
}

TEST_CASE("composition agrees with univariate expansion") {
  VarSpace sp(0, 1);
  const std::size_t n = 7;
  UPoly fu{0, 2, -1, mpq_class(1, 3), 5}, gu{0, 1, 3, 0, mpq_class(-1, 2)};
  TruncatedSeries f(sp, n), g(sp, n);
  for (std::size_t k = 0; k < fu.size(); ++k)
    f.add_term(mono({static_cast<int>(k), 0}), GR(fu[k]));
  for (std::size_t k = 0; k < gu.size(); ++k)
    g.add_term(mono({static_cast<int>(k), 0}), GR(gu[k]));
  UPoly expect(n + 1, mpq_class(0)), pw{mpq_class(1)};
  for (std::size_t k = 0; k < fu.size(); ++k) {
    for (std::size_t j = 0; j < pw.size() && j <= n; ++j)
      expect[j] += fu[k] * pw[j];
    pw = umul(pw, gu, n);
  }
  auto h = compose(f, {{sp.zeta(0), g}});
  for (std::size_t k = 0; k <= n; ++k)
    CHECK(h.coeff(mono({static_cast<int>(k), 0})) == GR(expect[k]));
}

TEST_CASE("inverse of zeta + zeta^2") {
  VarSpace sp(0, 1);
  auto f = poly(sp, 4, {{{1, 0}, "1"}, {{2, 0}, "1"}});
  auto g = invert_map({f});
  CHECK(g[0] == poly(sp, 4, {{{1, 0}, "1"}, {{2, 0}, "-1"}, {{3, 0}, "2"}, {{4, 0}, "-5"}}));
}

TEST_CASE("inversion matches Lagrange inversion") {
  VarSpace sp(0, 1);
  const std::size_t n = 8;
  UPoly fu{0, 3, mpq_class(1, 2), -2, 0, 1, mpq_class(-7, 3)};
  TruncatedSeries f(sp, n);
  for (std::size_t k = 0; k < fu.size(); ++k)
    f.add_term(mono({static_cast<int>(k), 0}), GR(fu[k]));
  auto g = invert_map({f});
  UPoly expect = lagrange_inverse(fu, n);
  for (std::size_t k = 0; k <= n; ++k)
    CHECK(g[0].coeff(mono({static_cast<int>(k), 0})) == GR(expect[k]));
}

TEST_CASE("multivariate inversion round trip") {
  VarSpace sp(0, 2);
  auto f1 = poly(sp, 5, {{{1, 0, 0, 0}, "1"}, {{0, 2, 0, 0}, "1"}});
  auto f2 = poly(sp, 5, {{{0, 1, 0, 0}, "1"}});
  auto g = invert_map({f1, f2});
  auto fg = compose_maps({f1, f2}, g);
  CHECK(fg[0] == TruncatedSeries::variable(sp, sp.zeta(0), 5));
  CHECK(fg[1] == TruncatedSeries::variable(sp, sp.zeta(1), 5));
  auto gf = compose_maps(g, {f1, f2});
  CHECK(gf[0] == TruncatedSeries::variable(sp, sp.zeta(0), 5));
  auto sing = poly(sp, 5, {{{1, 0, 0, 0}, "1"}});
  CHECK_THROWS_AS(invert_map({sing, sing}), SingularMatrix);
}

TEST_CASE("matrix Neumann inverse") {
  VarSpace sp(0, 1);
  SeriesMatrix n(2, 2, sp, 3);
  n.set(0, 1, TruncatedSeries::variable(sp, sp.zeta(0), 3));
  SeriesMatrix inv = neumann_inverse(n);
  CHECK(inv == SeriesMatrix::identity(2, sp, 3) + n);
  SeriesMatrix c = SeriesMatrix::identity(2, sp, 3);
  CHECK_THROWS_AS(neumann_inverse(c), DomainError);
}

TEST_CASE("general series matrix inverse") {
  VarSpace sp(0, 2);
  SeriesMatrix m(2, 2, sp, 5);
  m.set(0, 0, poly(sp, 5, {{{0, 0, 0, 0}, "2"}, {{1, 0, 0, 1}, "1"}}));
  m.set(0, 1, poly(sp, 5, {{{0, 1, 0, 0}, "1i"}}));
  m.set(1, 0, poly(sp, 5, {{{0, 0, 1, 1}, "-3"}}));
  m.set(1, 1, poly(sp, 5, {{{0, 0, 0, 0}, "1"}, {{2, 0, 0, 0}, "1/2"}}));
  SeriesMatrix inv = inverse(m);
  CHECK(inv * m == SeriesMatrix::identity(2, sp, 5));
  CHECK(m * inv == SeriesMatrix::identity(2, sp, 5));
  CHECK(m.transpose().transpose() == m);
  CHECK((m * inv).conjugate() == SeriesMatrix::identity(2, sp, 5));
}
