#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>
#include <crmw/generators.hpp>
#include <crmw/linalg.hpp>
#include <crmw/realize.hpp>
#include <crmw/symbols.hpp>

using namespace crmw;
using namespace testing_support;

namespace {

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, n, i, j); }

Matrix diag(std::initializer_list<long> d) {
  Matrix m(d.size(), d.size());
  std::size_t k = 0;
  for (long x : d) {
    m(k, k) = GR(x);
    ++k;
  }
  return m;
}

ModifiedSymbol e11_symbol(const Matrix &omega) {
  Involution inv{Matrix::identity(2), GR(1)};
  return {inv, {E(2, 0, 0)}, {omega}, g00_prime(inv, {E(2, 0, 0)})};
}

bool omegas_agree(const ModifiedSymbol &a, const ModifiedSymbol &b) {
  if (a.Omega.size() != b.Omega.size())
    return false;
  for (std::size_t k = 0; k < a.Omega.size(); ++k)
    if (!in_g00_prime(a.inv, a.Xi, a.Omega[k] - b.Omega[k]))
      return false;
  return true;
}

} // namespace

TEST_CASE("light cone frame Omega is zetabar over 1 - |zeta|^2") {
  const int d = 8;
  VarSpace sp(1, 1);
  SeriesMatrix S(1, 1, sp, d);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), d));
  DefiningEquation eq = build_model({Matrix{{GR(1)}}, S});
  auto om = frame_omega(eq);
  REQUIRE(om.size() == 1);
  TruncatedSeries expect(sp, om[0].order());
  for (int k = 0; 2 * k + 1 <= om[0].order(); ++k)
    expect.add_term(mono({0, 0, k, k + 1}), GR(1));
  CHECK(om[0](0, 0) == expect);

  BigradedSymbol sym = bigraded_symbol_at_zero(eq);
  CHECK(sym.two_nondegenerate);
  CHECK(sym.Xi[0] == Matrix{{GR(1)}});
  CHECK(first_order_constancy(eq).constant);
  auto g = g00_prime(sym.inv, sym.Xi);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == Matrix{{GR(1)}});
}

TEST_CASE("g'_00 for a rank one Xi is the diagonal") {
  Involution inv{Matrix::identity(2), GR(1)};
  auto g = g00_prime(inv, {E(2, 0, 0)});
  REQUIRE(g.size() == 2);
  CHECK(g[0] == E(2, 0, 0));
  CHECK(g[1] == E(2, 1, 1));
  CHECK(in_g00_prime(inv, {E(2, 0, 0)}, diag({3, -5})));
  CHECK_FALSE(in_g00_prime(inv, {E(2, 0, 0)}, E(2, 1, 0)));
}

TEST_CASE("realizability fixtures") {
  RealizabilityReport ok = check_realizable(e11_symbol(diag({1, 0})));
  CHECK(ok.realizable);
  CHECK_FALSE(ok.certificate.empty());

  RealizabilityReport bad = check_realizable(e11_symbol(E(2, 0, 1)));
  CHECK_FALSE(bad.realizable);
  CHECK(bad.condition == 1);
  CHECK(bad.alpha == 0);
  CHECK(bad.beta == 0);
  CHECK_FALSE(bad.residual.is_zero());
}

TEST_CASE("first-order obstruction for zeta E11 + zeta^2 E22") {
  const int d = 6;
  VarSpace sp(2, 1);
  SeriesMatrix S(2, 2, sp, d);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), d));
  S.set(1, 1, poly(sp, d, {{{0, 0, 0, 0, 2, 0}, "1"}}));
  DefiningEquation eq = build_model({Matrix::identity(2), S});
  FocReport rep = first_order_constancy(eq);
  CHECK_FALSE(rep.constant);
  REQUIRE(rep.obstructions.size() == 1);
  CHECK(rep.obstructions[0].alpha == 0);
  CHECK(rep.obstructions[0].beta == 0);
  CHECK(rep.obstructions[0].residual == diag({0, 2}));
  CHECK_THROWS_AS(modified_symbol(eq), DomainError);
}

TEST_CASE("realized symbols are constant and recover Omega modulo g'_00") {
  Rng rng(77);
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(3, s * (s + 1) / 2); ++r) {
      CAPTURE(s);
      CAPTURE(r);
      ModifiedSymbol sym = random_realizable_symbol(rng, s, r);
      REQUIRE(check_realizable(sym).realizable);
      SymbolInput in = SymbolInput::from_symbol(sym);
      RoundtripReport rep = verify_roundtrip(in, 5);
      CHECK(rep.ok);
      FocReport foc = first_order_constancy(build_model(realize_S_from_symbol(in, 5)));
      REQUIRE(foc.constant);
      for (std::size_t a = 0; a < foc.B.size(); ++a)
        CHECK(in_g00_prime(sym.inv, sym.Xi, foc.Omega[a] - sym.Omega[a]));
    }
}

TEST_CASE("realize reproduces (exp(2 zeta) - 1)/2 E11") {
  const int d = 9;
  SymbolInput in{{Matrix::identity(2), GR(1)}, {E(2, 0, 0)}, {E(2, 0, 0)}};
  ModelData data = realize_S_from_symbol(in, d);
  VarSpace sp(2, 1, false);
  TruncatedSeries expect(sp, d);
  mpz_class fact = 1, pow2 = 1;
  for (int n = 1; n <= d; ++n) {
    fact *= n;
    expect.add_term(mono({0, 0, 0, 0, n, 0}), GR(mpq_class(pow2, fact)));
    pow2 *= 2;
  }
  CHECK(data.S(0, 0) == expect);
  CHECK(data.S(0, 1).is_zero());
  CHECK(data.S(1, 1).is_zero());
  CHECK(data.H0 == Matrix::identity(2));
  CHECK(verify_roundtrip(in, d).ok);
}

TEST_CASE("realize rejects bad inputs") {
  SymbolInput bad{{Matrix::identity(2), GR(1)}, {E(2, 0, 0)}, {E(2, 0, 1)}};
  CHECK_THROWS_AS(realize_S_from_symbol(bad, 4), DomainError);
  SymbolInput dep{{Matrix::identity(2), GR(1)}, {E(2, 0, 0), E(2, 0, 0) * GR(2)},
                  {Matrix(2, 2), Matrix(2, 2)}};
  CHECK_THROWS_AS(realize_S_from_symbol(dep, 4), DomainError);
  SymbolInput nonsym{{Matrix::identity(2), GR(1)}, {E(2, 0, 1)}, {Matrix(2, 2)}};
  CHECK_THROWS_AS(realize_S_from_symbol(nonsym, 4), DomainError);
}

TEST_CASE("symbols transform equivariantly under linear changes of z") {
  Rng rng(5);
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    const int r = std::min(2, s);
    ModifiedSymbol sym = random_realizable_symbol(rng, s, r);
    ModelData data = realize_S_from_symbol(SymbolInput::from_symbol(sym), 4);
    ModifiedSymbol base = modified_symbol(build_model(data));
    Matrix V = rng.invertible(static_cast<std::size_t>(s));
    ModifiedSymbol moved = modified_symbol(build_model(transform_linear(data, V)));
    ModifiedSymbol acted = act_on_modified_symbol({GR(1), V}, base);
    CHECK(equivalent(moved.inv, acted.inv));
    CHECK(moved.Xi == acted.Xi);
    CHECK(omegas_agree(moved, acted));
    CHECK(moved.g00prime == acted.g00prime);
  }
}
