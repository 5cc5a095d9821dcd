#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>
#include <crmw/generators.hpp>
#include <crmw/symmetry.hpp>

using namespace crmw;
using namespace testing_support;

namespace {

ModelData light_cone(int order) {
  VarSpace sp(1, 1);
  SeriesMatrix S(1, 1, sp, order);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), order));
  return {Matrix{{GR(1)}}, S};
}

Vec random_vec(Rng &rng, std::size_t n) {
  Vec v;
  for (std::size_t k = 0; k < n; ++k)
    v.push_back(rng.gr(3, true));
  return v;
}

SymbolInput e11_input(long omega) {
  return {{Matrix::identity(2), GR(1)},
          {Matrix::unit(2, 2, 0, 0)},
          {Matrix::unit(2, 2, 0, 0) * GR(omega)}};
}

} // namespace

TEST_CASE("a = 0 gives the translation 2bi d/dw") {
  DefiningEquation eq = build_model(light_cone(4));
  HoloVectorField x = transversal_symmetry(eq, Vec{GR(0)}, GR(1));
  CHECK(x.Xw.c.size() == 1);
  CHECK(x.Xw.c[0].terms().size() == 1);
  CHECK(x.Xw.c[0].constant_term() == GR(0, 2));
  CHECK(x.Xz[0].is_zero());
  CHECK(verify_tangency(eq, x).holds);
}

TEST_CASE("light cone normalized field with a = 1") {
  const int d = 6;
  ModelData data = light_cone(d);
  HoloVectorField x = transversal_symmetry(data, Vec{GR(1)}, GR(0));
  VarSpace sp(1, 1);
  CHECK(x.Xw.c[0] == poly(sp, d + 1, {{{1, 0, 0, 0}, "2"}}));
  CHECK(x.Xz[0].c[0] == poly(sp, d, {{{0, 0, 0, 0}, "1"}, {{0, 0, 1, 0}, "-1"}}));
  DefiningEquation eq = build_model(data);
  CHECK(agree(x, transversal_symmetry(eq, Vec{GR(1)}, GR(0))));
  TangencyReport rep = verify_tangency(eq, x);
  CHECK(rep.holds);
  CHECK(rep.checked_order == d);
}

TEST_CASE("transversal fields are tangent on random models") {
  Rng rng(11);
  int models = 0;
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(2, s * (s + 1) / 2); ++r) {
      CAPTURE(s);
      CAPTURE(r);
      ModelData data = random_model(rng, s, r, 6);
      DefiningEquation eq = build_model(data);
      ++models;
      for (int k = 0; k < 3; ++k) {
        Vec a = random_vec(rng, static_cast<std::size_t>(s));
        GR b = GR(rng.gr(3, false).re());
        HoloVectorField g = transversal_symmetry(eq, a, b);
        CHECK(agree(g, transversal_symmetry(data, a, b)));
        TangencyReport rep = verify_tangency(eq, g);
        CHECK(rep.holds);
        CHECK(rep.checked_order == 6);
      }
    }
  CHECK(models >= 5);
}

TEST_CASE("sign-flipped field is not tangent") {
  ModelData data = light_cone(6);
  DefiningEquation eq = build_model(data);
  HoloVectorField x = transversal_symmetry(data, Vec{GR(1)}, GR(0));
  x.Xz[0] = WPoly::series(TruncatedSeries::constant(data.S.space(), 6, GR(2))) - x.Xz[0];
  TangencyReport rep = verify_tangency(eq, x);
  CHECK_FALSE(rep.holds);
  CHECK_FALSE(rep.monomial.empty());
  CHECK(rep.z_degree + rep.zbar_degree >= 1);
}

TEST_CASE("quadric Heisenberg translations") {
  VarSpace sp(2, 1);
  SeriesMatrix S(2, 2, sp, 4);
  ModelData quad{Matrix{{GR(1), GR(0)}, {GR(0), GR(-1)}}, S};
  DefiningEquation eq{SeriesMatrix::from_constant(quad.H0, sp, 4), S};
  HoloVectorField x = transversal_symmetry(eq, Vec{GR(1, 2), GR(-3)}, GR(0));
  CHECK(verify_tangency(eq, x).holds);
}

TEST_CASE("Euler field") {
  Rng rng(3);
  VarSpace sp(2, 1);
  HoloVectorField e = euler_symmetry(sp, 8);
  for (int k = 0; k < 3; ++k) {
    DefiningEquation eq = build_model(random_model(rng, 2, 1, 6));
    CHECK(verify_tangency(eq, e).holds);
  }
  DefiningEquation eq = build_model(random_model(rng, 2, 1, 6));
  HoloVectorField x = transversal_symmetry(eq, Vec{GR(1), GR(0, 1)}, GR(0));
  CHECK(agree(bracket(e, x), -x));
  HoloVectorField c = transversal_symmetry(eq, Vec(2), GR(1));
  CHECK(agree(bracket(e, c), c * GR(-2)));
}

TEST_CASE("Heisenberg closure") {
  Rng rng(19);
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    DefiningEquation eq = build_model(random_model(rng, s, 1, 5));
    HeisenbergReport rep = heisenberg_closure(eq);
    CHECK(rep.holds);
    CHECK(rep.dimension == 2 * s + 1);
  }
}

TEST_CASE("isotropy fields on realized models") {
  const int d = 6;
  SymbolInput in = e11_input(0);
  ModelData model = realize_S_from_symbol(in, d);
  DefiningEquation eq = build_model(model);
  CHECK(isotropy_symmetry(model, in, CspElement::zero(2)).is_zero());

  Matrix L(2, 2);
  L(0, 0) = GR(0, 1);
  HoloVectorField x = isotropy_symmetry(model, in, CspElement::from_L(L));
  CHECK(verify_tangency(eq, x).holds);
  IsotropyData data = isotropy_data(in, CspElement::from_L(L));
  CHECK(data.c(0, 0) == GR(0, 2));

  HoloVectorField rot =
      isotropy_symmetry(model, in, CspElement::from_L(Matrix::identity(2) * GR(0, 1)));
  CHECK(verify_tangency(eq, rot).holds);

  CHECK_THROWS_AS(isotropy_data(in, CspElement::from_L(Matrix::unit(2, 2, 0, 1))), DomainError);
  // With Omega = diag(1, 0) the bracket picks up an L component outside span{e}.
  CHECK_THROWS_AS(isotropy_data(e11_input(1), CspElement::from_L(L)), DomainError);
  CHECK_THROWS_AS(isotropy_data(in, CspElement::from_S02(Matrix::unit(2, 2, 0, 0))), DomainError);
}

TEST_CASE("isotropy fields on random realized symbols") {
  Rng rng(23);
  int tested = 0;
  for (int s = 2; s <= 3; ++s)
    for (int r = 1; r <= 2; ++r) {
      ModifiedSymbol sym = random_realizable_symbol(rng, s, r);
      SymbolInput in = SymbolInput::from_symbol(sym);
      ModelData model = realize_S_from_symbol(in, 5);
      DefiningEquation eq = build_model(model);
      for (const auto &b : sym.g00prime)
        for (const GR &k : {GR(1), GR(0, 1)}) {
          CspElement x = CspElement::from_L(b * k);
          try {
            isotropy_data(in, x);
          } catch (const DomainError &) {
            continue;
          }
          CAPTURE(s);
          CAPTURE(r);
          CHECK(verify_tangency(eq, isotropy_symmetry(model, in, x)).holds);
          ++tested;
        }
    }
  CHECK(tested > 0);
}

TEST_CASE("isotropy index convention is fixed by tangency") {
  // Linear S over all symmetric 2x2 matrices: g'_00 is all of gl(2).
  for (long h : {1L, -1L}) {
    CAPTURE(h);
    Matrix H{{GR(1), GR(0)}, {GR(0), GR(h)}};
    Matrix e12 = Matrix::unit(2, 2, 0, 1);
    SymbolInput in{{H, GR(1)},
                   {Matrix::unit(2, 2, 0, 0), e12 + e12.transpose(), Matrix::unit(2, 2, 1, 1)},
                   {Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)}};
    ModelData model = realize_S_from_symbol(in, 4);
    DefiningEquation eq = build_model(model);
    const VarSpace &sp = model.S.space();
    for (const Matrix &L : {e12, e12 * GR(0, 1), e12.transpose() + Matrix::unit(2, 2, 0, 0) * GR(0, 3)}) {
      CspElement x = CspElement::from_L(L);
      IsotropyData d = isotropy_data(in, x);
      HoloVectorField f = isotropy_symmetry(model, in, x);
      CHECK(verify_tangency(eq, f).holds);
      CHECK(d.c != d.c.transpose());
      // Reading c with the other index order breaks tangency.
      HoloVectorField g = f;
      for (int b = 0; b < 3; ++b) {
        TruncatedSeries v(sp, 6);
        for (int a = 0; a < 3; ++a)
          v += TruncatedSeries::variable(sp, sp.zeta(a), 6) *
               d.c(static_cast<std::size_t>(b), static_cast<std::size_t>(a));
        g.Xzeta[static_cast<std::size_t>(b)] = WPoly::series(v);
      }
      CHECK_FALSE(verify_tangency(eq, g).holds);
    }
  }
}
