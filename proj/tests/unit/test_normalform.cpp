#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>
#include <crmw/generators.hpp>
#include <crmw/normalform.hpp>

using namespace crmw;
using namespace testing_support;

namespace {

ModelData scalar_model(long h, const TruncatedSeries &s) {
  SeriesMatrix S(1, 1, s.space(), s.order());
  S.set(0, 0, s);
  return {Matrix{{GR(h)}}, S};
}

TruncatedSeries zeta1(int order) {
  VarSpace sp(1, 1);
  return TruncatedSeries::variable(sp, sp.zeta(0), order);
}

Matrix sym_e12(std::size_t n) { return Matrix::unit(n, n, 0, 1) + Matrix::unit(n, n, 1, 0); }

} // namespace

TEST_CASE("normalization fixes build_model output") {
  Rng rng(41);
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    ModelData data = random_model(rng, s, 1, 5);
    DefiningEquation eq = build_model(data);
    PluriharmonicResult res = normalize_pluriharmonic(eq);
    CHECK(res.record.A.is_zero());
    CHECK(res.record.removed.is_zero());
    CHECK(res.data.H0 == data.H0);
    CHECK(res.data.S == data.S);
    CHECK(res.equation.H == eq.H);
    CHECK(res.equation.S == eq.S);
  }
}

TEST_CASE("forward transform then normalize is the identity") {
  const int d = 5;
  Rng rng(43);
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(2, s); ++r) {
      CAPTURE(s);
      CAPTURE(r);
      ModelData data = random_model(rng, s, r, d);
      DefiningEquation eq = build_model(data);
      const VarSpace &sp = eq.H.space();
      SeriesMatrix A(static_cast<std::size_t>(s), static_cast<std::size_t>(s), sp, d);
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
          TruncatedSeries e(sp, d);
          for (int a = 0; a < r; ++a)
            e += TruncatedSeries::variable(sp, sp.zeta(a), d) * rng.gr(2, true);
          A.set(i, j, e + TruncatedSeries::variable(sp, sp.zeta(0), d).pow(2) * rng.gr(2, true));
        }
      SeriesMatrix R = random_zetabar_matrix(rng, sp, d, 2);
      DefiningEquation moved = forward_transform(eq, A, R);
      CHECK(verify_rank_condition(moved).holds);
      PluriharmonicResult res = normalize_pluriharmonic(moved);
      CHECK(res.record.A == A);
      CHECK(res.data.H0 == data.H0);
      CHECK(res.data.S == data.S);
      CHECK(res.equation.H == eq.H);
      CHECK(res.equation.S == eq.S);
      CHECK(pde_propagate_oracle(res.data).H == res.equation.H);
      CHECK(pde_propagate_oracle(res.data).S == res.equation.S);
    }
}

TEST_CASE("normalization recovers the model after A = zeta E12") {
  const int d = 6;
  VarSpace sp(2, 1);
  ModelData data{Matrix::identity(2), SeriesMatrix(2, 2, sp, d)};
  data.S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), d));
  data.S.set(1, 1, TruncatedSeries::variable(sp, sp.zeta(0), d).pow(2));
  SeriesMatrix A(2, 2, sp, d);
  A.set(0, 1, TruncatedSeries::variable(sp, sp.zeta(0), d));
  DefiningEquation moved = forward_transform(build_model(data), A, SeriesMatrix(2, 2, sp, d));
  CHECK_FALSE(moved.H(1, 0).without(VarKind::ZetaBar).is_zero());
  PluriharmonicResult res = normalize_pluriharmonic(moved);
  CHECK(res.data.S == data.S);
  CHECK(res.data.H0 == data.H0);
}

TEST_CASE("reconstruct_from_HS agrees with build_model") {
  Rng rng(47);
  for (int s = 1; s <= 3; ++s) {
    ModelData data = random_model(rng, s, std::min(2, s), 8);
    DefiningEquation a = reconstruct_from_HS(data), b = build_model(data);
    CHECK(a.H == b.H);
    CHECK(a.S == b.S);
  }
  VarSpace sp(2, 1);
  ModelData quad{Matrix{{GR(1), GR(0)}, {GR(0), GR(-1)}}, SeriesMatrix(2, 2, sp, 6)};
  DefiningEquation q = reconstruct_from_HS(quad);
  CHECK(q.H == SeriesMatrix::from_constant(quad.H0, sp, 6));
  CHECK(q.S.is_zero());

  const int d = 8;
  DefiningEquation lc = reconstruct_from_HS(scalar_model(1, zeta1(d)));
  TruncatedSeries geo(VarSpace(1, 1), d);
  for (int k = 0; 2 * k <= d; ++k)
    geo.add_term(mono({0, 0, k, k}), GR(1));
  CHECK(lc.H(0, 0) == geo);
}

TEST_CASE("pivot selection fixtures") {
  CHECK(pivot_select(std::vector<Matrix>{Matrix{{GR(1)}}}).positions == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(pivot_select(std::vector<Matrix>{sym_e12(2)}).positions == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(pivot_select(std::vector<Matrix>{Matrix::unit(2, 2, 0, 0), sym_e12(2)}).positions ==
        std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
  CHECK(pivot_select(std::vector<Matrix>{Matrix::unit(3, 3, 1, 1)}).positions == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK(symmetric_positions(3) ==
        std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}});
  CHECK_THROWS_AS(pivot_select(std::vector<Matrix>{Matrix::unit(2, 2, 0, 0), Matrix::unit(2, 2, 0, 0) * GR(3)}),
                  DomainError);
}

TEST_CASE("normal_form_reduce") {
  const int d = 7;
  VarSpace sp(1, 1);
  TruncatedSeries z = zeta1(d);
  ModelData out = normal_form_reduce(scalar_model(1, z * GR(2) + z * z));
  CHECK(out.S(0, 0) == z);
  CHECK(out.H0 == Matrix{{GR(1)}});

  ModelData fixed = scalar_model(3, z);
  CHECK(normal_form_reduce(fixed).S == fixed.S);

  Rng rng(53);
  for (int s = 2; s <= 3; ++s)
    for (int r = 1; r <= 3; ++r) {
      CAPTURE(s);
      CAPTURE(r);
      ModelData data = random_model(rng, s, r, 5);
      ModelData once = normal_form_reduce(data);
      CHECK(normal_form_reduce(once).S == once.S);
      const VarSpace &vs = data.S.space();
      std::vector<Matrix> s02;
      for (int a = 0; a < r; ++a)
        s02.push_back(data.S.differentiate(vs.zeta(a)).constant_part());
      PivotTuple p = pivot_select(s02);
      for (int a = 0; a < r; ++a) {
        auto [j, k] = p.positions[static_cast<std::size_t>(a)];
        CHECK(once.S(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) ==
              TruncatedSeries::variable(vs, vs.zeta(a), 5));
      }
      BigradedSymbol before = bigraded_symbol_at_zero(build_model(data));
      BigradedSymbol after = bigraded_symbol_at_zero(build_model(once));
      CHECK(after.two_nondegenerate == before.two_nondegenerate);
      CHECK(first_order_constancy(build_model(once)).constant ==
            first_order_constancy(build_model(data)).constant);
    }
}

TEST_CASE("equivalence witness fixtures") {
  const int d = 6;
  TruncatedSeries z = zeta1(d);
  ModelData m1 = scalar_model(1, z), m2 = scalar_model(4, z);
  EquivalenceWitness w{Matrix{{GR(2)}}, {z * GR(mpq_class(1, 4))}};
  WitnessReport ok = verify_equivalence_witness(m1, m2, w);
  CHECK(ok.holds);

  WitnessReport bad = verify_equivalence_witness(m1, m2, {Matrix{{GR(2)}}, {z}});
  CHECK_FALSE(bad.holds);
  CHECK(bad.h_matches);
  CHECK_FALSE(bad.s_matches);
  CHECK(bad.monomial == "q1");
  CHECK(bad.lhs == GR(1));
  CHECK(bad.rhs == GR(4));

  CHECK(verify_equivalence_witness(m2, m1, w.inverse()).holds);
  CHECK(verify_equivalence_witness(m1, m1, {Matrix{{GR(1)}}, {z}}).holds);
  CHECK_THROWS_AS(verify_equivalence_witness(m1, m2, {Matrix{{GR(0)}}, {z}}), DomainError);
  CHECK_THROWS_AS(verify_equivalence_witness(m1, m2, {Matrix{{GR(2)}}, {z * z}}), DomainError);
}

TEST_CASE("witness inversion on random data") {
  const int d = 5;
  Rng rng(59);
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    const int r = std::min(2, s);
    ModelData m1 = random_model(rng, s, r, d);
    const VarSpace &sp = m1.S.space();
    Matrix U = rng.invertible(static_cast<std::size_t>(s));
    std::vector<TruncatedSeries> g;
    for (int a = 0; a < r; ++a)
      g.push_back(TruncatedSeries::variable(sp, sp.zeta(a), d) * GR(2) +
                  TruncatedSeries::variable(sp, sp.zeta(r - 1 - a), d).pow(2) * rng.gr(2, true));
    std::map<std::size_t, TruncatedSeries> subst;
    for (int a = 0; a < r; ++a)
      subst.emplace(sp.zeta(a), g[static_cast<std::size_t>(a)]);
    SeriesMatrix S2(m1.S.rows(), m1.S.cols(), sp, d);
    for (std::size_t i = 0; i < S2.rows(); ++i)
      for (std::size_t j = 0; j < S2.cols(); ++j)
        S2.set(i, j, compose(m1.S(i, j), subst));
    ModelData m2{U.transpose() * m1.H0 * U.conj(), U.transpose() * S2 * U};
    EquivalenceWitness w{U, g};
    CHECK(verify_equivalence_witness(m1, m2, w).holds);
    CHECK(verify_equivalence_witness(m2, m1, w.inverse()).holds);
  }
}
