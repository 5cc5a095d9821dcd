#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>
#include <crmw/generators.hpp>
#include <crmw/model.hpp>

using namespace crmw;
using namespace testing_support;

namespace {

ModelData light_cone(int order) {
  VarSpace sp(1, 1);
  SeriesMatrix S(1, 1, sp, order);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), order));
  return {Matrix{{GR(1)}}, S};
}

// Complex Hessian d^2 P / dx_a dx̄_b over x = (z, zeta).
SeriesMatrix hessian(const TruncatedSeries &p) {
  const VarSpace &sp = p.space();
  const auto s = static_cast<std::size_t>(sp.s()), r = static_cast<std::size_t>(sp.r());
  std::vector<std::size_t> hol, anti;
  for (int j = 0; j < sp.s(); ++j) {
    hol.push_back(sp.z(j));
    anti.push_back(sp.zbar(j));
  }
  for (int a = 0; a < sp.r(); ++a) {
    hol.push_back(sp.zeta(a));
    anti.push_back(sp.zetabar(a));
  }
  std::vector<TruncatedSeries> e;
  for (std::size_t a = 0; a < s + r; ++a)
    for (std::size_t b = 0; b < s + r; ++b)
      e.push_back(p.differentiate(hol[a]).differentiate(anti[b]));
  return SeriesMatrix::from_entries(s + r, s + r, e);
}

} // namespace

TEST_CASE("light cone closed form is the geometric series") {
  const int d = 8;
  DefiningEquation eq = build_model(light_cone(d));
  VarSpace sp(1, 1);
  TruncatedSeries geo(sp, d), zgeo(sp, d);
  for (int k = 0; 2 * k <= d; ++k)
    geo.add_term(mono({0, 0, k, k}), GR(1));
  for (int k = 0; 2 * k + 1 <= d; ++k)
    zgeo.add_term(mono({0, 0, k + 1, k}), GR(1));
  CHECK(eq.H(0, 0) == geo);
  CHECK(eq.S(0, 0) == zgeo);
}

TEST_CASE("closed form satisfies the rank identities") {
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    RankReport rep = verify_rank_condition(build_model(light_cone(d)));
    CHECK(rep.holds);
    CHECK(rep.checked_order == d - 2);
  }
  Rng rng(2024);
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(3, s * (s + 1) / 2); ++r) {
      CAPTURE(s);
      CAPTURE(r);
      ModelData data = random_model(rng, s, r, 4);
      CHECK(verify_rank_condition(build_model(data)).holds);
    }
}

TEST_CASE("hand-broken equation fails at the constant term") {
  VarSpace sp(1, 1);
  SeriesMatrix H(1, 1, sp, 4), S(1, 1, sp, 4);
  H.set(0, 0, poly(sp, 4, {{{0, 0, 0, 0}, "1"}, {{0, 0, 1, 0}, "1"}, {{0, 0, 0, 1}, "1"}}));
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), 4));
  RankReport rep = verify_rank_condition({H, S});
  CHECK_FALSE(rep.holds);
  CHECK(rep.equation == 1);
  CHECK(rep.monomial == "1");
  CHECK(rep.lhs == GR(0));
  CHECK(rep.rhs == GR(2));
}

TEST_CASE("PDE oracle reproduces the closed form") {
  CHECK(pde_propagate_oracle(light_cone(7)).H == build_model(light_cone(7)).H);
  Rng rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    int s = static_cast<int>(rng.integer(1, 3));
    int r = static_cast<int>(rng.integer(1, std::min(3, s * (s + 1) / 2)));
    ModelData data = random_model(rng, s, r, 4);
    DefiningEquation a = pde_propagate_oracle(data), b = build_model(data);
    CHECK(a.H == b.H);
    CHECK(a.S == b.S);
  }
}

TEST_CASE("Levi form blocks agree with the complex Hessian and have rank s") {
  Rng rng(7);
  std::vector<ModelData> cases{light_cone(6), random_model(rng, 2, 2, 4), random_model(rng, 2, 1, 4)};
  for (const auto &data : cases) {
    DefiningEquation eq = build_model(data);
    LeviForm lf = levi_form_series(eq);
    CHECK(lf.matrix == hessian(defining_function(eq)));
    CHECK(lf.schur.is_zero());
  }
  // A Levi-nondegenerate perturbation has nonzero Schur complement.
  DefiningEquation eq = build_model(light_cone(4));
  VarSpace sp(1, 1);
  eq.H.set(0, 0, eq.H(0, 0) + poly(sp, 4, {{{0, 0, 1, 1}, "1"}}));
  CHECK_FALSE(levi_form_series(eq).schur.is_zero());
}

TEST_CASE("weighted extraction inverts the defining function") {
  Rng rng(31);
  ModelData data = random_model(rng, 2, 2, 4);
  DefiningEquation eq = build_model(data);
  VarSpace sp = eq.H.space();
  TruncatedSeries p = defining_function(eq);
  // Re-grade: keep zeta-degree <= 4 and change to the weighted grading.
  TruncatedSeries pw(sp, 2, Grading::Weighted);
  for (const auto &[m, c] : p.terms())
    pw.add_term(m, c);
  DefiningEquation back = extract_weighted_model({pw, TruncatedSeries(sp, 2, Grading::Weighted)}, 4);
  CHECK(back.H == eq.H);
  CHECK(back.S == eq.S);
  // A weight-3 term belongs to Q, a t-free weight-1 term is rejected.
  TruncatedSeries bad(sp, 2, Grading::Weighted);
  bad.add_term(mono({1, 0, 0, 0, 1, 0, 0, 0}), GR(1));
  CHECK_THROWS_AS(split_by_weight(bad), DomainError);
  TruncatedSeries nonreal = pw;
  nonreal.add_term(mono({0, 1, 0, 1, 1, 0, 0, 0}), GR(1));
  CHECK_THROWS_AS(extract_weighted_model({nonreal, TruncatedSeries(sp, 2, Grading::Weighted)}, 4),
                  DomainError);
}

TEST_CASE("linear change of z matches substitution in the defining function") {
  Rng rng(77);
  ModelData data = random_model(rng, 2, 2, 4);
  Matrix V = rng.invertible(2);
  ModelData moved = transform_linear(data, V);
  TruncatedSeries p = defining_function(build_model(data));
  TruncatedSeries pm = defining_function(build_model(moved));
  const VarSpace &sp = p.space();
  // P'(z') = P(V z') as functions.
  std::map<std::size_t, TruncatedSeries> sub;
  for (int j = 0; j < 2; ++j) {
    TruncatedSeries zj(sp, p.order()), zbj(sp, p.order());
    for (int k = 0; k < 2; ++k) {
      zj += TruncatedSeries::variable(sp, sp.z(k), p.order()) * V(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      zbj += TruncatedSeries::variable(sp, sp.zbar(k), p.order()) *
             V(static_cast<std::size_t>(j), static_cast<std::size_t>(k)).conj();
    }
    sub.emplace(sp.z(j), zj);
    sub.emplace(sp.zbar(j), zbj);
  }
  CHECK(compose(p, sub) == pm);
}

TEST_CASE("model validation") {
  ModelData bad = light_cone(3);
  bad.H0 = Matrix{{GR(0)}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  ModelData nonhol = light_cone(3);
  VarSpace sp(1, 1);
  nonhol.S.set(0, 0, TruncatedSeries::variable(sp, sp.zetabar(0), 3));
  CHECK_THROWS_AS(nonhol.validate(), DomainError);
}
