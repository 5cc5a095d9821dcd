#include "crmw/normalform.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <algorithm>
#include <functional>

namespace crmw {

namespace {

void require_holomorphic(const SeriesMatrix &m, const char *what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) - m(i, j).without(VarKind::ZetaBar)).is_zero() ||
          !(m(i, j) - m(i, j).without(VarKind::Z)).is_zero() ||
          !(m(i, j) - m(i, j).without(VarKind::ZBar)).is_zero())
        throw DomainError(std::string(what) + " must be holomorphic in zeta");
}

SeriesMatrix compose_entries(const SeriesMatrix &m, const std::map<std::size_t, TruncatedSeries> &subst) {
  std::vector<TruncatedSeries> e;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e.push_back(compose(m(i, j), subst));
  return SeriesMatrix::from_entries(m.rows(), m.cols(), e);
}

} // namespace

PluriharmonicResult normalize_pluriharmonic(const DefiningEquation &eq) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  const int d = eq.order();
  const auto s = static_cast<std::size_t>(eq.s());
  const Matrix H0 = eq.H.constant_part();
  const Matrix H0tinv = inverse(H0.transpose());
  SeriesMatrix hz = eq.H.without(VarKind::ZetaBar) - SeriesMatrix::from_constant(H0, sp, d);
  SeriesMatrix A = H0tinv * hz.transpose();
  SeriesMatrix V = inverse(SeriesMatrix::identity(s, sp, d) + A);
  SeriesMatrix Vb = V.conjugate();
  PluriharmonicResult out;
  out.equation.H = V.transpose() * eq.H * Vb;
  SeriesMatrix S1 = Vb.transpose() * eq.S * Vb;
  SeriesMatrix removed = S1.without(VarKind::Zeta);
  out.equation.S = S1 - removed;
  out.record = {A, removed};
  SeriesMatrix sz = out.equation.S.without(VarKind::ZetaBar);
  out.data = {H0, H0tinv * sz * inverse(H0)};
  out.data.validate();
  return out;
}

DefiningEquation forward_transform(const DefiningEquation &eq, const SeriesMatrix &A,
                                   const SeriesMatrix &R) {
  eq.validate();
  require_holomorphic(A, "A");
  if (!A.constant_part().is_zero())
    throw DomainError("A must vanish at 0");
  const SeriesMatrix Rb = R.conjugate();
  require_holomorphic(Rb, "conj(R)");
  if (!(R - R.transpose()).is_zero())
    throw DomainError("R must be symmetric");
  const VarSpace &sp = eq.H.space();
  SeriesMatrix W = SeriesMatrix::identity(eq.H.rows(), sp, eq.order()) + A;
  SeriesMatrix Wb = W.conjugate();
  DefiningEquation out{W.transpose() * eq.H * Wb, Wb.transpose() * eq.S * Wb + R};
  out.validate();
  return out;
}

DefiningEquation reconstruct_from_HS(const ModelData &data) {
  data.validate();
  const VarSpace &sp = data.S.space();
  const int d = data.order();
  const std::size_t s = data.H0.rows();
  const Matrix &H = data.H0;
  const Matrix Ht = H.transpose();
  const SeriesMatrix &S = data.S;
  const SeriesMatrix Sb = S.conjugate();
  const SeriesMatrix id = SeriesMatrix::identity(s, sp, d);
  const SeriesMatrix Hs = SeriesMatrix::from_constant(H, sp, d);
  const GR half(mpq_class(1, 2));
  SeriesMatrix lead = Ht * S * H;
  DefiningEquation eq;
  eq.H = Hs + (H * (inverse(id - Sb * Ht * S * H) - id) + (inverse(id - H * Sb * Ht * S) - id) * H) * half;
  eq.S = lead + (Ht * inverse(id - S * H * Sb * Ht) * S * H - lead);
  return eq;
}

std::vector<std::pair<int, int>> symmetric_positions(int s) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < s; ++j)
    for (int k = j; k < s; ++k)
      out.push_back({j, k});
  return out;
}

PivotTuple pivot_select(const std::vector<Matrix> &s02) {
  if (s02.empty())
    throw DomainError("pivot selection needs at least one S02 matrix");
  const int s = static_cast<int>(s02[0].rows());
  const auto r = s02.size();
  const auto pos = symmetric_positions(s);
  std::vector<std::size_t> idx(r);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
    if (k == r) {
      Matrix m(r, r);
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t a = 0; a < r; ++a)
          m(b, a) = s02[a](static_cast<std::size_t>(pos[idx[b]].first),
                           static_cast<std::size_t>(pos[idx[b]].second));
      return !determinant(m).is_zero();
    }
    for (std::size_t p = start; p < pos.size(); ++p) {
      idx[k] = p;
      if (rec(k + 1, p + 1))
        return true;
    }
    return false;
  };
  if (!rec(0, 0))
    throw DomainError("S02 matrices are linearly dependent; no pivot tuple exists");
  PivotTuple t;
  for (auto p : idx)
    t.positions.push_back(pos[p]);
  return t;
}

PivotTuple pivot_select(const BigradedSymbol &base) {
  if (!base.two_nondegenerate)
    throw DomainError("pivot selection needs a 2-nondegenerate symbol");
  return pivot_select(base.s02());
}

ModelData normal_form_reduce(const ModelData &data) {
  data.validate(true);
  const VarSpace &sp = data.S.space();
  std::vector<Matrix> s02;
  for (int a = 0; a < data.r(); ++a)
    s02.push_back(data.S.differentiate(sp.zeta(a)).constant_part());
  PivotTuple piv = pivot_select(s02);
  std::vector<TruncatedSeries> F;
  for (auto [j, k] : piv.positions)
    F.push_back(data.S(static_cast<std::size_t>(j), static_cast<std::size_t>(k)));
  std::vector<TruncatedSeries> G = invert_map(F);
  std::map<std::size_t, TruncatedSeries> subst;
  for (int a = 0; a < data.r(); ++a)
    subst.emplace(sp.zeta(a), G[static_cast<std::size_t>(a)]);
  ModelData out{data.H0, compose_entries(data.S, subst)};
  out.validate(true);
  return out;
}

void EquivalenceWitness::validate(int s, int r) const {
  if (U.rows() != static_cast<std::size_t>(s) || U.cols() != static_cast<std::size_t>(s))
    throw DimensionMismatch("U must be s x s");
  if (determinant(U).is_zero())
    throw DomainError("U is singular");
  if (g.size() != static_cast<std::size_t>(r))
    throw DimensionMismatch("g must have r components");
  Matrix jac(g.size(), g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    const VarSpace &sp = g[a].space();
    if (sp.r() != r)
      throw VarSpaceMismatch("g lives in the wrong space");
    if (!g[a].constant_term().is_zero())
      throw DomainError("g must fix 0");
    for (const auto &[m, c] : g[a].terms())
      for (std::size_t v = 0; v < sp.size(); ++v)
        if (m[v] != 0 && sp.kind(v) != VarKind::Zeta)
          throw DomainError("g may depend on zeta only");
    for (std::size_t b = 0; b < g.size(); ++b)
      jac(a, b) = g[a].differentiate(sp.zeta(static_cast<int>(b))).constant_term();
  }
  if (determinant(jac).is_zero())
    throw DomainError("g has a singular linear part");
}

EquivalenceWitness EquivalenceWitness::inverse() const {
  return {crmw::inverse(U), invert_map(g)};
}

WitnessReport verify_equivalence_witness(const ModelData &m1, const ModelData &m2,
                                         const EquivalenceWitness &w) {
  m1.validate();
  m2.validate();
  if (m1.s() != m2.s() || m1.r() != m2.r())
    throw DimensionMismatch("models have different sizes");
  w.validate(m1.s(), m1.r());
  const VarSpace &sp = m1.S.space();
  WitnessReport rep;
  const Matrix Ut = w.U.transpose();
  rep.h_matches = m2.H0 == Ut * m1.H0 * w.U.conj();
  std::map<std::size_t, TruncatedSeries> subst;
  for (int a = 0; a < m1.r(); ++a)
    subst.emplace(sp.zeta(a), w.g[static_cast<std::size_t>(a)]);
  SeriesMatrix rhs = Ut * compose_entries(m1.S, subst) * w.U;
  SeriesMatrix diff = m2.S - rhs;
  rep.s_matches = true;
  for (std::size_t i = 0; i < diff.rows() && rep.s_matches; ++i)
    for (std::size_t j = 0; j < diff.cols() && rep.s_matches; ++j)
      if (auto first = diff(i, j).first_term()) {
        rep.s_matches = false;
        rep.row = static_cast<int>(i);
        rep.col = static_cast<int>(j);
        rep.monomial = diff(i, j).monomial_str(first->first);
        rep.lhs = m2.S(i, j).coeff(first->first);
        rep.rhs = rhs(i, j).coeff(first->first);
      }
  rep.holds = rep.h_matches && rep.s_matches;
  return rep;
}

} // namespace crmw
