#include "crmw/model.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <functional>

namespace crmw {

namespace {

bool depends_only_on(const TruncatedSeries &f, std::initializer_list<VarKind> kinds) {
  const VarSpace &sp = f.space();
  for (const auto &[m, c] : f.terms())
    for (std::size_t k = 0; k < sp.size(); ++k) {
      if (!m[k])
        continue;
      bool ok = false;
      for (auto kind : kinds)
        ok = ok || sp.kind(k) == kind;
      if (!ok)
        return false;
    }
  return true;
}

bool symmetric(const SeriesMatrix &m) { return m == m.transpose(); }
bool hermitian(const SeriesMatrix &m) { return m == m.conjugate().transpose(); }

// All multi-indices of length r with entries summing to total.
void multi_indices(int r, int total, std::vector<std::vector<int>> &out) {
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
  };
  if (r > 0)
    rec(0, total);
}

} // namespace

void ModelData::validate(bool nondegenerate) const {
  if (!H0.square() || !H0.is_hermitian())
    throw DomainError("H0 must be a Hermitian matrix");
  if (determinant(H0).is_zero())
    throw DomainError("H0 is degenerate");
  if (S.rows() != H0.rows() || S.cols() != H0.rows())
    throw DimensionMismatch("S must be s x s");
  if (S.space().s() != s() || S.space().has_t() || S.grading() != Grading::Total)
    throw VarSpaceMismatch("S must live in the totally graded (s, r) space");
  if (!symmetric(S))
    throw DomainError("S must be symmetric");
  if (!S.constant_part().is_zero())
    throw DomainError("S(0) must vanish");
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = 0; j < S.cols(); ++j)
      if (!depends_only_on(S(i, j), {VarKind::Zeta}))
        throw DomainError("S may depend on the holomorphic zeta variables only");
  if (nondegenerate) {
    std::vector<Vec> lin;
    for (int a = 0; a < r(); ++a)
      lin.push_back(flatten(S.differentiate(S.space().zeta(a)).constant_part()));
    if (rank(from_rows(lin, H0.rows() * H0.rows())) != static_cast<std::size_t>(r()))
      throw DomainError("first derivatives of S at 0 are linearly dependent");
  }
}

void DefiningEquation::validate() const {
  if (H.rows() != H.cols() || S.rows() != H.rows() || S.cols() != H.rows())
    throw DimensionMismatch("H and S must be s x s");
  if (H.space() != S.space() || H.order() != S.order() || H.grading() != Grading::Total ||
      S.grading() != Grading::Total)
    throw VarSpaceMismatch("H and S must share space, order and grading");
  if (H.space().s() != s() || H.space().has_t())
    throw VarSpaceMismatch("equation space must have s = size of H and no t");
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.cols(); ++j)
      if (!depends_only_on(H(i, j), {VarKind::Zeta, VarKind::ZetaBar}) ||
          !depends_only_on(S(i, j), {VarKind::Zeta, VarKind::ZetaBar}))
        throw DomainError("H and S may depend on zeta and zetabar only");
  if (!hermitian(H))
    throw DomainError("H must be Hermitian");
  if (!symmetric(S))
    throw DomainError("S must be symmetric");
  if (determinant(H.constant_part()).is_zero())
    throw DomainError("H(0,0) is degenerate");
}

DefiningEquation build_model(const ModelData &data) {
  data.validate();
  const SeriesMatrix &S = data.S;
  SeriesMatrix Sb = S.conjugate();
  const Matrix &H = data.H0;
  Matrix Ht = H.transpose();
  GR half(mpq_class(1, 2));
  SeriesMatrix n1 = Sb * Ht * S * H;
  SeriesMatrix n2 = H * Sb * Ht * S;
  SeriesMatrix n3 = S * H * Sb * Ht;
  DefiningEquation eq;
  eq.H = (H * neumann_inverse(n1) + neumann_inverse(n2) * H) * half;
  eq.S = Ht * neumann_inverse(n3) * S * H;
  return eq;
}

RankReport verify_rank_condition(const DefiningEquation &eq) {
  eq.validate();
  RankReport rep;
  if (eq.order() < 2)
    throw DomainError("rank condition needs order >= 2");
  rep.checked_order = eq.order() - 2;
  const VarSpace &sp = eq.H.space();
  SeriesMatrix Hinv = inverse(eq.H);
  SeriesMatrix HinvT = Hinv.transpose();
  SeriesMatrix HtInv = inverse(eq.H.transpose());
  const int r = eq.r();
  std::vector<SeriesMatrix> Hz, Hzb, Sz, Szb_conj;
  for (int a = 0; a < r; ++a) {
    Hz.push_back(eq.H.differentiate(sp.zeta(a)));
    Hzb.push_back(eq.H.differentiate(sp.zetabar(a)));
    Sz.push_back(eq.S.differentiate(sp.zeta(a)));
  }
  for (int a = 0; a < r; ++a)
    Szb_conj.push_back(Sz[static_cast<std::size_t>(a)].conjugate());
  auto check = [&](int which, int a, int b, const SeriesMatrix &lhs, const SeriesMatrix &rhs) {
    SeriesMatrix diff = lhs - rhs;
    for (std::size_t i = 0; i < diff.rows(); ++i)
      for (std::size_t j = 0; j < diff.cols(); ++j) {
        auto first = diff(i, j).first_term();
        if (!first)
          continue;
        rep.holds = false;
        rep.equation = which;
        rep.alpha = a;
        rep.beta = b;
        rep.row = static_cast<int>(i);
        rep.col = static_cast<int>(j);
        rep.monomial = diff(i, j).monomial_str(first->first);
        rep.lhs = lhs(i, j).coeff(first->first);
        rep.rhs = rhs(i, j).coeff(first->first);
        return false;
      }
    return true;
  };
  for (int which = 1; which <= 2; ++which)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        SeriesMatrix lhs, rhs;
        if (which == 1) {
          lhs = Hz[ua].differentiate(sp.zetabar(b));
          rhs = Hz[ua] * Hinv * Hzb[ub] + Szb_conj[ub] * HinvT * Sz[ua];
        } else {
          lhs = Sz[ua].differentiate(sp.zetabar(b));
          rhs = Hzb[ub].transpose() * HtInv * Sz[ua] + Sz[ua] * Hinv * Hzb[ub];
        }
        if (!check(which, a, b, lhs, rhs))
          return rep;
      }
  return rep;
}

TruncatedSeries defining_function(const DefiningEquation &eq) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  const int s = eq.s();
  const int d = eq.order();
  SeriesMatrix Sc = eq.S.conjugate();
  TruncatedSeries p(sp, d + 2);
  GR half(mpq_class(1, 2));
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k) {
      const auto uj = static_cast<std::size_t>(j), uk = static_cast<std::size_t>(k);
      p += eq.H(uj, uk).times_var(sp.z(j)).times_var(sp.zbar(k));
      p += eq.S(uj, uk).times_var(sp.zbar(j)).times_var(sp.zbar(k)) * half;
      p += Sc(uj, uk).times_var(sp.z(j)).times_var(sp.z(k)) * half;
    }
  return p;
}

LeviForm levi_form_series(const DefiningEquation &eq) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  const auto s = static_cast<std::size_t>(eq.s()), r = static_cast<std::size_t>(eq.r());
  const int d = eq.order();
  if (d < 2)
    throw DomainError("Levi form needs order >= 2");
  SeriesMatrix Sc = eq.S.conjugate();
  GR half(mpq_class(1, 2));
  // z^T M w for vectors of variables z, w given as index lists.
  auto sandwich = [&](const SeriesMatrix &M, bool left_bar, bool right_bar) {
    TruncatedSeries acc(sp, M.order() + 2);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) {
        const int ij = static_cast<int>(j), ik = static_cast<int>(k);
        acc += M(j, k)
                   .times_var(left_bar ? sp.zbar(ij) : sp.z(ij))
                   .times_var(right_bar ? sp.zbar(ik) : sp.z(ik));
      }
    return acc;
  };
  SeriesMatrix levi(s + r, s + r, sp, d);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < s; ++k)
      levi.set(j, k, eq.H(j, k));
  for (std::size_t b = 0; b < r; ++b) {
    const int ib = static_cast<int>(b);
    SeriesMatrix Hzb = eq.H.differentiate(sp.zetabar(ib));
    SeriesMatrix Sczb = Sc.differentiate(sp.zetabar(ib));
    for (std::size_t j = 0; j < s; ++j) {
      TruncatedSeries acc(sp, d);
      for (std::size_t k = 0; k < s; ++k) {
        acc += Hzb(j, k).times_var(sp.zbar(static_cast<int>(k)));
        acc += Sczb(j, k).times_var(sp.z(static_cast<int>(k)));
      }
      levi.set(j, s + b, acc);
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    const int ia = static_cast<int>(a);
    SeriesMatrix Hz = eq.H.differentiate(sp.zeta(ia));
    SeriesMatrix Sz = eq.S.differentiate(sp.zeta(ia));
    for (std::size_t k = 0; k < s; ++k) {
      TruncatedSeries acc(sp, d);
      for (std::size_t j = 0; j < s; ++j) {
        acc += Hz(j, k).times_var(sp.z(static_cast<int>(j)));
        acc += Sz(j, k).times_var(sp.zbar(static_cast<int>(j)));
      }
      levi.set(s + a, k, acc);
    }
    for (std::size_t b = 0; b < r; ++b) {
      const int ib = static_cast<int>(b);
      TruncatedSeries acc = sandwich(Hz.differentiate(sp.zetabar(ib)), false, true);
      acc += sandwich(Sz.differentiate(sp.zetabar(ib)), true, true) * half;
      acc += sandwich(Sc.differentiate(sp.zeta(ia)).differentiate(sp.zetabar(ib)), false, false) * half;
      levi.set(s + a, s + b, acc);
    }
  }
  SeriesMatrix A = levi.block(0, 0, s, s), B = levi.block(0, s, s, r);
  SeriesMatrix C = levi.block(s, 0, r, s), D = levi.block(s, s, r, r);
  return {levi, D - C * inverse(A) * B};
}

DefiningSeries split_by_weight(const TruncatedSeries &f) {
  if (f.grading() != Grading::Weighted)
    throw DomainError("split_by_weight needs a weighted series");
  DefiningSeries out{TruncatedSeries(f.space(), f.order(), Grading::Weighted),
                     TruncatedSeries(f.space(), f.order(), Grading::Weighted)};
  for (const auto &[m, c] : f.terms()) {
    int w = f.degree(m);
    if (w < 2)
      throw DomainError("defining series has a term of weight below 2: " + f.monomial_str(m));
    (w == 2 ? out.P : out.Q).add_term(m, c);
  }
  return out;
}

DefiningEquation extract_weighted_model(const DefiningSeries &full, int order) {
  const TruncatedSeries &P = full.P;
  if (P.grading() != Grading::Weighted)
    throw DomainError("P must use the weighted grading");
  if (P.order() < 2)
    throw DomainError("P must be known through weight 2");
  if (full.Q.space() != P.space() || full.Q.grading() != Grading::Weighted)
    throw VarSpaceMismatch("P and Q must share a weighted space");
  for (const auto &[m, c] : full.Q.terms())
    if (full.Q.degree(m) <= 2)
      throw DomainError("Q has a term of weight <= 2: " + full.Q.monomial_str(m));
  if (P.conjugate() != P)
    throw DomainError("P is not real");
  const VarSpace &sp0 = P.space();
  const VarSpace sp(sp0.s(), sp0.r(), false);
  const auto s = static_cast<std::size_t>(sp.s());
  SeriesMatrix H(s, s, sp, order), S(s, s, sp, order);
  std::vector<std::vector<TruncatedSeries>> h(s, std::vector<TruncatedSeries>(s, TruncatedSeries(sp, order)));
  auto sv = h;
  for (const auto &[m, c] : P.terms()) {
    if (P.degree(m) != 2)
      throw DomainError("P has a term outside weight 2: " + P.monomial_str(m));
    if (sp0.has_t() && m[sp0.t()])
      throw DomainError("P depends on t: " + P.monomial_str(m));
    std::vector<std::size_t> zs, zbs;
    Monomial rest = m;
    for (int j = 0; j < sp.s(); ++j) {
      for (int e = 0; e < m[sp.z(j)]; ++e)
        zs.push_back(static_cast<std::size_t>(j));
      for (int e = 0; e < m[sp.zbar(j)]; ++e)
        zbs.push_back(static_cast<std::size_t>(j));
      rest[sp.z(j)] = 0;
      rest[sp.zbar(j)] = 0;
    }
    int zdeg = 0;
    for (std::size_t k = 0; k < sp.size(); ++k)
      if (sp.kind(k) == VarKind::Zeta || sp.kind(k) == VarKind::ZetaBar)
        zdeg += rest[k];
    if (zdeg > order)
      continue;
    if (zs.size() == 1 && zbs.size() == 1) {
      h[zs[0]][zbs[0]].add_term(rest, c);
    } else if (zbs.size() == 2) {
      // Re(z̄^T S z̄) contributes S_jk to z̄_j z̄_k (j != k) and S_jj / 2 to z̄_j^2.
      std::size_t j = zbs[0], k = zbs[1];
      if (j == k) {
        sv[j][j].add_term(rest, c * GR(2));
      } else {
        sv[j][k].add_term(rest, c);
        sv[k][j].add_term(rest, c);
      }
    } else if (zs.size() != 2) {
      throw DomainError("P has a term outside the model shape: " + P.monomial_str(m));
    }
  }
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < s; ++k) {
      H.set(j, k, h[j][k]);
      S.set(j, k, sv[j][k]);
    }
  DefiningEquation eq{H, S};
  eq.validate();
  return eq;
}

DefiningEquation pde_propagate_oracle(const ModelData &data) {
  data.validate();
  const int d = data.order();
  const VarSpace &sp = data.S.space();
  const int r = sp.r();
  const auto s = static_cast<std::size_t>(data.s());
  const Matrix &H0 = data.H0;
  SeriesMatrix H = SeriesMatrix::from_constant(H0, sp, d);
  SeriesMatrix S = H0.transpose() * data.S * H0;
  if (r == 0)
    return {H, S};
  for (int D = 2; D <= d; ++D) {
    // Right-hand sides need H and S through degree D - 1 only.
    SeriesMatrix h = H.truncated(D - 1), sm = S.truncated(D - 1);
    SeriesMatrix hinv = inverse(h);
    SeriesMatrix hinvT = hinv.transpose();
    SeriesMatrix htinv = inverse(h.transpose());
    std::vector<SeriesMatrix> hz, hzb, sz, szc;
    for (int a = 0; a < r; ++a) {
      hz.push_back(h.differentiate(sp.zeta(a)));
      hzb.push_back(h.differentiate(sp.zetabar(a)));
      sz.push_back(sm.differentiate(sp.zeta(a)));
    }
    for (int a = 0; a < r; ++a)
      szc.push_back(sz[static_cast<std::size_t>(a)].conjugate());
    std::vector<std::vector<SeriesMatrix>> rh(static_cast<std::size_t>(r)), rs(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        rh[ua].push_back(hz[ua] * hinv * hzb[ub] + szc[ub] * hinvT * sz[ua]);
        rs[ua].push_back(hzb[ub].transpose() * htinv * sz[ua] + sz[ua] * hinv * hzb[ub]);
      }
    // Sweep bidegrees (i, j), i + j = D, in increasing i.
    for (int i = 1; i < D; ++i) {
      const int j = D - i;
      std::vector<std::vector<int>> ms, ns;
      multi_indices(r, i, ms);
      multi_indices(r, j, ns);
      for (const auto &m : ms)
        for (const auto &n : ns) {
          Monomial target{};
          for (int a = 0; a < r; ++a) {
            target[sp.zeta(a)] = static_cast<std::uint8_t>(m[static_cast<std::size_t>(a)]);
            target[sp.zetabar(a)] = static_cast<std::uint8_t>(n[static_cast<std::size_t>(a)]);
          }
          for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = 0; q < s; ++q) {
              std::optional<GR> hv, sv;
              for (int a = 0; a < r; ++a) {
                if (!m[static_cast<std::size_t>(a)])
                  continue;
                for (int b = 0; b < r; ++b) {
                  if (!n[static_cast<std::size_t>(b)])
                    continue;
                  Monomial src = target;
                  src[sp.zeta(a)] -= 1;
                  src[sp.zetabar(b)] -= 1;
                  GR scale(mpq_class(1, m[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)]));
                  const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
                  GR vh = rh[ua][ub](p, q).coeff(src) * scale;
                  GR vs = rs[ua][ub](p, q).coeff(src) * scale;
                  if ((hv && *hv != vh) || (sv && *sv != vs))
                    throw InternalError("second-order system is inconsistent");
                  hv = vh;
                  sv = vs;
                }
              }
              TruncatedSeries eh = H(p, q), es = S(p, q);
              eh.set_term(target, *hv);
              es.set_term(target, *sv);
              H.set(p, q, eh);
              S.set(p, q, es);
            }
        }
    }
  }
  return {H, S};
}

ModelData transform_linear(const ModelData &data, const Matrix &V) {
  Matrix Vinv = inverse(V);
  return {V.transpose() * data.H0 * V.conj(), Vinv * data.S * Vinv.transpose()};
}

} // namespace crmw
