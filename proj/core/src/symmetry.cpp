#include "crmw/symmetry.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <algorithm>
#include <climits>

namespace crmw {

namespace {

TruncatedSeries zero_like(const TruncatedSeries &f) {
  return TruncatedSeries(f.space(), f.order(), f.grading());
}

void trim(WPoly &p) {
  while (p.c.size() > 1 && p.c.back().is_zero())
    p.c.pop_back();
}

WPoly combine(const WPoly &a, const WPoly &b, bool subtract) {
  WPoly out;
  const std::size_t n = std::max(a.c.size(), b.c.size());
  for (std::size_t k = 0; k < n; ++k) {
    TruncatedSeries x = k < a.c.size() ? a.c[k] : zero_like(a.c[0]);
    TruncatedSeries y = k < b.c.size() ? b.c[k] : zero_like(b.c[0]);
    out.c.push_back(subtract ? x - y : x + y);
  }
  trim(out);
  return out;
}

Matrix row(const Vec &v) {
  Matrix m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    m(0, j) = v[j];
  return m;
}

Vec conj(const Vec &v) {
  Vec out;
  for (const auto &x : v)
    out.push_back(x.conj());
  return out;
}

HoloVectorField assemble(const VarSpace &sp, int order, const TruncatedSeries &xw,
                         const std::vector<TruncatedSeries> &xz) {
  HoloVectorField f = HoloVectorField::zero(sp, order);
  f.Xw = WPoly::series(xw);
  for (std::size_t j = 0; j < xz.size(); ++j)
    f.Xz[j] = WPoly::series(xz[j]);
  return f;
}

// 2(bi + sum_j k_j z_j) with the z factor raising the order.
TruncatedSeries w_coefficient(const VarSpace &sp, const GR &b, const std::vector<TruncatedSeries> &k,
                              int order) {
  TruncatedSeries xw = TruncatedSeries::constant(sp, order, b * GR(0, 1));
  for (int j = 0; j < sp.s(); ++j)
    xw += k[static_cast<std::size_t>(j)].times_var(sp.z(j));
  return xw * GR(2);
}

} // namespace

int WPoly::order() const {
  int o = INT_MAX;
  for (const auto &x : c)
    o = std::min(o, x.order());
  return o;
}

bool WPoly::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const TruncatedSeries &x) { return x.is_zero(); });
}

WPoly WPoly::differentiate(std::size_t var) const {
  WPoly out;
  for (const auto &x : c)
    out.c.push_back(x.differentiate(var));
  trim(out);
  return out;
}

WPoly WPoly::dw() const {
  WPoly out;
  for (std::size_t k = 1; k < c.size(); ++k)
    out.c.push_back(c[k] * GR(static_cast<long>(k)));
  if (out.c.empty())
    out.c.push_back(zero_like(c.at(0)));
  return out;
}

WPoly WPoly::operator-() const {
  WPoly out;
  for (const auto &x : c)
    out.c.push_back(-x);
  return out;
}

WPoly operator+(const WPoly &a, const WPoly &b) { return combine(a, b, false); }
WPoly operator-(const WPoly &a, const WPoly &b) { return combine(a, b, true); }

WPoly operator*(const WPoly &a, const WPoly &b) {
  WPoly out;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      TruncatedSeries p = a.c[i] * b.c[j];
      if (out.c.size() <= i + j)
        out.c.resize(i + j + 1, zero_like(p));
      out.c[i + j] = out.c[i + j] + p;
    }
  trim(out);
  return out;
}

WPoly operator*(const WPoly &a, const GR &k) {
  WPoly out;
  for (const auto &x : a.c)
    out.c.push_back(x * k);
  trim(out);
  return out;
}

HoloVectorField HoloVectorField::zero(const VarSpace &sp, int order) {
  HoloVectorField f;
  WPoly z = WPoly::series(TruncatedSeries(sp, order));
  f.Xw = z;
  f.Xz.assign(static_cast<std::size_t>(sp.s()), z);
  f.Xzeta.assign(static_cast<std::size_t>(sp.r()), z);
  return f;
}

void HoloVectorField::validate() const {
  const VarSpace &sp = space();
  if (Xz.size() != static_cast<std::size_t>(sp.s()) || Xzeta.size() != static_cast<std::size_t>(sp.r()))
    throw DimensionMismatch("vector field component counts do not match the space");
  auto check = [&](const WPoly &p) {
    for (const auto &x : p.c) {
      if (x.space() != sp)
        throw VarSpaceMismatch("vector field coefficients live in different spaces");
      for (const auto &[m, coef] : x.terms())
        for (std::size_t v = 0; v < sp.size(); ++v)
          if (m[v] != 0 && !sp.holomorphic(v))
            throw DomainError("vector field coefficient depends on " + sp.name(v));
    }
  };
  check(Xw);
  for (const auto &p : Xz)
    check(p);
  for (const auto &p : Xzeta)
    check(p);
}

bool HoloVectorField::is_zero() const {
  auto z = [](const WPoly &p) { return p.is_zero(); };
  return Xw.is_zero() && std::all_of(Xz.begin(), Xz.end(), z) &&
         std::all_of(Xzeta.begin(), Xzeta.end(), z);
}

int HoloVectorField::order() const {
  int o = Xw.order();
  for (const auto &p : Xz)
    o = std::min(o, p.order());
  for (const auto &p : Xzeta)
    o = std::min(o, p.order());
  return o;
}

WPoly HoloVectorField::apply(const WPoly &f) const {
  const VarSpace &sp = space();
  WPoly out = Xw * f.dw();
  for (int j = 0; j < sp.s(); ++j)
    out = out + Xz[static_cast<std::size_t>(j)] * f.differentiate(sp.z(j));
  for (int a = 0; a < sp.r(); ++a)
    out = out + Xzeta[static_cast<std::size_t>(a)] * f.differentiate(sp.zeta(a));
  return out;
}

HoloVectorField HoloVectorField::operator-() const { return *this * GR(-1); }

HoloVectorField operator+(const HoloVectorField &a, const HoloVectorField &b) {
  HoloVectorField out = a;
  out.Xw = a.Xw + b.Xw;
  for (std::size_t j = 0; j < a.Xz.size(); ++j)
    out.Xz[j] = a.Xz[j] + b.Xz.at(j);
  for (std::size_t k = 0; k < a.Xzeta.size(); ++k)
    out.Xzeta[k] = a.Xzeta[k] + b.Xzeta.at(k);
  return out;
}

HoloVectorField operator-(const HoloVectorField &a, const HoloVectorField &b) { return a + (-b); }

HoloVectorField operator*(const HoloVectorField &a, const GR &k) {
  HoloVectorField out = a;
  out.Xw = a.Xw * k;
  for (auto &p : out.Xz)
    p = p * k;
  for (auto &p : out.Xzeta)
    p = p * k;
  return out;
}

bool agree(const HoloVectorField &a, const HoloVectorField &b) { return (a - b).is_zero(); }

HoloVectorField bracket(const HoloVectorField &x, const HoloVectorField &y) {
  HoloVectorField out = x;
  out.Xw = x.apply(y.Xw) - y.apply(x.Xw);
  for (std::size_t j = 0; j < x.Xz.size(); ++j)
    out.Xz[j] = x.apply(y.Xz[j]) - y.apply(x.Xz[j]);
  for (std::size_t k = 0; k < x.Xzeta.size(); ++k)
    out.Xzeta[k] = x.apply(y.Xzeta[k]) - y.apply(x.Xzeta[k]);
  return out;
}

HoloVectorField transversal_symmetry(const DefiningEquation &eq, const Vec &a, const GR &b) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  const int d = eq.order();
  const auto s = static_cast<std::size_t>(eq.s());
  if (a.size() != s)
    throw DimensionMismatch("a must have length s");
  if (sgn(b.im()) != 0)
    throw DomainError("b must be real");
  Matrix aT = row(a), abT = row(conj(a));
  SeriesMatrix hz = eq.H.without(VarKind::ZetaBar);
  SeriesMatrix hzb = eq.H.without(VarKind::Zeta).conjugate();
  SeriesMatrix sz = eq.S.without(VarKind::ZetaBar);
  SeriesMatrix szb = eq.S.without(VarKind::Zeta).conjugate();
  SeriesMatrix R = SeriesMatrix::from_constant(aT * eq.H.constant_part() + abT * eq.S.constant_part(),
                                               sp, d) -
                   abT * sz;
  SeriesMatrix xz = R * inverse(hz);
  SeriesMatrix k = abT * hzb + xz * szb;
  std::vector<TruncatedSeries> kz, xzs;
  for (std::size_t j = 0; j < s; ++j) {
    kz.push_back(k(0, j));
    xzs.push_back(xz(0, j));
  }
  return assemble(sp, d, w_coefficient(sp, b, kz, d + 1), xzs);
}

HoloVectorField transversal_symmetry(const ModelData &data, const Vec &a, const GR &b) {
  data.validate();
  const VarSpace &sp = data.S.space();
  const int d = data.order();
  const auto s = static_cast<std::size_t>(data.s());
  if (a.size() != s)
    throw DimensionMismatch("a must have length s");
  if (sgn(b.im()) != 0)
    throw DomainError("b must be real");
  Matrix k = row(conj(a)) * data.H0.transpose();
  SeriesMatrix xz = SeriesMatrix::from_constant(row(a), sp, d) - k * data.S;
  std::vector<TruncatedSeries> kz, xzs;
  for (std::size_t j = 0; j < s; ++j) {
    kz.push_back(TruncatedSeries::constant(sp, d, k(0, j)));
    xzs.push_back(xz(0, j));
  }
  return assemble(sp, d, w_coefficient(sp, b, kz, d + 1), xzs);
}

IsotropyData isotropy_data(const SymbolInput &input, const CspElement &x) {
  input.inv.validate();
  const int s = input.s();
  if (x.s != s)
    throw DimensionMismatch("isotropy element has the wrong size");
  if (x != CspElement::from_L(x.L))
    throw DomainError("isotropy element must only have an L block");
  ModifiedSymbol sym = input.to_symbol();
  if (!in_g00_prime(sym.inv, sym.Xi, x.L))
    throw DomainError("L is not in g'_00");
  CspElement y = (x + sigma(input.inv, x)) * GR(mpq_class(1, 2));
  std::vector<CspElement> e;
  std::vector<Vec> basis;
  for (std::size_t a = 0; a < input.S02.size(); ++a) {
    e.push_back(CspElement::from_L(input.Omega[a]) + CspElement::from_S02(input.S02[a]));
    basis.push_back(flatten(e.back().assemble()));
  }
  IsotropyData out{y.L, Matrix(e.size(), e.size())};
  for (std::size_t a = 0; a < e.size(); ++a) {
    auto coeffs = span_coefficients(basis, flatten(bracket(y, e[a]).assemble()));
    if (!coeffs)
      throw DomainError("bracket with e_" + std::to_string(a + 1) + " leaves span{e}");
    for (std::size_t b = 0; b < e.size(); ++b)
      out.c(a, b) = (*coeffs)[b];
  }
  return out;
}

HoloVectorField isotropy_symmetry(const ModelData &model, const SymbolInput &input,
                                  const CspElement &x) {
  if (model.s() != input.s() || model.r() != input.r())
    throw DimensionMismatch("model and symbol sizes differ");
  IsotropyData d = isotropy_data(input, x);
  const VarSpace &sp = model.S.space();
  const int order = model.order() + 2;
  HoloVectorField f = HoloVectorField::zero(sp, order);
  for (int j = 0; j < sp.s(); ++j) {
    TruncatedSeries v(sp, order);
    for (int k = 0; k < sp.s(); ++k)
      v += TruncatedSeries::variable(sp, sp.z(k), order) *
           d.Lz(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
    f.Xz[static_cast<std::size_t>(j)] = WPoly::series(v);
  }
  for (int b = 0; b < sp.r(); ++b) {
    TruncatedSeries v(sp, order);
    for (int a = 0; a < sp.r(); ++a)
      v += TruncatedSeries::variable(sp, sp.zeta(a), order) *
           d.c(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    f.Xzeta[static_cast<std::size_t>(b)] = WPoly::series(v);
  }
  return f;
}

HoloVectorField euler_symmetry(const VarSpace &sp, int order) {
  HoloVectorField f = HoloVectorField::zero(sp, order);
  f.Xw.c.push_back(TruncatedSeries::constant(sp, order, GR(2)));
  for (int j = 0; j < sp.s(); ++j)
    f.Xz[static_cast<std::size_t>(j)] = WPoly::series(TruncatedSeries::variable(sp, sp.z(j), order));
  return f;
}

TangencyReport verify_tangency(const DefiningEquation &eq, const HoloVectorField &x) {
  x.validate();
  const VarSpace &sp = eq.H.space();
  if (x.space() != sp)
    throw VarSpaceMismatch("vector field and equation spaces differ");
  const VarSpace spt = sp.with_t(true);
  TruncatedSeries P = defining_function(eq).lifted(spt);
  TruncatedSeries w = P + TruncatedSeries::variable(spt, spt.t(), P.order()) * GR(0, 1);
  auto at_w = [&](const WPoly &p) {
    TruncatedSeries acc = p.c[0].lifted(spt);
    TruncatedSeries wk = w;
    for (std::size_t k = 1; k < p.c.size(); ++k) {
      acc += p.c[k].lifted(spt) * wk;
      if (k + 1 < p.c.size())
        wk = wk * w;
    }
    return acc;
  };
  TruncatedSeries r0 = at_w(x.Xw) * GR(mpq_class(1, 2));
  for (int j = 0; j < sp.s(); ++j)
    r0 -= at_w(x.Xz[static_cast<std::size_t>(j)]) * P.differentiate(spt.z(j));
  for (int a = 0; a < sp.r(); ++a)
    r0 -= at_w(x.Xzeta[static_cast<std::size_t>(a)]) * P.differentiate(spt.zeta(a));
  TangencyReport rep;
  rep.residual = r0 + r0.conjugate();
  rep.checked_order = rep.residual.order();
  rep.holds = rep.residual.is_zero();
  if (auto first = rep.residual.first_term()) {
    rep.monomial = rep.residual.monomial_str(first->first);
    rep.coefficient = first->second;
    for (int j = 0; j < sp.s(); ++j) {
      rep.z_degree += first->first[spt.z(j)];
      rep.zbar_degree += first->first[spt.zbar(j)];
    }
  }
  return rep;
}

HeisenbergReport heisenberg_closure(const DefiningEquation &eq) {
  const auto s = static_cast<std::size_t>(eq.s());
  const Matrix H = eq.H.constant_part();
  std::vector<Vec> as;
  for (std::size_t j = 0; j < s; ++j) {
    Vec a(s);
    a[j] = GR(1);
    as.push_back(a);
    a[j] = GR(0, 1);
    as.push_back(a);
  }
  std::vector<HoloVectorField> fields;
  for (const auto &a : as)
    fields.push_back(transversal_symmetry(eq, a, GR(0)));
  HoloVectorField center = transversal_symmetry(eq, Vec(s), GR(1));
  HeisenbergReport rep;
  // Real rank of the values at the origin.
  std::vector<Vec> values;
  auto value = [&](const HoloVectorField &f) {
    Vec v;
    auto push = [&](const GR &x) {
      v.push_back(GR(x.re()));
      v.push_back(GR(x.im()));
    };
    push(f.Xw.c[0].constant_term());
    for (const auto &p : f.Xz)
      push(p.c[0].constant_term());
    return v;
  };
  for (const auto &f : fields)
    values.push_back(value(f));
  values.push_back(value(center));
  rep.dimension = static_cast<int>(rank(from_rows(values, 2 * (s + 1))));
  for (std::size_t p = 0; p < fields.size(); ++p) {
    if (!bracket(center, fields[p]).is_zero()) {
      rep.detail = "center does not commute with field " + std::to_string(p);
      return rep;
    }
    for (std::size_t q = p + 1; q < fields.size(); ++q) {
      Vec abar = conj(as[q]);
      GR form = (row(as[p]) * H * Matrix::column(abar))(0, 0);
      HoloVectorField expect = transversal_symmetry(eq, Vec(s), GR(form.im() * 2));
      if (!agree(bracket(fields[p], fields[q]), expect)) {
        rep.detail = "bracket of fields " + std::to_string(p) + " and " + std::to_string(q) +
                     " differs from 2 Im(a^T H a'bar) times the center";
        return rep;
      }
    }
  }
  rep.holds = rep.dimension == static_cast<int>(2 * s + 1);
  if (!rep.holds)
    rep.detail = "real span has dimension " + std::to_string(rep.dimension);
  return rep;
}

} // namespace crmw
