#include "crmw/lie.hpp"

#include "crmw/errors.hpp"

namespace crmw {

namespace {

Vec conj(const Vec &v) {
  Vec out(v);
  for (auto &x : out)
    x = x.conj();
  return out;
}

Vec times(const Matrix &m, const Vec &v) { return flatten(m * Matrix::column(v)); }

Vec scaled(Vec v, const GR &x) {
  for (auto &e : v)
    e *= x;
  return v;
}

} // namespace

CspElement CspElement::zero(int s) {
  const auto n = static_cast<std::size_t>(s);
  CspElement e;
  e.s = s;
  e.L = Matrix(n, n);
  e.S02 = Matrix(n, n);
  e.S0m2 = Matrix(n, n);
  e.v1 = Vec(n);
  e.v2 = Vec(n);
  return e;
}

CspElement CspElement::from_L(const Matrix &L) {
  CspElement e = zero(static_cast<int>(L.rows()));
  e.L = L;
  return e;
}

CspElement CspElement::from_S02(const Matrix &S) {
  CspElement e = zero(static_cast<int>(S.rows()));
  e.S02 = S;
  return e;
}

CspElement CspElement::from_S0m2(const Matrix &S) {
  CspElement e = zero(static_cast<int>(S.rows()));
  e.S0m2 = S;
  return e;
}

Matrix CspElement::assemble() const {
  const auto n = static_cast<std::size_t>(s);
  if (!S02.is_symmetric() || !S0m2.is_symmetric())
    throw DomainError("csp element with non-symmetric S block");
  Matrix m(2 * n + 2, 2 * n + 2);
  const std::size_t last = 2 * n + 1;
  m(0, 0) = c;
  for (std::size_t j = 0; j < n; ++j) {
    m(1 + j, 0) = v1[j];
    m(1 + n + j, 0) = v2[j];
    m(last, 1 + j) = v2[j];
    m(last, 1 + n + j) = -v1[j];
  }
  m.set_block(1, 1, L);
  m.set_block(1, 1 + n, S02);
  m.set_block(1 + n, 1, S0m2);
  m.set_block(1 + n, 1 + n, -L.transpose());
  m(last, 0) = u * GR::i();
  m(last, last) = -c;
  return m;
}

CspElement CspElement::disassemble(const Matrix &m) {
  if (!m.square() || m.rows() < 2 || m.rows() % 2 != 0)
    throw DimensionMismatch("not a csp-shaped matrix");
  const std::size_t n = (m.rows() - 2) / 2, last = 2 * n + 1;
  CspElement e = zero(static_cast<int>(n));
  e.c = m(0, 0);
  for (std::size_t j = 0; j < n; ++j) {
    e.v1[j] = m(1 + j, 0);
    e.v2[j] = m(1 + n + j, 0);
  }
  e.L = m.block(1, 1, n, n);
  e.S02 = m.block(1, 1 + n, n, n);
  e.S0m2 = m.block(1 + n, 1, n, n);
  e.u = m(last, 0) / GR::i();
  if (e.assemble() != m)
    throw InternalError("matrix is not in csp block form");
  return e;
}

CspElement &CspElement::operator+=(const CspElement &o) {
  c += o.c;
  L += o.L;
  S02 += o.S02;
  S0m2 += o.S0m2;
  for (std::size_t j = 0; j < v1.size(); ++j) {
    v1[j] += o.v1[j];
    v2[j] += o.v2[j];
  }
  u += o.u;
  return *this;
}

CspElement &CspElement::operator-=(const CspElement &o) { return *this += o * GR(-1); }

CspElement &CspElement::operator*=(const GR &x) {
  c *= x;
  L *= x;
  S02 *= x;
  S0m2 *= x;
  for (std::size_t j = 0; j < v1.size(); ++j) {
    v1[j] *= x;
    v2[j] *= x;
  }
  u *= x;
  return *this;
}

bool operator==(const CspElement &a, const CspElement &b) {
  return a.s == b.s && a.c == b.c && a.L == b.L && a.S02 == b.S02 && a.S0m2 == b.S0m2 &&
         a.v1 == b.v1 && a.v2 == b.v2 && a.u == b.u;
}

CspElement bracket(const CspElement &x, const CspElement &y) {
  if (x.s != y.s)
    throw DimensionMismatch("bracket of elements of different size");
  return CspElement::disassemble(commutator(x.assemble(), y.assemble()));
}

void Involution::validate() const {
  if (!H.square() || !H.is_hermitian())
    throw DomainError("involution matrix is not Hermitian");
  if (determinant(H).is_zero())
    throw DomainError("involution matrix is degenerate");
  if (eih.norm() != 1)
    throw DomainError("involution phase is not unimodular");
}

bool equivalent(const Involution &a, const Involution &b) {
  return (a.H == b.H && a.eih == b.eih) || (a.H == -b.H && a.eih == -b.eih);
}

CspElement sigma(const Involution &inv, const CspElement &x) {
  const Matrix &H = inv.H;
  if (H.rows() != static_cast<std::size_t>(x.s))
    throw DimensionMismatch("involution size does not match element");
  const GR &e = inv.eih;
  Matrix Ht = H.transpose();
  Matrix Htinv = inverse(Ht);
  Matrix Hinv = inverse(H);
  CspElement y = CspElement::zero(x.s);
  y.c = x.c.conj();
  y.v1 = scaled(times(Htinv, conj(x.v2)), e);
  y.v2 = scaled(times(H, conj(x.v1)), e);
  y.L = -(Htinv * x.L.adjoint() * Ht);
  y.S02 = Htinv * x.S0m2.conj() * Hinv;
  y.S0m2 = H * x.S02.conj() * Ht;
  y.u = e * e * x.u.conj();
  return y;
}

CspElement project(const CspElement &x, Bigrade g) {
  CspElement y = CspElement::zero(x.s);
  switch (g) {
  case Bigrade::M2_0:
    y.u = x.u;
    break;
  case Bigrade::M1_P1:
    y.v1 = x.v1;
    break;
  case Bigrade::M1_M1:
    y.v2 = x.v2;
    break;
  case Bigrade::Z_Z:
    y.c = x.c;
    y.L = x.L;
    break;
  case Bigrade::Z_P2:
    y.S02 = x.S02;
    break;
  case Bigrade::Z_M2:
    y.S0m2 = x.S0m2;
    break;
  }
  return y;
}

Matrix GroupElement00::matrix() const {
  const std::size_t n = B.rows();
  Matrix m(2 * n + 2, 2 * n + 2);
  m(0, 0) = b;
  m.set_block(1, 1, B);
  m.set_block(1 + n, 1 + n, crmw::inverse(B.transpose()));
  m(2 * n + 1, 2 * n + 1) = b.inverse();
  return m;
}

GroupElement00 GroupElement00::inverse() const { return {b.inverse(), crmw::inverse(B)}; }

CspElement adjoint_inverse(const GroupElement00 &g, const CspElement &x) {
  Matrix a = g.matrix();
  return CspElement::disassemble(crmw::inverse(a) * x.assemble() * a);
}

Involution act(const GroupElement00 &g, const Involution &inv) {
  return {g.B.transpose() * inv.H * g.B.conj(), g.b / g.b.conj() * inv.eih};
}

Matrix act_xi(const GroupElement00 &g, const Matrix &xi) {
  return (g.b / g.b.conj()) * (inverse(g.B) * xi * g.B.conj());
}

Matrix act_omega(const GroupElement00 &g, const Matrix &omega) { return inverse(g.B) * omega * g.B; }

Matrix bracket_02(const Matrix &L, const Matrix &S) { return L * S + S * L.transpose(); }

Matrix bracket_0m2(const Matrix &L, const Matrix &S) { return -(L.transpose() * S + S * L); }

SeriesMatrix assemble_series(const std::vector<TruncatedSeries> &coeffs,
                             const std::vector<CspElement> &basis) {
  if (coeffs.size() != basis.size() || coeffs.empty())
    throw DimensionMismatch("coefficient and basis counts differ");
  const TruncatedSeries &c0 = coeffs[0];
  Matrix m0 = basis[0].assemble();
  SeriesMatrix out(m0.rows(), m0.cols(), c0.space(), c0.order(), c0.grading());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Matrix m = basis[k].assemble();
    SeriesMatrix scaled(m.rows(), m.cols(), c0.space(), coeffs[k].order(), c0.grading());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero())
          scaled.set(i, j, coeffs[k] * m(i, j));
    out += scaled;
  }
  return out;
}

SeriesMatrix mat_exp(const SeriesMatrix &x) {
  if (!x.constant_part().is_zero())
    throw DomainError("exp needs a matrix with zero constant part");
  const std::size_t n = x.rows();
  SeriesMatrix sum = SeriesMatrix::identity(n, x.space(), x.order(), x.grading());
  SeriesMatrix term = sum;
  for (int k = 1; k <= x.order(); ++k) {
    term = term * x * GR(mpq_class(1, k));
    if (term.is_zero())
      break;
    sum += term;
  }
  return sum;
}

SeriesMatrix mat_log_unipotent(const SeriesMatrix &u) {
  const std::size_t n = u.rows();
  SeriesMatrix id = SeriesMatrix::identity(n, u.space(), u.order(), u.grading());
  SeriesMatrix nil = u - id;
  if (!nil.constant_part().is_zero())
    throw DomainError("log needs a unipotent matrix");
  SeriesMatrix sum(n, n, u.space(), u.order(), u.grading());
  SeriesMatrix pw = id;
  for (int k = 1; k <= u.order(); ++k) {
    pw = pw * nil;
    if (pw.is_zero())
      break;
    sum += pw * GR(mpq_class(k % 2 ? 1 : -1, k));
  }
  return sum;
}

} // namespace crmw
