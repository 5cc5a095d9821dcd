#include "crmw/symbols.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <functional>

namespace crmw {

namespace {

using LinearMap = std::function<Vec(const Vec &)>;

// Matrix of a linear map given by evaluation.
Matrix matrix_of(const LinearMap &f, std::size_t n) {
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < n; ++k) {
    Vec e(n);
    e[k] = GR(1);
    cols.push_back(f(e));
  }
  const std::size_t m = cols.empty() ? f(Vec(n)).size() : cols[0].size();
  Matrix a(m, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < m; ++i)
      a(i, k) = cols[k][i];
  return a;
}

Matrix slice(const Vec &x, std::size_t offset, std::size_t s) {
  Matrix m(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      m(i, j) = x[offset + i * s + j];
  return m;
}

void append(Vec &out, const Matrix &m) {
  const Vec &e = m.entries();
  out.insert(out.end(), e.begin(), e.end());
}

Matrix combo(const std::vector<Matrix> &basis, const Vec &x, std::size_t offset) {
  Matrix m(basis[0].rows(), basis[0].cols());
  for (std::size_t g = 0; g < basis.size(); ++g)
    if (!x[offset + g].is_zero())
      m += basis[g] * x[offset + g];
  return m;
}

std::vector<Vec> flat_all(const std::vector<Matrix> &ms) {
  std::vector<Vec> out;
  for (const auto &m : ms)
    out.push_back(flatten(m));
  return out;
}

} // namespace

std::vector<Matrix> BigradedSymbol::s02() const {
  Matrix hinv = inverse(inv.H);
  GR einv = inv.eih.inverse();
  std::vector<Matrix> out;
  for (const auto &x : Xi)
    out.push_back((x * hinv) * einv);
  return out;
}

std::vector<Matrix> ModifiedSymbol::s02() const {
  return BigradedSymbol{inv, Xi, false}.s02();
}

std::vector<Matrix> ModifiedSymbol::s0m2() const {
  std::vector<Matrix> out;
  for (const auto &x : Xi)
    out.push_back(inv.H * x.conj());
  return out;
}

void ModifiedSymbol::validate() const {
  inv.validate();
  const auto n = inv.H.rows();
  if (Omega.size() != Xi.size())
    throw DimensionMismatch("Omega and Xi counts differ");
  for (const auto &x : Xi)
    if (x.rows() != n || x.cols() != n)
      throw DimensionMismatch("Xi must be s x s");
  for (const auto &o : Omega)
    if (o.rows() != n || o.cols() != n)
      throw DimensionMismatch("Omega must be s x s");
  for (const auto &s : s02())
    if (!s.is_symmetric())
      throw DomainError("Xi H^{-1} must be symmetric");
}

BigradedSymbol bigraded_symbol_at_zero(const DefiningEquation &eq) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  BigradedSymbol sym;
  sym.inv = {eq.H.constant_part(), GR(1)};
  Matrix htinv = inverse(sym.inv.H.transpose());
  for (int a = 0; a < eq.r(); ++a)
    sym.Xi.push_back(htinv * eq.S.differentiate(sp.zeta(a)).constant_part());
  const auto n = sym.inv.H.rows();
  sym.two_nondegenerate =
      eq.r() > 0 && rank(from_rows(flat_all(sym.Xi), n * n)) == static_cast<std::size_t>(eq.r());
  return sym;
}

std::vector<SeriesMatrix> frame_omega(const DefiningEquation &eq) {
  eq.validate();
  const VarSpace &sp = eq.H.space();
  SeriesMatrix htinv = inverse(eq.H.transpose());
  std::vector<SeriesMatrix> out;
  for (int b = 0; b < eq.r(); ++b)
    out.push_back(htinv * eq.H.differentiate(sp.zeta(b)).transpose());
  return out;
}

FocReport first_order_constancy(const DefiningEquation &eq) {
  BigradedSymbol sym = bigraded_symbol_at_zero(eq);
  if (eq.order() < 2)
    throw DomainError("first-order constancy needs order >= 2");
  const VarSpace &sp = eq.H.space();
  const auto s = static_cast<std::size_t>(eq.s()), r = static_cast<std::size_t>(eq.r());
  const std::size_t ss = s * s;
  std::vector<Matrix> sig = sym.s02();
  std::vector<Matrix> sigm = ModifiedSymbol{sym.inv, sym.Xi, {}, {}}.s0m2();
  Matrix H = sym.inv.H;
  Matrix htinv = inverse(H.transpose()), hinv = inverse(H);
  std::vector<Matrix> omega0;
  for (const auto &o : frame_omega(eq))
    omega0.push_back(o.constant_part());
  // Q_ab = (H^T)^{-1} S_{zeta_a zeta_b}(0,0) H^{-1}, a <= b.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b)
      pairs.push_back({a, b});
  Vec qvec;
  for (auto [a, b] : pairs) {
    Matrix sab = eq.S.differentiate(sp.zeta(static_cast<int>(a)))
                     .differentiate(sp.zeta(static_cast<int>(b)))
                     .constant_part();
    append(qvec, htinv * sab * hinv);
  }

  // Unknown layout: M_a (r*ss), then lambda for (c) (r*r*r), then mu for the
  // symmetry condition (pairs a<b, r each).
  const std::size_t n_m = r * ss, n_lam = r * r * r, n_mu = r == 0 ? 0 : r * (r - 1) / 2 * r;
  const std::size_t n_hom = n_m + n_lam + n_mu;
  auto homogeneous = [&](const Vec &x) {
    Vec out;
    std::size_t lam = n_m, mu = n_m + n_lam;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        Matrix Ma = slice(x, a * ss, s);
        Matrix v = Ma.transpose() * sigm[b] + sigm[b] * Ma - combo(sigm, x, lam);
        lam += r;
        append(out, v);
      }
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) {
        Matrix Ma = slice(x, a * ss, s), Mb = slice(x, b * ss, s);
        Matrix v = bracket_02(Ma, sig[b]) - bracket_02(Mb, sig[a]) - combo(sig, x, mu);
        mu += r;
        append(out, v);
      }
    return out;
  };
  // Full system adds (d) for a <= b with its own span coefficients nu.
  const std::size_t n_nu = pairs.size() * r, n_all = n_hom + n_nu;
  auto full = [&](const Vec &x) {
    Vec out = homogeneous(Vec(x.begin(), x.begin() + static_cast<long>(n_hom)));
    std::size_t nu = n_hom;
    for (auto [a, b] : pairs) {
      Matrix Ma = slice(x, a * ss, s);
      Matrix v = bracket_02(Ma, sig[b]) + combo(sig, x, nu);
      nu += r;
      append(out, v);
    }
    return out;
  };
  Matrix A = matrix_of(full, n_all);
  Vec rhs(A.rows());
  const std::size_t d_offset = A.rows() - qvec.size();
  for (std::size_t k = 0; k < qvec.size(); ++k)
    rhs[d_offset + k] = qvec[k];

  FocReport rep;
  auto sol = solve(A, rhs);
  if (sol) {
    rep.constant = true;
    for (std::size_t a = 0; a < r; ++a) {
      Matrix M = slice(*sol, a * ss, s);
      rep.Omega.push_back(M);
      rep.B.push_back(M - omega0[a]);
    }
    return rep;
  }

  // Obstruction: Q modulo {([M_a, S_b])_{a<=b} : M in K} + span tuples.
  Matrix K = matrix_of(homogeneous, n_hom);
  std::vector<Vec> sub;
  for (const auto &k : nullspace(K)) {
    Vec img;
    for (auto [a, b] : pairs)
      append(img, bracket_02(slice(k, a * ss, s), sig[b]));
    sub.push_back(img);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t g = 0; g < r; ++g) {
      Vec img(qvec.size());
      for (std::size_t k = 0; k < ss; ++k)
        img[p * ss + k] = sig[g].entries()[k];
      sub.push_back(img);
    }
  Vec red = reduce_modulo(sub, qvec);
  if (is_zero(red))
    throw InternalError("first-order system unsolvable but obstruction vanishes");
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Matrix m = slice(red, p * ss, s);
    if (!m.is_zero())
      rep.obstructions.push_back({static_cast<int>(pairs[p].first), static_cast<int>(pairs[p].second), m});
  }
  return rep;
}

namespace {

// Residuals of the two g'_00 conditions for B, with span coefficients.
Matrix g00_system(const Involution &inv, const std::vector<Matrix> &Xi) {
  const std::size_t s = inv.H.rows(), r = Xi.size(), ss = s * s;
  ModifiedSymbol tmp{inv, Xi, {}, {}};
  std::vector<Matrix> sig = tmp.s02(), sigm = tmp.s0m2();
  auto f = [&](const Vec &x) {
    Vec out;
    Matrix B = slice(x, 0, s);
    std::size_t off = ss;
    for (std::size_t a = 0; a < r; ++a) {
      append(out, B.transpose() * sigm[a] + sigm[a] * B - combo(sigm, x, off));
      off += r;
    }
    for (std::size_t a = 0; a < r; ++a) {
      append(out, bracket_02(B, sig[a]) - combo(sig, x, off));
      off += r;
    }
    return out;
  };
  return matrix_of(f, ss + 2 * r * r);
}

} // namespace

std::vector<Matrix> g00_prime(const Involution &inv, const std::vector<Matrix> &Xi) {
  const std::size_t s = inv.H.rows(), ss = s * s;
  std::vector<Vec> proj;
  for (const auto &v : nullspace(g00_system(inv, Xi)))
    proj.push_back(Vec(v.begin(), v.begin() + static_cast<long>(ss)));
  std::vector<Matrix> out;
  for (const auto &b : row_basis(proj, ss))
    out.push_back(unflatten(b, s, s));
  return out;
}

bool in_g00_prime(const Involution &inv, const std::vector<Matrix> &Xi, const Matrix &B) {
  ModifiedSymbol tmp{inv, Xi, {}, {}};
  std::vector<Matrix> sig = tmp.s02(), sigm = tmp.s0m2();
  auto fs = flat_all(sig), fsm = flat_all(sigm);
  for (std::size_t a = 0; a < Xi.size(); ++a) {
    if (!in_span(fsm, flatten(B.transpose() * sigm[a] + sigm[a] * B)))
      return false;
    if (!in_span(fs, flatten(bracket_02(B, sig[a]))))
      return false;
  }
  return true;
}

RealizabilityReport check_realizable(const ModifiedSymbol &sym) {
  sym.validate();
  const std::size_t r = static_cast<std::size_t>(sym.r());
  std::vector<Matrix> sig = sym.s02(), sigm = sym.s0m2();
  auto fs = flat_all(sig), fsm = flat_all(sigm);
  RealizabilityReport rep;
  for (int cond = 1; cond <= 2; ++cond)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        Matrix v;
        const std::vector<Vec> *basis;
        if (cond == 1) {
          v = sym.Omega[b].transpose() * sigm[a] + sigm[a] * sym.Omega[b];
          basis = &fsm;
        } else {
          v = bracket_02(sym.Omega[a], sig[b]) - bracket_02(sym.Omega[b], sig[a]);
          basis = &fs;
        }
        auto coeffs = span_coefficients(*basis, flatten(v));
        if (!coeffs) {
          rep.realizable = false;
          rep.condition = cond;
          rep.alpha = static_cast<int>(a);
          rep.beta = static_cast<int>(b);
          rep.residual = unflatten(reduce_modulo(*basis, flatten(v)), v.rows(), v.cols());
          rep.certificate.clear();
          return rep;
        }
        rep.certificate.push_back(*coeffs);
      }
  return rep;
}

std::vector<std::vector<Matrix>> realizable_omega_basis(const Involution &inv,
                                                        const std::vector<Matrix> &Xi) {
  const std::size_t s = inv.H.rows(), r = Xi.size(), ss = s * s;
  ModifiedSymbol tmp{inv, Xi, {}, {}};
  std::vector<Matrix> sig = tmp.s02(), sigm = tmp.s0m2();
  const std::size_t n_m = r * ss;
  auto f = [&](const Vec &x) {
    Vec out;
    std::size_t off = n_m;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        Matrix Ob = slice(x, b * ss, s);
        append(out, Ob.transpose() * sigm[a] + sigm[a] * Ob - combo(sigm, x, off));
        off += r;
      }
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) {
        Matrix v = bracket_02(slice(x, a * ss, s), sig[b]) - bracket_02(slice(x, b * ss, s), sig[a]);
        append(out, v - combo(sig, x, off));
        off += r;
      }
    return out;
  };
  const std::size_t n = n_m + r * r * r + (r == 0 ? 0 : r * (r - 1) / 2 * r);
  std::vector<Vec> proj;
  for (const auto &v : nullspace(matrix_of(f, n)))
    proj.push_back(Vec(v.begin(), v.begin() + static_cast<long>(n_m)));
  std::vector<std::vector<Matrix>> out;
  for (const auto &b : row_basis(proj, n_m)) {
    std::vector<Matrix> tuple;
    for (std::size_t a = 0; a < r; ++a)
      tuple.push_back(slice(b, a * ss, s));
    out.push_back(tuple);
  }
  return out;
}

ModifiedSymbol act_on_modified_symbol(const GroupElement00 &g, const ModifiedSymbol &sym) {
  sym.validate();
  ModifiedSymbol out;
  out.inv = act(g, sym.inv);
  for (const auto &x : sym.Xi)
    out.Xi.push_back(act_xi(g, x));
  for (const auto &o : sym.Omega)
    out.Omega.push_back(act_omega(g, o));
  out.g00prime = g00_prime(out.inv, out.Xi);
  return out;
}

ModifiedSymbol modified_symbol(const DefiningEquation &eq) {
  BigradedSymbol sym = bigraded_symbol_at_zero(eq);
  FocReport foc = first_order_constancy(eq);
  if (!foc.constant)
    throw DomainError("structure is not constant to first order");
  return {sym.inv, sym.Xi, foc.Omega, g00_prime(sym.inv, sym.Xi)};
}

} // namespace crmw
