#include "crmw/generators.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <functional>

namespace crmw {

namespace {

// Monomials in the given variables of exact total degree k.
std::vector<Monomial> monomials(const std::vector<std::size_t> &vars, int k) {
  std::vector<Monomial> out;
  Monomial cur{};
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == vars.size()) {
      cur[vars[pos]] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      cur[vars[pos]] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[vars[pos]] = static_cast<std::uint8_t>(e);
      rec(pos + 1, left - e);
    }
    cur[vars[pos]] = 0;
  };
  if (!vars.empty())
    rec(0, k);
  return out;
}

SeriesMatrix random_matrix_in(Rng &rng, const VarSpace &sp, const std::vector<std::size_t> &vars,
                              int order, int min_degree, int max_degree, long bound) {
  const auto s = static_cast<std::size_t>(sp.s());
  SeriesMatrix m(s, s, sp, order);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      TruncatedSeries f(sp, order);
      for (int k = min_degree; k <= max_degree; ++k)
        for (const auto &mono : monomials(vars, k))
          if (rng.integer(0, 2) != 0)
            f.add_term(mono, rng.gr(bound));
      m.set(i, j, f);
      m.set(j, i, f);
    }
  return m;
}

} // namespace

std::vector<Matrix> random_independent_symmetric(Rng &rng, int s, int r, long bound) {
  const auto n = static_cast<std::size_t>(s);
  if (r > s * (s + 1) / 2)
    throw DomainError("too many independent symmetric matrices requested");
  for (;;) {
    std::vector<Matrix> out;
    std::vector<Vec> flat;
    for (int a = 0; a < r; ++a) {
      out.push_back(rng.symmetric(n, bound));
      flat.push_back(flatten(out.back()));
    }
    if (r == 0 || rank(from_rows(flat, n * n)) == static_cast<std::size_t>(r))
      return out;
  }
}

SeriesMatrix random_zeta_matrix(Rng &rng, const VarSpace &sp, int order, int min_degree,
                                int max_degree, long bound) {
  std::vector<std::size_t> vars;
  for (int a = 0; a < sp.r(); ++a)
    vars.push_back(sp.zeta(a));
  return random_matrix_in(rng, sp, vars, order, min_degree, max_degree, bound);
}

SeriesMatrix random_zetabar_matrix(Rng &rng, const VarSpace &sp, int order, int max_degree,
                                   long bound) {
  std::vector<std::size_t> vars;
  for (int a = 0; a < sp.r(); ++a)
    vars.push_back(sp.zetabar(a));
  return random_matrix_in(rng, sp, vars, order, 0, max_degree, bound);
}

ModelData random_model(Rng &rng, int s, int r, int order, int degree) {
  const VarSpace sp(s, r, false);
  const auto n = static_cast<std::size_t>(s);
  Matrix H0 = rng.hermitian_nondegenerate(n);
  std::vector<Matrix> lin = random_independent_symmetric(rng, s, r);
  SeriesMatrix S(n, n, sp, order);
  for (int a = 0; a < r; ++a) {
    TruncatedSeries za = TruncatedSeries::variable(sp, sp.zeta(a), order);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!lin[static_cast<std::size_t>(a)](i, j).is_zero())
          S.set(i, j, S(i, j) + za * lin[static_cast<std::size_t>(a)](i, j));
  }
  if (degree >= 2)
    S += random_zeta_matrix(rng, sp, order, 2, std::min(degree, order));
  ModelData data{H0, S};
  data.validate(true);
  return data;
}

} // namespace crmw

namespace crmw {

ModifiedSymbol random_realizable_symbol(Rng &rng, int s, int r, long bound) {
  const auto n = static_cast<std::size_t>(s);
  Involution inv{rng.hermitian_nondegenerate(n, bound), GR(1)};
  std::vector<Matrix> Xi;
  for (const auto &x : random_independent_symmetric(rng, s, r, bound))
    Xi.push_back(x * inv.H);
  std::vector<Matrix> omega(static_cast<std::size_t>(r), Matrix(n, n));
  for (const auto &tuple : realizable_omega_basis(inv, Xi)) {
    GR c = rng.gr(bound, true);
    for (std::size_t a = 0; a < tuple.size(); ++a)
      omega[a] += tuple[a] * c;
  }
  return {inv, Xi, omega, g00_prime(inv, Xi)};
}

} // namespace crmw
