#include "crmw/realize.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

namespace crmw {

SymbolInput SymbolInput::from_symbol(const ModifiedSymbol &sym) {
  return {sym.inv, sym.s02(), sym.Omega};
}

ModifiedSymbol SymbolInput::to_symbol() const {
  ModifiedSymbol sym;
  sym.inv = inv;
  for (const auto &x : S02)
    sym.Xi.push_back((x * inv.H) * inv.eih);
  sym.Omega = Omega;
  sym.g00prime = g00_prime(sym.inv, sym.Xi);
  return sym;
}

ModelData realize_S_from_symbol(const SymbolInput &input, int order) {
  input.inv.validate();
  const int s = input.s(), r = input.r();
  const auto n = static_cast<std::size_t>(s);
  if (r == 0 || input.Omega.size() != input.S02.size())
    throw DimensionMismatch("need one Omega per S02 and at least one of each");
  std::vector<Vec> flat;
  for (const auto &x : input.S02) {
    if (x.rows() != n || !x.is_symmetric())
      throw DomainError("S02 entries must be symmetric s x s matrices");
    flat.push_back(flatten(x));
  }
  if (rank(from_rows(flat, n * n)) != static_cast<std::size_t>(r))
    throw DomainError("S02 entries are linearly dependent");
  RealizabilityReport rr = check_realizable(input.to_symbol());
  if (!rr.realizable)
    throw DomainError("symbol is not realizable (condition " + std::to_string(rr.condition) +
                      ", pair " + std::to_string(rr.alpha + 1) + "," + std::to_string(rr.beta + 1) + ")");
  const VarSpace sp(s, r, false);
  std::vector<TruncatedSeries> zeta;
  std::vector<CspElement> full, level0;
  for (int a = 0; a < r; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    zeta.push_back(TruncatedSeries::variable(sp, sp.zeta(a), order));
    full.push_back(CspElement::from_L(input.Omega[ua]) + CspElement::from_S02(input.S02[ua]));
    level0.push_back(CspElement::from_L(input.Omega[ua]));
  }
  SeriesMatrix x = assemble_series(zeta, full);
  SeriesMatrix x0 = assemble_series(zeta, level0);
  SeriesMatrix u = mat_exp(x) * mat_exp(-x0);
  SeriesMatrix nil = u - SeriesMatrix::identity(u.rows(), sp, order);
  SeriesMatrix S = nil.block(1, 1 + n, n, n);
  SeriesMatrix rest = nil;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rest.set(1 + i, 1 + n + j, TruncatedSeries(sp, order));
  if (!rest.is_zero())
    throw InternalError("exp(X) exp(-X_00) is not a pure (0,2) element");
  ModelData data{input.inv.H, S};
  data.validate(true);
  return data;
}

RoundtripReport verify_roundtrip(const SymbolInput &input, int order) {
  RoundtripReport rep;
  ModelData data = realize_S_from_symbol(input, order);
  DefiningEquation eq = build_model(data);
  BigradedSymbol sym = bigraded_symbol_at_zero(eq);
  rep.involution_matches = sym.inv.H == input.inv.H;
  rep.s02_matches = sym.s02() == input.S02;
  FocReport foc = first_order_constancy(eq);
  rep.constant = foc.constant;
  if (foc.constant) {
    rep.omega_matches = true;
    for (std::size_t a = 0; a < foc.Omega.size(); ++a)
      if (!in_g00_prime(sym.inv, sym.Xi, foc.Omega[a] - input.Omega[a])) {
        rep.omega_matches = false;
        rep.detail = "Omega_" + std::to_string(a + 1) + " differs outside g'_00";
      }
  } else {
    rep.detail = "recovered model is not constant to first order";
  }
  if (!rep.involution_matches)
    rep.detail = "involution differs";
  else if (!rep.s02_matches)
    rep.detail = "S02 differs";
  rep.ok = rep.involution_matches && rep.s02_matches && rep.constant && rep.omega_matches;
  return rep;
}

} // namespace crmw
