#pragma once

#include "crmw/model.hpp"
#include "crmw/symbols.hpp"

#include <string>

namespace crmw {

struct SymbolInput {
  Involution inv;
  std::vector<Matrix> S02;
  std::vector<Matrix> Omega;

  static SymbolInput from_symbol(const ModifiedSymbol &sym);
  ModifiedSymbol to_symbol() const;
  int s() const { return static_cast<int>(inv.H.rows()); }
  int r() const { return static_cast<int>(S02.size()); }
};

// S(zeta) = S02 block of exp(X) exp(-pi_00 X), X = sum_a zeta_a (Omega_a + S02_a).
// Requires a realizable, 2-nondegenerate input.
ModelData realize_S_from_symbol(const SymbolInput &input, int order);

struct RoundtripReport {
  bool ok = false;
  bool involution_matches = false;
  bool s02_matches = false;
  bool constant = false;
  bool omega_matches = false; // recovered Omega - input Omega in g'_00
  std::string detail;
};

RoundtripReport verify_roundtrip(const SymbolInput &input, int order);

} // namespace crmw
