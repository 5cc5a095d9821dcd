#pragma once

#include "crmw/lie.hpp"
#include "crmw/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crmw {

// Bigraded symbol at the origin, read in the adapted frame with e^{ih} = 1.
struct BigradedSymbol {
  Involution inv;
  std::vector<Matrix> Xi;
  bool two_nondegenerate = false;

  int s() const { return static_cast<int>(inv.H.rows()); }
  int r() const { return static_cast<int>(Xi.size()); }
  // S^{0,2}_a = e^{-ih} Xi_a H^{-1}.
  std::vector<Matrix> s02() const;
};

struct ModifiedSymbol {
  Involution inv;
  std::vector<Matrix> Xi;
  std::vector<Matrix> Omega;
  std::vector<Matrix> g00prime;

  int s() const { return static_cast<int>(inv.H.rows()); }
  int r() const { return static_cast<int>(Xi.size()); }
  std::vector<Matrix> s02() const;
  // H Xi_a conj, spanning the (0,-2) image up to the phase.
  std::vector<Matrix> s0m2() const;
  void validate() const;
};

BigradedSymbol bigraded_symbol_at_zero(const DefiningEquation &eq);

// Omega_b = (H^T)^{-1} (dH/dzeta_b)^T along the adapted frame.
std::vector<SeriesMatrix> frame_omega(const DefiningEquation &eq);

struct Obstruction {
  int alpha = 0, beta = 0;
  Matrix residual;
};

struct FocReport {
  bool constant = false;
  std::vector<Matrix> B;       // a solution when constant
  std::vector<Matrix> Omega;   // frame Omega(0) + B
  std::vector<Obstruction> obstructions;
};

// Decides whether the structure is constant to first order at the origin
// with the normalization O_{0,-2} = 0, O_{0,2} = 0.
FocReport first_order_constancy(const DefiningEquation &eq);

// Basis (reduced echelon, row-major entries) of the stabilizer g'_{00}.
std::vector<Matrix> g00_prime(const Involution &inv, const std::vector<Matrix> &Xi);
bool in_g00_prime(const Involution &inv, const std::vector<Matrix> &Xi, const Matrix &B);

struct RealizabilityReport {
  bool realizable = true;
  // Span coefficients for each (condition, alpha, beta) when realizable.
  std::vector<std::vector<GR>> certificate;
  // First violation otherwise.
  int condition = 0, alpha = 0, beta = 0;
  Matrix residual;
};

RealizabilityReport check_realizable(const ModifiedSymbol &sym);

// Basis of the Omega tuples passing both realizability conditions.
std::vector<std::vector<Matrix>> realizable_omega_basis(const Involution &inv,
                                                        const std::vector<Matrix> &Xi);

ModifiedSymbol act_on_modified_symbol(const GroupElement00 &g, const ModifiedSymbol &sym);

// Modified symbol of an equation: bigraded symbol plus Omega from the
// first-order constancy solution. Throws if the equation is not constant.
ModifiedSymbol modified_symbol(const DefiningEquation &eq);

} // namespace crmw
