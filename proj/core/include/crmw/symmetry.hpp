#pragma once

#include "crmw/lie.hpp"
#include "crmw/model.hpp"
#include "crmw/realize.hpp"

#include <string>
#include <vector>

namespace crmw {

// Polynomial in the formal variable w with series coefficients: sum_k c[k] w^k.
struct WPoly {
  std::vector<TruncatedSeries> c;

  static WPoly series(const TruncatedSeries &f) { return {{f}}; }
  int order() const;
  bool is_zero() const;
  WPoly differentiate(std::size_t var) const;
  WPoly dw() const;
  WPoly operator-() const;
  friend WPoly operator+(const WPoly &a, const WPoly &b);
  friend WPoly operator-(const WPoly &a, const WPoly &b);
  friend WPoly operator*(const WPoly &a, const WPoly &b);
  friend WPoly operator*(const WPoly &a, const GR &k);
};

// X = Xw d/dw + sum Xz_j d/dz_j + sum Xzeta_a d/dzeta_a, holomorphic coefficients.
struct HoloVectorField {
  WPoly Xw;
  std::vector<WPoly> Xz;
  std::vector<WPoly> Xzeta;

  static HoloVectorField zero(const VarSpace &sp, int order);
  const VarSpace &space() const { return Xw.c.at(0).space(); }
  // Throws DomainError if a coefficient involves zbar, zetabar or t.
  void validate() const;
  bool is_zero() const;
  int order() const;
  WPoly apply(const WPoly &f) const;
  HoloVectorField operator-() const;
  friend HoloVectorField operator+(const HoloVectorField &a, const HoloVectorField &b);
  friend HoloVectorField operator-(const HoloVectorField &a, const HoloVectorField &b);
  friend HoloVectorField operator*(const HoloVectorField &a, const GR &k);
};

// Equal up to the smaller order of each coefficient.
bool agree(const HoloVectorField &a, const HoloVectorField &b);

HoloVectorField bracket(const HoloVectorField &x, const HoloVectorField &y);

// General transversal field built from H(zeta,0), H(0,zetabar), S(zeta,0), S(0,zetabar).
HoloVectorField transversal_symmetry(const DefiningEquation &eq, const Vec &a, const GR &b);
// Shortcut for models built from (H0, S(zeta)): 2(bi + a^* H0^T z) d/dw + (a^T - a^* H0^T S) d/dz.
HoloVectorField transversal_symmetry(const ModelData &data, const Vec &a, const GR &b);

struct IsotropyData {
  Matrix Lz;                 // 1/2 (L - (H^T)^{-1} L^* H^T)
  Matrix c;                  // [y, e_a] = sum_b c(a, b) e_b
};

// Requires x to carry only an L block in g'_00 whose symmetrized bracket
// preserves span{e_a}; throws DomainError otherwise.
IsotropyData isotropy_data(const SymbolInput &input, const CspElement &x);
// z -> Lz z, zeta_b -> sum_a c(a, b) zeta_a, on a realized model of the given order.
HoloVectorField isotropy_symmetry(const ModelData &model, const SymbolInput &input,
                                  const CspElement &x);

HoloVectorField euler_symmetry(const VarSpace &sp, int order);

struct TangencyReport {
  bool holds = false;
  int checked_order = 0;
  std::string monomial;      // first offending monomial
  GR coefficient;
  int z_degree = 0, zbar_degree = 0;
  TruncatedSeries residual;
};

// Re(X(rho)) with rho = Re w - P, evaluated on w = P + it.
TangencyReport verify_tangency(const DefiningEquation &eq, const HoloVectorField &x);

struct HeisenbergReport {
  bool holds = false;
  int dimension = 0;         // real dimension of the spanned algebra
  std::string detail;
};

// Brackets the real basis {X_{e_j,0}, X_{i e_j,0}, X_{0,1}} and compares with
// [X_a, X_a'] = X_{0, 2 Im(a^T H a'bar)}, central X_{0,1}.
HeisenbergReport heisenberg_closure(const DefiningEquation &eq);

} // namespace crmw
