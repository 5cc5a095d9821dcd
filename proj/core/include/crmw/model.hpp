#pragma once

#include "crmw/series_matrix.hpp"

#include <optional>
#include <string>

namespace crmw {

// Normalized model data: constant Hermitian H0 and a symmetric matrix S(zeta)
// of holomorphic series with S(0) = 0. The series order is S.order().
struct ModelData {
  Matrix H0;
  SeriesMatrix S;

  int s() const { return static_cast<int>(H0.rows()); }
  int r() const { return S.space().r(); }
  int order() const { return S.order(); }
  // Throws DomainError on a violated invariant. With `nondegenerate`, also
  // requires the first derivatives of S at 0 to be linearly independent.
  void validate(bool nondegenerate = false) const;
};

// Re w = z^T H z̄ + Re(z̄^T S z̄) with H, S series in (zeta, zetabar).
struct DefiningEquation {
  SeriesMatrix H;
  SeriesMatrix S;

  int s() const { return static_cast<int>(H.rows()); }
  int r() const { return H.space().r(); }
  int order() const { return H.order(); }
  void validate() const;
};

// Re w = P + Q, P of weighted degree 2 and Q of weighted degree > 2.
struct DefiningSeries {
  TruncatedSeries P;
  TruncatedSeries Q;
};

DefiningEquation build_model(const ModelData &data);

struct RankReport {
  bool holds = true;
  int checked_order = 0;
  // First failure, if any.
  int equation = 0; // 1 for the H identity, 2 for the S identity
  int alpha = 0, beta = 0, row = 0, col = 0;
  std::string monomial;
  GR lhs, rhs;
};

// Checks the two second-order identities characterizing rank s Levi forms
// for every pair (alpha, beta). Needs order >= 2.
RankReport verify_rank_condition(const DefiningEquation &eq);

// P = z^T H z̄ + Re(z̄^T S z̄), truncated at total degree order + 2.
TruncatedSeries defining_function(const DefiningEquation &eq);

struct LeviForm {
  SeriesMatrix matrix; // (s + r) x (s + r)
  SeriesMatrix schur;  // D - C A^{-1} B
};
LeviForm levi_form_series(const DefiningEquation &eq);

// Splits a weighted series into its degree 2 part and the rest.
DefiningSeries split_by_weight(const TruncatedSeries &f);
// Reads H and S off P (truncated at zeta-degree `order`); Q is discarded.
DefiningEquation extract_weighted_model(const DefiningSeries &full, int order);

// Solves the second-order system degree by degree from the boundary data
// H(zeta,0) = H0, S(zeta,0) = H0^T S(zeta) H0. Independent of the closed form.
DefiningEquation pde_propagate_oracle(const ModelData &data);

// z -> V z for a constant invertible V: (V^T H0 V̄, V^{-1} S V^{-T}).
ModelData transform_linear(const ModelData &data, const Matrix &V);

} // namespace crmw
