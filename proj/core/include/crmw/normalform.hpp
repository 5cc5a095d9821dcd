#pragma once

#include "crmw/model.hpp"
#include "crmw/symbols.hpp"

#include <string>
#include <utility>
#include <vector>

namespace crmw {

struct PluriharmonicRecord {
  SeriesMatrix A;          // z_new = (Id + A(zeta)) z_old
  SeriesMatrix removed;    // antiholomorphic part of S dropped by the w-shift
};

struct PluriharmonicResult {
  ModelData data;
  DefiningEquation equation; // the normalized equation
  PluriharmonicRecord record;
};

// Splits H(zeta,0) = H0 + A^T H0, substitutes z = (Id + A)^{-1} z' and drops
// the pluriharmonic S(0, zetabar) terms. Input must already have the model shape.
PluriharmonicResult normalize_pluriharmonic(const DefiningEquation &eq);

// Inverse direction: z = (Id + A) z' with A(0) = 0 holomorphic in zeta, plus
// an added antiholomorphic symmetric R(zetabar) in S.
DefiningEquation forward_transform(const DefiningEquation &eq, const SeriesMatrix &A,
                                   const SeriesMatrix &R);

// H + 1/2 (H((Id - Sb H^T S H)^{-1} - Id) + ((Id - H Sb H^T S)^{-1} - Id) H),
// H^T S H + (H^T (Id - S H Sb H^T)^{-1} S H - H^T S H).
DefiningEquation reconstruct_from_HS(const ModelData &data);

struct PivotTuple {
  std::vector<std::pair<int, int>> positions; // zero-based (j, k), j <= k
};

// Upper-triangle positions sorted by (min, max).
std::vector<std::pair<int, int>> symmetric_positions(int s);

PivotTuple pivot_select(const std::vector<Matrix> &s02);
PivotTuple pivot_select(const BigradedSymbol &base);

// S(zeta) -> S(F^{-1}(zeta)) with F_b(zeta) = S(zeta)_{(j_b, k_b)}.
ModelData normal_form_reduce(const ModelData &data);

struct EquivalenceWitness {
  Matrix U;
  std::vector<TruncatedSeries> g;

  void validate(int s, int r) const;
  // (U^{-1}, g^{-1}).
  EquivalenceWitness inverse() const;
};

struct WitnessReport {
  bool holds = false;
  bool h_matches = false;
  bool s_matches = false;
  // First offending entry of the S identity.
  int row = 0, col = 0;
  std::string monomial;
  GR lhs, rhs;
};

// H2 == U^T H1 conj(U) and S2(zeta) == U^T S1(g(zeta)) U.
WitnessReport verify_equivalence_witness(const ModelData &m1, const ModelData &m2,
                                         const EquivalenceWitness &w);

} // namespace crmw
