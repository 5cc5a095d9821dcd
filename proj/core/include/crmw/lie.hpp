#pragma once

#include "crmw/linalg.hpp"
#include "crmw/matrix.hpp"
#include "crmw/series_matrix.hpp"

#include <vector>

namespace crmw {

// Element of csp(2s+2) in block form. As a (2s+2)x(2s+2) matrix:
//   [ c      0      0      0 ]
//   [ v1     L      S02    0 ]
//   [ v2     S0m2  -L^T    0 ]
//   [ u*i    v2^T  -v1^T  -c ]
// with S02, S0m2 symmetric.
struct CspElement {
  int s = 0;
  GR c;
  Matrix L, S02, S0m2;
  Vec v1, v2;
  GR u;

  static CspElement zero(int s);
  static CspElement from_L(const Matrix &L);
  static CspElement from_S02(const Matrix &S);
  static CspElement from_S0m2(const Matrix &S);

  Matrix assemble() const;
  // Inverse of assemble; throws if the block pattern is violated.
  static CspElement disassemble(const Matrix &m);

  CspElement &operator+=(const CspElement &o);
  CspElement &operator-=(const CspElement &o);
  CspElement &operator*=(const GR &x);
  friend CspElement operator+(CspElement a, const CspElement &b) { return a += b; }
  friend CspElement operator-(CspElement a, const CspElement &b) { return a -= b; }
  friend CspElement operator*(CspElement a, const GR &x) { return a *= x; }
  friend CspElement operator*(const GR &x, CspElement a) { return a *= x; }
  friend bool operator==(const CspElement &a, const CspElement &b);
  friend bool operator!=(const CspElement &a, const CspElement &b) { return !(a == b); }
  bool is_zero() const { return *this == zero(s); }
};

// Matrix commutator, read back into blocks.
CspElement bracket(const CspElement &x, const CspElement &y);

// Hermitian nondegenerate H and a unit scalar e^{ih}.
struct Involution {
  Matrix H;
  GR eih{1};

  void validate() const;
};

// Involutions are identified up to a simultaneous sign flip of (H, e^{ih}).
bool equivalent(const Involution &a, const Involution &b);

// The antilinear involution of csp(2s+2) determined by (H, e^{ih}).
CspElement sigma(const Involution &inv, const CspElement &x);

enum class Bigrade { M2_0, M1_P1, M1_M1, Z_Z, Z_P2, Z_M2 };
CspElement project(const CspElement &x, Bigrade g);

// Element (b, B) of the grading-preserving subgroup, matrix diag(b, B, B^{-T}, b^{-1}).
struct GroupElement00 {
  GR b{1};
  Matrix B;

  Matrix matrix() const;
  GroupElement00 inverse() const;
  friend GroupElement00 operator*(const GroupElement00 &x, const GroupElement00 &y) {
    return {x.b * y.b, x.B * y.B};
  }
};

// Ad of g^{-1}: x -> g^{-1} x g.
CspElement adjoint_inverse(const GroupElement00 &g, const CspElement &x);

// Right actions: act(g1 g2, .) = act(g2, act(g1, .)).
Involution act(const GroupElement00 &g, const Involution &inv);
Matrix act_xi(const GroupElement00 &g, const Matrix &xi);
Matrix act_omega(const GroupElement00 &g, const Matrix &omega);

// Bracket on csp_{0,0} x csp_{0,2}: L S + S L^T.
Matrix bracket_02(const Matrix &L, const Matrix &S);
// Bracket on csp_{0,0} x csp_{0,-2}: -(L^T S + S L).
Matrix bracket_0m2(const Matrix &L, const Matrix &S);

// Sum_k coeffs[k] * assemble(basis[k]) as a series matrix.
SeriesMatrix assemble_series(const std::vector<TruncatedSeries> &coeffs,
                             const std::vector<CspElement> &basis);

// exp(X) for X with zero constant part.
SeriesMatrix mat_exp(const SeriesMatrix &x);
// log(U) for U - Id with zero constant part.
SeriesMatrix mat_log_unipotent(const SeriesMatrix &u);

} // namespace crmw
