#pragma once

#include "crmw/gaussian_rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crmw {

enum class Grading { Total, Weighted };
enum class VarKind { Z, ZBar, Zeta, ZetaBar, T };

// Variable layout: z_1..z_s, zbar_1..zbar_s, zeta_1..zeta_r, zetabar_1..zetabar_r, then t.
class VarSpace {
public:
  static constexpr std::size_t kMaxVars = 32;

  VarSpace() = default;
  VarSpace(int s, int r, bool has_t = false);

  int s() const { return s_; }
  int r() const { return r_; }
  bool has_t() const { return has_t_; }
  std::size_t size() const { return static_cast<std::size_t>(2 * s_ + 2 * r_ + (has_t_ ? 1 : 0)); }

  // Zero-based indices.
  std::size_t z(int j) const;
  std::size_t zbar(int j) const;
  std::size_t zeta(int a) const;
  std::size_t zetabar(int a) const;
  std::size_t t() const;

  VarKind kind(std::size_t var) const;
  int weight(std::size_t var, Grading g) const;
  bool holomorphic(std::size_t var) const;
  std::size_t conjugate_var(std::size_t var) const;
  std::string name(std::size_t var) const;

  VarSpace with_t(bool t) const { return VarSpace(s_, r_, t); }

  friend bool operator==(const VarSpace &a, const VarSpace &b) {
    return a.s_ == b.s_ && a.r_ == b.r_ && a.has_t_ == b.has_t_;
  }
  friend bool operator!=(const VarSpace &a, const VarSpace &b) { return !(a == b); }

private:
  int s_ = 0;
  int r_ = 0;
  bool has_t_ = false;
};

using Monomial = std::array<std::uint8_t, VarSpace::kMaxVars>;

// Sparse polynomial truncated at `order`: every term of degree <= order is
// exact, nothing above it is stored. Zero coefficients are never stored.
class TruncatedSeries {
public:
  using Terms = std::map<Monomial, GR>;

  TruncatedSeries() = default;
  TruncatedSeries(VarSpace space, int order, Grading grading = Grading::Total);

  static TruncatedSeries constant(VarSpace space, int order, const GR &c,
                                  Grading grading = Grading::Total);
  static TruncatedSeries variable(VarSpace space, std::size_t var, int order,
                                  Grading grading = Grading::Total);

  const VarSpace &space() const { return space_; }
  int order() const { return order_; }
  Grading grading() const { return grading_; }
  const Terms &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  int degree(const Monomial &m) const;
  GR coeff(const Monomial &m) const;
  GR constant_term() const { return coeff(Monomial{}); }
  // Adds c to the coefficient of m; terms above the order are dropped.
  void add_term(const Monomial &m, const GR &c);
  void set_term(const Monomial &m, const GR &c);

  bool is_zero() const { return terms_.empty(); }
  // Smallest degree of a stored term, or order+1 for the zero series.
  int valuation() const;
  // Earliest nonzero monomial under (degree, lexicographic exponent) order.
  std::optional<std::pair<Monomial, GR>> first_term() const;

  TruncatedSeries truncated(int order) const;
  TruncatedSeries conjugate() const;
  TruncatedSeries differentiate(std::size_t var) const;
  // Multiplication by a variable, which raises the order by its weight.
  TruncatedSeries times_var(std::size_t var) const;
  // Drops every term containing a variable of the given kind.
  TruncatedSeries without(VarKind kind) const;
  // Embeds into a space that differs only by the t variable.
  TruncatedSeries lifted(const VarSpace &target) const;
  TruncatedSeries pow(unsigned k) const;

  TruncatedSeries operator-() const;
  TruncatedSeries &operator+=(const TruncatedSeries &o);
  TruncatedSeries &operator-=(const TruncatedSeries &o);
  TruncatedSeries &operator*=(const GR &c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator*(TruncatedSeries a, const GR &c) { return a *= c; }
  friend TruncatedSeries operator*(const GR &c, TruncatedSeries a) { return a *= c; }

  // Equality includes the truncation order and grading.
  friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b) {
    return a.space_ == b.space_ && a.order_ == b.order_ && a.grading_ == b.grading_ &&
           a.terms_ == b.terms_;
  }
  friend bool operator!=(const TruncatedSeries &a, const TruncatedSeries &b) { return !(a == b); }

  std::string monomial_str(const Monomial &m) const;
  std::string str() const;

private:
  void check_compatible(const TruncatedSeries &o, const char *op) const;

  VarSpace space_;
  int order_ = 0;
  Grading grading_ = Grading::Total;
  Terms terms_;
};

// a - b truncated to the smaller order is zero.
bool agree(const TruncatedSeries &a, const TruncatedSeries &b);

// Substitutes series for variables. Variables absent from the map are kept.
// Substituted series must have zero constant term when the variable has
// positive weight. The result order is the minimum of all orders involved.
TruncatedSeries compose(const TruncatedSeries &f, const std::map<std::size_t, TruncatedSeries> &subst);

// Inverse of a map F = (F_1..F_r) in the holomorphic zeta variables with
// F(0) = 0 and invertible Jacobian: returns G with F(G(zeta)) = zeta.
std::vector<TruncatedSeries> invert_map(const std::vector<TruncatedSeries> &f);

// Applies F to G componentwise: (F_a(G_1..G_r)).
std::vector<TruncatedSeries> compose_maps(const std::vector<TruncatedSeries> &f,
                                          const std::vector<TruncatedSeries> &g);

} // namespace crmw
