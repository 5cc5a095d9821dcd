#include "crmw/series.hpp"

#include "crmw/errors.hpp"
#include "crmw/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace crmw {

// ---------------------------------------------------------------- VarSpace

VarSpace::VarSpace(int s, int r, bool has_t) : s_(s), r_(r), has_t_(has_t) {
  if (s < 0 || r < 0)
    throw DomainError("negative variable count");
  if (size() > kMaxVars)
    throw DomainError("too many variables (at most " + std::to_string(kMaxVars) + ")");
}

std::size_t VarSpace::z(int j) const {
  if (j < 0 || j >= s_)
    throw DomainError("z index out of range");
  return static_cast<std::size_t>(j);
}

std::size_t VarSpace::zbar(int j) const { return z(j) + static_cast<std::size_t>(s_); }

std::size_t VarSpace::zeta(int a) const {
  if (a < 0 || a >= r_)
    throw DomainError("zeta index out of range");
  return static_cast<std::size_t>(2 * s_ + a);
}

std::size_t VarSpace::zetabar(int a) const { return zeta(a) + static_cast<std::size_t>(r_); }

std::size_t VarSpace::t() const {
  if (!has_t_)
    throw DomainError("variable space has no t");
  return static_cast<std::size_t>(2 * s_ + 2 * r_);
}

VarKind VarSpace::kind(std::size_t var) const {
  const auto s = static_cast<std::size_t>(s_), r = static_cast<std::size_t>(r_);
  if (var < s)
    return VarKind::Z;
  if (var < 2 * s)
    return VarKind::ZBar;
  if (var < 2 * s + r)
    return VarKind::Zeta;
  if (var < 2 * s + 2 * r)
    return VarKind::ZetaBar;
  if (has_t_ && var == 2 * s + 2 * r)
    return VarKind::T;
  throw DomainError("variable index out of range");
}

int VarSpace::weight(std::size_t var, Grading g) const {
  VarKind k = kind(var);
  if (g == Grading::Total)
    return 1;
  switch (k) {
  case VarKind::Z:
  case VarKind::ZBar:
    return 1;
  case VarKind::Zeta:
  case VarKind::ZetaBar:
    return 0;
  case VarKind::T:
    return 2;
  }
  return 1;
}

bool VarSpace::holomorphic(std::size_t var) const {
  VarKind k = kind(var);
  return k == VarKind::Z || k == VarKind::Zeta;
}

std::size_t VarSpace::conjugate_var(std::size_t var) const {
  const auto s = static_cast<std::size_t>(s_), r = static_cast<std::size_t>(r_);
  switch (kind(var)) {
  case VarKind::Z:
    return var + s;
  case VarKind::ZBar:
    return var - s;
  case VarKind::Zeta:
    return var + r;
  case VarKind::ZetaBar:
    return var - r;
  case VarKind::T:
    return var;
  }
  return var;
}

std::string VarSpace::name(std::size_t var) const {
  const auto s = static_cast<std::size_t>(s_), r = static_cast<std::size_t>(r_);
  switch (kind(var)) {
  case VarKind::Z:
    return "z" + std::to_string(var + 1);
  case VarKind::ZBar:
    return "zb" + std::to_string(var - s + 1);
  case VarKind::Zeta:
    return "q" + std::to_string(var - 2 * s + 1);
  case VarKind::ZetaBar:
    return "qb" + std::to_string(var - 2 * s - r + 1);
  case VarKind::T:
    return "t";
  }
  return "?";
}

// ---------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(VarSpace space, int order, Grading grading)
    : space_(space), order_(order), grading_(grading) {
  if (order < 0)
    throw DomainError("negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(VarSpace space, int order, const GR &c, Grading grading) {
  TruncatedSeries f(space, order, grading);
  f.add_term(Monomial{}, c);
  return f;
}

TruncatedSeries TruncatedSeries::variable(VarSpace space, std::size_t var, int order, Grading grading) {
  TruncatedSeries f(space, order, grading);
  Monomial m{};
  if (var >= space.size())
    throw DomainError("variable index out of range");
  m[var] = 1;
  f.add_term(m, GR(1));
  return f;
}

int TruncatedSeries::degree(const Monomial &m) const {
  int d = 0;
  const std::size_t n = space_.size();
  if (grading_ == Grading::Total) {
    for (std::size_t k = 0; k < n; ++k)
      d += m[k];
    return d;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (m[k])
      d += m[k] * space_.weight(k, grading_);
  return d;
}

GR TruncatedSeries::coeff(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GR(0) : it->second;
}

void TruncatedSeries::add_term(const Monomial &m, const GR &c) {
  if (c.is_zero() || degree(m) > order_)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

void TruncatedSeries::set_term(const Monomial &m, const GR &c) {
  if (degree(m) > order_)
    return;
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

int TruncatedSeries::valuation() const {
  int v = order_ + 1;
  for (const auto &[m, c] : terms_)
    v = std::min(v, degree(m));
  return v;
}

std::optional<std::pair<Monomial, GR>> TruncatedSeries::first_term() const {
  std::optional<std::pair<Monomial, GR>> best;
  int best_deg = 0;
  for (const auto &[m, c] : terms_) {
    int d = degree(m);
    if (!best || d < best_deg) {
      best = {m, c};
      best_deg = d;
    }
  }
  return best;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order > order_)
    throw DomainError("cannot raise the truncation order");
  TruncatedSeries f(space_, order, grading_);
  for (const auto &[m, c] : terms_)
    if (degree(m) <= order)
      f.terms_.emplace_hint(f.terms_.end(), m, c);
  return f;
}

TruncatedSeries TruncatedSeries::conjugate() const {
  TruncatedSeries f(space_, order_, grading_);
  const std::size_t n = space_.size();
  for (const auto &[m, c] : terms_) {
    Monomial mc{};
    for (std::size_t k = 0; k < n; ++k)
      mc[space_.conjugate_var(k)] = m[k];
    f.terms_.emplace(mc, c.conj());
  }
  return f;
}

TruncatedSeries TruncatedSeries::differentiate(std::size_t var) const {
  int w = space_.weight(var, grading_);
  if (order_ - w < 0)
    throw DomainError("differentiation exhausts the truncation order");
  TruncatedSeries f(space_, order_ - w, grading_);
  for (const auto &[m, c] : terms_) {
    if (m[var] == 0)
      continue;
    Monomial md = m;
    md[var] -= 1;
    f.add_term(md, c * GR(static_cast<long>(m[var])));
  }
  return f;
}

TruncatedSeries TruncatedSeries::times_var(std::size_t var) const {
  int w = space_.weight(var, grading_);
  TruncatedSeries f(space_, order_ + w, grading_);
  for (const auto &[m, c] : terms_) {
    Monomial mm = m;
    if (mm[var] == 255)
      throw DomainError("exponent overflow");
    mm[var] += 1;
    f.terms_.emplace(mm, c);
  }
  return f;
}

TruncatedSeries TruncatedSeries::without(VarKind kind) const {
  TruncatedSeries f(space_, order_, grading_);
  const std::size_t n = space_.size();
  for (const auto &[m, c] : terms_) {
    bool keep = true;
    for (std::size_t k = 0; k < n && keep; ++k)
      if (m[k] && space_.kind(k) == kind)
        keep = false;
    if (keep)
      f.terms_.emplace_hint(f.terms_.end(), m, c);
  }
  return f;
}

TruncatedSeries TruncatedSeries::lifted(const VarSpace &target) const {
  if (target.s() != space_.s() || target.r() != space_.r())
    throw VarSpaceMismatch("lift requires matching s and r");
  if (space_.has_t() && !target.has_t()) {
    for (const auto &[m, c] : terms_)
      if (m[space_.t()])
        throw VarSpaceMismatch("series depends on t");
  }
  TruncatedSeries f(target, order_, grading_);
  f.terms_ = terms_;
  return f;
}

TruncatedSeries TruncatedSeries::pow(unsigned k) const {
  TruncatedSeries result = constant(space_, order_, GR(1), grading_);
  TruncatedSeries base = *this;
  while (k) {
    if (k & 1u)
      result = result * base;
    k >>= 1u;
    if (k)
      base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries f(*this);
  for (auto &[m, c] : f.terms_)
    c = -c;
  return f;
}

void TruncatedSeries::check_compatible(const TruncatedSeries &o, const char *op) const {
  if (space_ != o.space_)
    throw VarSpaceMismatch(std::string("variable spaces differ in ") + op);
  if (grading_ != o.grading_)
    throw VarSpaceMismatch(std::string("gradings differ in ") + op);
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &o) {
  check_compatible(o, "addition");
  if (o.order_ < order_)
    *this = truncated(o.order_);
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &o) {
  check_compatible(o, "subtraction");
  if (o.order_ < order_)
    *this = truncated(o.order_);
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(const GR &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, x] : terms_)
    x *= c;
  return *this;
}

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial &m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : m) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct GradedTerm {
  int deg;
  const Monomial *m;
  const GR *c;
};

std::vector<GradedTerm> graded(const TruncatedSeries &f) {
  std::vector<GradedTerm> out;
  out.reserve(f.size());
  for (const auto &[m, c] : f.terms())
    out.push_back({f.degree(m), &m, &c});
  std::stable_sort(out.begin(), out.end(),
                   [](const GradedTerm &a, const GradedTerm &b) { return a.deg < b.deg; });
  return out;
}

} // namespace

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
  a.check_compatible(b, "multiplication");
  const int order = std::min(a.order_, b.order_);
  TruncatedSeries out(a.space_, order, a.grading_);
  if (a.terms_.empty() || b.terms_.empty())
    return out;
  auto ga = graded(a), gb = graded(b);
  const std::size_t n = a.space_.size();
  std::unordered_map<Monomial, GR, MonomialHash> acc;
  for (const auto &ta : ga) {
    if (ta.deg + gb.front().deg > order)
      break;
    for (const auto &tb : gb) {
      if (ta.deg + tb.deg > order)
        break;
      Monomial m;
      for (std::size_t k = 0; k < n; ++k) {
        unsigned e = unsigned((*ta.m)[k]) + unsigned((*tb.m)[k]);
        if (e > 255)
          throw DomainError("exponent overflow");
        m[k] = static_cast<std::uint8_t>(e);
      }
      for (std::size_t k = n; k < m.size(); ++k)
        m[k] = 0;
      acc[m].add_product(*ta.c, *tb.c);
    }
  }
  for (auto &[m, c] : acc)
    if (!c.is_zero())
      out.terms_.emplace(m, std::move(c));
  return out;
}

std::string TruncatedSeries::monomial_str(const Monomial &m) const {
  std::string out;
  for (std::size_t k = 0; k < space_.size(); ++k) {
    if (!m[k])
      continue;
    if (!out.empty())
      out += "*";
    out += space_.name(k);
    if (m[k] > 1)
      out += "^" + std::to_string(m[k]);
  }
  return out.empty() ? "1" : out;
}

std::string TruncatedSeries::str() const {
  std::vector<std::pair<int, const std::pair<const Monomial, GR> *>> sorted;
  for (const auto &t : terms_)
    sorted.push_back({degree(t.first), &t});
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto &x, const auto &y) { return x.first < y.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto &[d, t] : sorted) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << t->second.str() << ")";
    if (degree(t->first) > 0)
      os << "*" << monomial_str(t->first);
  }
  if (first)
    os << "0";
  os << " + O(" << order_ + 1 << ")";
  return os.str();
}

bool agree(const TruncatedSeries &a, const TruncatedSeries &b) { return (a - b).is_zero(); }

TruncatedSeries compose(const TruncatedSeries &f, const std::map<std::size_t, TruncatedSeries> &subst) {
  const VarSpace &sp = f.space();
  int order = f.order();
  for (const auto &[var, g] : subst) {
    if (var >= sp.size())
      throw DomainError("substituted variable out of range");
    if (g.space() != sp || g.grading() != f.grading())
      throw VarSpaceMismatch("substituted series lives in a different space");
    int w = sp.weight(var, f.grading());
    if (w > 0 && g.valuation() < w)
      throw DomainError("substituted series for " + sp.name(var) +
                        " has a term of too low degree");
    order = std::min(order, g.order());
  }
  const std::size_t n = sp.size();
  // powers[var][k] = (image of var)^k, built lazily.
  std::vector<std::vector<TruncatedSeries>> powers(n);
  auto image = [&](std::size_t var) {
    auto it = subst.find(var);
    if (it != subst.end())
      return it->second.truncated(std::min(order, it->second.order()));
    return TruncatedSeries::variable(sp, var, order, f.grading());
  };
  auto power = [&](std::size_t var, unsigned k) -> const TruncatedSeries & {
    auto &p = powers[var];
    if (p.empty())
      p.push_back(TruncatedSeries::constant(sp, order, GR(1), f.grading()));
    while (p.size() <= k) {
      TruncatedSeries next = p.back() * image(var);
      p.push_back(std::move(next));
    }
    return p[k];
  };
  TruncatedSeries out(sp, order, f.grading());
  for (const auto &[m, c] : f.terms()) {
    TruncatedSeries term = TruncatedSeries::constant(sp, order, c, f.grading());
    for (std::size_t k = 0; k < n && !term.is_zero(); ++k)
      if (m[k])
        term = term * power(k, m[k]);
    out += term;
  }
  return out;
}

namespace {

void check_zeta_map(const std::vector<TruncatedSeries> &f) {
  if (f.empty())
    throw DomainError("empty map");
  const VarSpace &sp = f[0].space();
  if (static_cast<int>(f.size()) != sp.r())
    throw DimensionMismatch("map must have one component per zeta variable");
  for (const auto &fi : f) {
    if (fi.space() != sp || fi.grading() != Grading::Total)
      throw VarSpaceMismatch("map components must share a totally graded space");
    for (const auto &[m, c] : fi.terms())
      for (std::size_t k = 0; k < sp.size(); ++k)
        if (m[k] && sp.kind(k) != VarKind::Zeta)
          throw DomainError("map components may depend on zeta only");
  }
}

} // namespace

std::vector<TruncatedSeries> compose_maps(const std::vector<TruncatedSeries> &f,
                                          const std::vector<TruncatedSeries> &g) {
  if (f.empty())
    return {};
  const VarSpace &sp = f[0].space();
  if (static_cast<int>(g.size()) != sp.r())
    throw DimensionMismatch("inner map must have one component per zeta variable");
  std::map<std::size_t, TruncatedSeries> subst;
  for (int a = 0; a < sp.r(); ++a)
    subst.emplace(sp.zeta(a), g[static_cast<std::size_t>(a)]);
  std::vector<TruncatedSeries> out;
  for (const auto &fi : f)
    out.push_back(compose(fi, subst));
  return out;
}

std::vector<TruncatedSeries> invert_map(const std::vector<TruncatedSeries> &f) {
  check_zeta_map(f);
  const VarSpace &sp = f[0].space();
  const auto r = static_cast<std::size_t>(sp.r());
  int order = f[0].order();
  for (const auto &fi : f)
    order = std::min(order, fi.order());
  Matrix jac(r, r);
  for (std::size_t a = 0; a < r; ++a) {
    if (!f[a].constant_term().is_zero())
      throw DomainError("map does not fix the origin");
    for (std::size_t b = 0; b < r; ++b) {
      Monomial m{};
      m[sp.zeta(static_cast<int>(b))] = 1;
      jac(a, b) = f[a].coeff(m);
    }
  }
  if (determinant(jac).is_zero())
    throw SingularMatrix("map has singular linear part");
  Matrix jinv = inverse(jac);
  // Nonlinear part N = F - J zeta.
  std::vector<TruncatedSeries> nonlinear;
  std::vector<TruncatedSeries> ident;
  for (std::size_t a = 0; a < r; ++a) {
    TruncatedSeries na = f[a].truncated(order);
    for (std::size_t b = 0; b < r; ++b) {
      Monomial m{};
      m[sp.zeta(static_cast<int>(b))] = 1;
      na.add_term(m, -jac(a, b));
    }
    nonlinear.push_back(std::move(na));
    ident.push_back(TruncatedSeries::variable(sp, sp.zeta(static_cast<int>(a)), order));
  }
  auto apply_jinv = [&](const std::vector<TruncatedSeries> &v) {
    std::vector<TruncatedSeries> out;
    for (std::size_t a = 0; a < r; ++a) {
      TruncatedSeries acc(sp, order);
      for (std::size_t b = 0; b < r; ++b)
        if (!jinv(a, b).is_zero())
          acc += v[b] * jinv(a, b);
      out.push_back(std::move(acc));
    }
    return out;
  };
  std::vector<TruncatedSeries> g = apply_jinv(ident);
  // Each pass fixes one more degree.
  for (int pass = 1; pass < order; ++pass) {
    std::vector<TruncatedSeries> ng = compose_maps(nonlinear, g);
    std::vector<TruncatedSeries> rhs;
    for (std::size_t a = 0; a < r; ++a)
      rhs.push_back(ident[a] - ng[a]);
    g = apply_jinv(rhs);
  }
  return g;
}

} // namespace crmw
