#include "crmw/json_io.hpp"

#include "crmw/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace crmw::io {

namespace {

const Json &field(const Json &j, const std::string &key, const std::string &path) {
  if (!j.is_object())
    throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(path, "missing field \"" + key + "\"");
  return *it;
}

const Json *optional_field(const Json &j, const std::string &key, const std::string &path) {
  if (!j.is_object())
    throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

int int_from_json(const Json &j, const std::string &path, int lo = 0) {
  if (!j.is_number_integer())
    throw SchemaError(path, "expected an integer");
  auto v = j.get<long long>();
  if (v < lo || v > 1000000)
    throw SchemaError(path, "integer out of range");
  return static_cast<int>(v);
}

bool bool_from_json(const Json &j, const std::string &path) {
  if (!j.is_boolean())
    throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

const Json &array(const Json &j, const std::string &path) {
  if (!j.is_array())
    throw SchemaError(path, "expected an array");
  return j;
}

std::string at(const std::string &path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }
std::string dot(const std::string &path, const std::string &key) { return path + "." + key; }

Json space_json(const VarSpace &sp) { return {{"s", sp.s()}, {"r", sp.r()}, {"t", sp.has_t()}}; }

Json matrices(const std::vector<Matrix> &ms) {
  Json out = Json::array();
  for (const auto &m : ms)
    out.push_back(to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const Json &j, const std::string &path) {
  std::vector<Matrix> out;
  const Json &a = array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k)
    out.push_back(matrix_from_json(a[k], at(path, k)));
  return out;
}

Json series_entries(const SeriesMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_json_file(const std::string &path, const Json &j) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path);
  out << dump(j);
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

Json to_json(const GR &x) { return x.str(); }

GR gr_from_json(const Json &j, const std::string &path) {
  if (j.is_number_integer())
    return GR(j.get<long>());
  if (!j.is_string())
    throw SchemaError(path, "expected a Gaussian rational string");
  try {
    return GR::parse(j.get<std::string>());
  } catch (const ParseError &e) {
    throw SchemaError(path, std::string(e.what()) + " at offset " + std::to_string(e.position()));
  }
}

Json to_json(const Vec &v) {
  Json out = Json::array();
  for (const auto &x : v)
    out.push_back(to_json(x));
  return out;
}

Vec vec_from_json(const Json &j, const std::string &path) {
  Vec out;
  const Json &a = array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k)
    out.push_back(gr_from_json(a[k], at(path, k)));
  return out;
}

Json to_json(const Matrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json &j, const std::string &path) {
  const Json &rows = array(j, path);
  if (rows.empty())
    throw SchemaError(path, "empty matrix");
  const std::size_t cols = array(rows[0], at(path, 0)).size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json &row = array(rows[i], at(path, i));
    if (row.size() != cols)
      throw SchemaError(at(path, i), "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = gr_from_json(row[k], at(at(path, i), k));
  }
  return m;
}

Json to_json(const TruncatedSeries &f) {
  Json terms = Json::array();
  const std::size_t n = f.space().size();
  for (const auto &[m, c] : f.terms()) {
    Json exp = Json::array();
    for (std::size_t v = 0; v < n; ++v)
      exp.push_back(m[v]);
    terms.push_back({{"exp", exp}, {"c", c.str()}});
  }
  return {{"vars", space_json(f.space())},
          {"order", f.order()},
          {"grading", f.grading() == Grading::Total ? "total" : "weighted"},
          {"terms", terms}};
}

TruncatedSeries series_from_json(const Json &j, const std::string &path,
                                 const std::optional<SeriesContext> &ctx) {
  if (!j.is_object())
    throw SchemaError(path, "expected a series object");
  VarSpace sp;
  if (const Json *v = optional_field(j, "vars", path)) {
    const std::string vp = dot(path, "vars");
    int s = int_from_json(field(*v, "s", vp), dot(vp, "s"));
    int r = int_from_json(field(*v, "r", vp), dot(vp, "r"));
    bool t = false;
    if (const Json *tj = optional_field(*v, "t", vp))
      t = bool_from_json(*tj, dot(vp, "t"));
    if (2 * s + 2 * r + (t ? 1 : 0) > static_cast<int>(VarSpace::kMaxVars))
      throw SchemaError(vp, "too many variables");
    sp = VarSpace(s, r, t);
    if (ctx && sp != ctx->space)
      throw SchemaError(vp, "variables do not match the enclosing object");
  } else if (ctx) {
    sp = ctx->space;
  } else {
    throw SchemaError(path, "missing field \"vars\"");
  }
  int order;
  if (const Json *o = optional_field(j, "order", path)) {
    order = int_from_json(*o, dot(path, "order"));
    if (ctx && order != ctx->order)
      throw SchemaError(dot(path, "order"), "order does not match the enclosing object");
  } else if (ctx) {
    order = ctx->order;
  } else {
    throw SchemaError(path, "missing field \"order\"");
  }
  Grading g = ctx ? ctx->grading : Grading::Total;
  if (const Json *gj = optional_field(j, "grading", path)) {
    const std::string gp = dot(path, "grading");
    if (!gj->is_string())
      throw SchemaError(gp, "expected \"total\" or \"weighted\"");
    const auto name = gj->get<std::string>();
    if (name == "total")
      g = Grading::Total;
    else if (name == "weighted")
      g = Grading::Weighted;
    else
      throw SchemaError(gp, "expected \"total\" or \"weighted\"");
    if (ctx && g != ctx->grading)
      throw SchemaError(gp, "grading does not match the enclosing object");
  }
  TruncatedSeries f(sp, order, g);
  const std::string tp = dot(path, "terms");
  const Json &terms = array(field(j, "terms", path), tp);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string p = at(tp, k);
    const Json &exp = array(field(terms[k], "exp", p), dot(p, "exp"));
    if (exp.size() != sp.size())
      throw SchemaError(dot(p, "exp"), "expected " + std::to_string(sp.size()) + " exponents");
    Monomial m{};
    for (std::size_t v = 0; v < exp.size(); ++v) {
      int e = int_from_json(exp[v], at(dot(p, "exp"), v));
      if (e > 255)
        throw SchemaError(at(dot(p, "exp"), v), "exponent too large");
      m[v] = static_cast<std::uint8_t>(e);
    }
    if (f.degree(m) > order)
      throw SchemaError(p, "term exceeds the truncation order");
    f.add_term(m, gr_from_json(field(terms[k], "c", p), dot(p, "c")));
  }
  return f;
}

Json to_json(const SeriesMatrix &m) { return series_entries(m); }

SeriesMatrix series_matrix_from_json(const Json &j, const std::string &path, const SeriesContext &ctx) {
  const Json &rows = array(j, path);
  if (rows.empty())
    throw SchemaError(path, "empty matrix");
  const std::size_t cols = array(rows[0], at(path, 0)).size();
  SeriesMatrix m(rows.size(), cols, ctx.space, ctx.order, ctx.grading);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json &row = array(rows[i], at(path, i));
    if (row.size() != cols)
      throw SchemaError(at(path, i), "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k)
      m.set(i, k, series_from_json(row[k], at(at(path, i), k), ctx));
  }
  return m;
}

Json to_json(const ModelData &m) {
  return {{"s", m.s()}, {"r", m.r()}, {"order", m.order()}, {"H0", to_json(m.H0)}, {"S", to_json(m.S)}};
}

namespace {

SeriesContext context(const Json &j, const std::string &path, int &s, int &r) {
  s = int_from_json(field(j, "s", path), dot(path, "s"), 1);
  r = int_from_json(field(j, "r", path), dot(path, "r"), 0);
  if (2 * s + 2 * r + 1 > static_cast<int>(VarSpace::kMaxVars))
    throw SchemaError(path, "too many variables");
  int order = int_from_json(field(j, "order", path), dot(path, "order"));
  return {VarSpace(s, r, false), order, Grading::Total};
}

void check_square(const Matrix &m, int s, const std::string &path) {
  if (m.rows() != static_cast<std::size_t>(s) || m.cols() != static_cast<std::size_t>(s))
    throw SchemaError(path, "expected an s x s matrix");
}

void check_square(const SeriesMatrix &m, int s, const std::string &path) {
  if (m.rows() != static_cast<std::size_t>(s) || m.cols() != static_cast<std::size_t>(s))
    throw SchemaError(path, "expected an s x s matrix");
}

} // namespace

ModelData model_from_json(const Json &j, const std::string &path) {
  int s, r;
  SeriesContext ctx = context(j, path, s, r);
  ModelData m{matrix_from_json(field(j, "H0", path), dot(path, "H0")),
              series_matrix_from_json(field(j, "S", path), dot(path, "S"), ctx)};
  check_square(m.H0, s, dot(path, "H0"));
  check_square(m.S, s, dot(path, "S"));
  m.validate();
  return m;
}

Json to_json(const DefiningEquation &eq) {
  return {{"s", eq.s()}, {"r", eq.r()}, {"order", eq.order()}, {"H", to_json(eq.H)}, {"S", to_json(eq.S)}};
}

DefiningEquation equation_from_json(const Json &j, const std::string &path) {
  int s, r;
  SeriesContext ctx = context(j, path, s, r);
  DefiningEquation eq{series_matrix_from_json(field(j, "H", path), dot(path, "H"), ctx),
                      series_matrix_from_json(field(j, "S", path), dot(path, "S"), ctx)};
  check_square(eq.H, s, dot(path, "H"));
  check_square(eq.S, s, dot(path, "S"));
  eq.validate();
  return eq;
}

Json to_json(const Involution &inv) { return {{"H", to_json(inv.H)}, {"eih", to_json(inv.eih)}}; }

Involution involution_from_json(const Json &j, const std::string &path) {
  Involution inv{matrix_from_json(field(j, "H", path), dot(path, "H")),
                 gr_from_json(field(j, "eih", path), dot(path, "eih"))};
  inv.validate();
  return inv;
}

Json to_json(const CspElement &x) {
  return {{"s", x.s},          {"c", to_json(x.c)},   {"L", to_json(x.L)},   {"S02", to_json(x.S02)},
          {"S0m2", to_json(x.S0m2)}, {"v1", to_json(x.v1)}, {"v2", to_json(x.v2)}, {"u", to_json(x.u)}};
}

CspElement csp_from_json(const Json &j, const std::string &path) {
  const int s = int_from_json(field(j, "s", path), dot(path, "s"), 1);
  CspElement x = CspElement::zero(s);
  auto mat = [&](const char *key, Matrix &dst) {
    if (const Json *v = optional_field(j, key, path)) {
      dst = matrix_from_json(*v, dot(path, key));
      check_square(dst, s, dot(path, key));
    }
  };
  auto vec = [&](const char *key, Vec &dst) {
    if (const Json *v = optional_field(j, key, path)) {
      dst = vec_from_json(*v, dot(path, key));
      if (dst.size() != static_cast<std::size_t>(s))
        throw SchemaError(dot(path, key), "expected length s");
    }
  };
  if (const Json *v = optional_field(j, "c", path))
    x.c = gr_from_json(*v, dot(path, "c"));
  if (const Json *v = optional_field(j, "u", path))
    x.u = gr_from_json(*v, dot(path, "u"));
  mat("L", x.L);
  mat("S02", x.S02);
  mat("S0m2", x.S0m2);
  vec("v1", x.v1);
  vec("v2", x.v2);
  if (!x.S02.is_symmetric() || !x.S0m2.is_symmetric())
    throw SchemaError(path, "S02 and S0m2 must be symmetric");
  return x;
}

Json to_json(const ModifiedSymbol &sym) {
  return {{"H", to_json(sym.inv.H)},        {"eih", to_json(sym.inv.eih)},
          {"Xi", matrices(sym.Xi)},         {"Omega", matrices(sym.Omega)},
          {"g00prime", matrices(sym.g00prime)}};
}

Json to_json(const BigradedSymbol &sym) {
  return {{"H", to_json(sym.inv.H)},
          {"eih", to_json(sym.inv.eih)},
          {"Xi", matrices(sym.Xi)},
          {"S02", matrices(sym.s02())},
          {"two_nondegenerate", sym.two_nondegenerate}};
}

ModifiedSymbol symbol_from_json(const Json &j, const std::string &path) {
  ModifiedSymbol sym;
  sym.inv = involution_from_json(j, path);
  const int s = static_cast<int>(sym.inv.H.rows());
  sym.Xi = matrices_from_json(field(j, "Xi", path), dot(path, "Xi"));
  for (std::size_t k = 0; k < sym.Xi.size(); ++k)
    check_square(sym.Xi[k], s, at(dot(path, "Xi"), k));
  if (const Json *o = optional_field(j, "Omega", path)) {
    sym.Omega = matrices_from_json(*o, dot(path, "Omega"));
    if (sym.Omega.size() != sym.Xi.size())
      throw SchemaError(dot(path, "Omega"), "expected one matrix per Xi");
    for (std::size_t k = 0; k < sym.Omega.size(); ++k)
      check_square(sym.Omega[k], s, at(dot(path, "Omega"), k));
  } else {
    sym.Omega.assign(sym.Xi.size(), Matrix(sym.inv.H.rows(), sym.inv.H.rows()));
  }
  sym.validate();
  sym.g00prime = g00_prime(sym.inv, sym.Xi);
  return sym;
}

Json to_json(const EquivalenceWitness &w) {
  Json g = Json::array();
  for (const auto &f : w.g)
    g.push_back(to_json(f));
  return {{"U", to_json(w.U)}, {"g", g}};
}

EquivalenceWitness witness_from_json(const Json &j, const VarSpace &space, int order,
                                     const std::string &path) {
  EquivalenceWitness w;
  w.U = matrix_from_json(field(j, "U", path), dot(path, "U"));
  const std::string gp = dot(path, "g");
  const Json &g = array(field(j, "g", path), gp);
  for (std::size_t k = 0; k < g.size(); ++k) {
    // Components may carry their own order; they are truncated to the models'.
    SeriesContext ctx{space, order, Grading::Total};
    if (g[k].is_object() && g[k].contains("order"))
      ctx.order = int_from_json(g[k]["order"], dot(at(gp, k), "order"));
    w.g.push_back(series_from_json(g[k], at(gp, k), ctx).truncated(std::min(order, ctx.order)));
  }
  return w;
}

Json to_json(const HoloVectorField &x) {
  auto wpoly = [](const WPoly &p) {
    Json out = Json::array();
    for (const auto &c : p.c)
      out.push_back(to_json(c));
    return out;
  };
  Json xz = Json::array(), xzeta = Json::array();
  for (const auto &p : x.Xz)
    xz.push_back(wpoly(p));
  for (const auto &p : x.Xzeta)
    xzeta.push_back(wpoly(p));
  return {{"Xw", wpoly(x.Xw)}, {"Xz", xz}, {"Xzeta", xzeta}};
}

Json to_json(const RankReport &r) {
  Json out = {{"holds", r.holds}, {"checked_order", r.checked_order}};
  if (!r.holds)
    out["failure"] = {{"equation", r.equation}, {"alpha", r.alpha + 1}, {"beta", r.beta + 1},
                      {"row", r.row + 1},       {"col", r.col + 1},     {"monomial", r.monomial},
                      {"lhs", to_json(r.lhs)},  {"rhs", to_json(r.rhs)}};
  return out;
}

Json to_json(const FocReport &r) {
  Json out = {{"constant", r.constant}};
  if (r.constant) {
    out["B"] = matrices(r.B);
    out["Omega"] = matrices(r.Omega);
  } else {
    Json obs = Json::array();
    for (const auto &o : r.obstructions)
      obs.push_back({{"alpha", o.alpha + 1}, {"beta", o.beta + 1}, {"residual", to_json(o.residual)}});
    out["obstructions"] = obs;
  }
  return out;
}

Json to_json(const RealizabilityReport &r) {
  Json out = {{"realizable", r.realizable}};
  if (r.realizable) {
    Json cert = Json::array();
    for (const auto &c : r.certificate)
      cert.push_back(to_json(c));
    out["certificate"] = cert;
  } else {
    out["failure"] = {{"condition", r.condition},
                      {"alpha", r.alpha + 1},
                      {"beta", r.beta + 1},
                      {"residual", to_json(r.residual)}};
  }
  return out;
}

Json to_json(const RoundtripReport &r) {
  return {{"ok", r.ok},
          {"involution_matches", r.involution_matches},
          {"s02_matches", r.s02_matches},
          {"constant", r.constant},
          {"omega_matches", r.omega_matches},
          {"detail", r.detail}};
}

Json to_json(const TangencyReport &r) {
  Json out = {{"holds", r.holds}, {"checked_order", r.checked_order}};
  if (!r.holds)
    out["failure"] = {{"monomial", r.monomial},
                      {"coefficient", to_json(r.coefficient)},
                      {"z_degree", r.z_degree},
                      {"zbar_degree", r.zbar_degree}};
  return out;
}

Json to_json(const HeisenbergReport &r) {
  return {{"holds", r.holds}, {"dimension", r.dimension}, {"detail", r.detail}};
}

Json to_json(const PivotTuple &p) {
  Json out = Json::array();
  for (auto [j, k] : p.positions)
    out.push_back(Json::array({j + 1, k + 1}));
  return out;
}

Json to_json(const WitnessReport &r) {
  Json out = {{"holds", r.holds}, {"h_matches", r.h_matches}, {"s_matches", r.s_matches}};
  if (!r.s_matches)
    out["failure"] = {{"row", r.row + 1},
                      {"col", r.col + 1},
                      {"monomial", r.monomial},
                      {"lhs", to_json(r.lhs)},
                      {"rhs", to_json(r.rhs)}};
  return out;
}

} // namespace crmw::io
