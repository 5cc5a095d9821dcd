#include "crmw/battery.hpp"

#include "crmw/errors.hpp"
#include "crmw/generators.hpp"
#include "crmw/linalg.hpp"
#include "crmw/normalform.hpp"
#include "crmw/symmetry.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace crmw {

namespace {

using io::Json;

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string &what) {
  if (!cond)
    throw Failure{what};
}

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, n, i, j); }

Matrix sym_e(std::size_t n, std::size_t i, std::size_t j) {
  return i == j ? E(n, i, i) : E(n, i, j) + E(n, j, i);
}

Matrix diag2(long a, long b) { return Matrix{{GR(a), GR(0)}, {GR(0), GR(b)}}; }

ModelData scalar_model(long h, int order, const std::function<TruncatedSeries(const TruncatedSeries &)> &f) {
  VarSpace sp(1, 1);
  SeriesMatrix S(1, 1, sp, order);
  S.set(0, 0, f(TruncatedSeries::variable(sp, sp.zeta(0), order)));
  return {Matrix{{GR(h)}}, S};
}

ModelData light_cone(int order) {
  return scalar_model(1, order, [](const TruncatedSeries &z) { return z; });
}

// (s, r) pairs with r <= min(3, s(s+1)/2), s <= 3.
std::vector<std::pair<int, int>> shapes() {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(3, s * (s + 1) / 2); ++r)
      out.push_back({s, r});
  return out;
}

SymbolInput e11_symbol(long omega) {
  return {{Matrix::identity(2), GR(1)}, {E(2, 0, 0)}, {E(2, 0, 0) * GR(omega)}};
}

// Linear S spanning all symmetric 2 x 2 matrices; g'_00 = gl(2).
SymbolInput full_symbol(const Matrix &H) {
  return {{H, GR(1)}, {sym_e(2, 0, 0), sym_e(2, 0, 1), sym_e(2, 1, 1)}, {Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)}};
}

std::vector<SymbolInput> realizable_inputs(Rng &rng, int count) {
  std::vector<SymbolInput> out{e11_symbol(1), e11_symbol(0), full_symbol(Matrix::identity(2))};
  const std::vector<std::pair<int, int>> pool{{1, 1}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}};
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    auto [s, r] = pool[static_cast<std::size_t>(k) % pool.size()];
    out.push_back(SymbolInput::from_symbol(random_realizable_symbol(rng, s, r)));
  }
  return out;
}

std::string count_str(int n, const char *what) { return std::to_string(n) + " " + what; }

// 1. Closed form, reorganized closed form and the degree-by-degree solver agree.
std::string criterion_closed_form(Rng &rng) {
  int n = 0;
  const auto sh = shapes();
  for (int k = 0; k < 21; ++k) {
    auto [s, r] = sh[static_cast<std::size_t>(k) % sh.size()];
    ModelData data = random_model(rng, s, r, 5);
    DefiningEquation a = build_model(data), b = reconstruct_from_HS(data), c = pde_propagate_oracle(data);
    expect(a.H == c.H && a.S == c.S, "build_model differs from the PDE solver (s=" + std::to_string(s) +
                                         ", r=" + std::to_string(r) + ")");
    expect(b.H == c.H && b.S == c.S, "reconstruct_from_HS differs from the PDE solver");
    ++n;
  }
  return count_str(n, "random models agree term-for-term at order 5");
}

// 2. Rank identities on closed-form outputs; the broken fixture fails.
std::string criterion_rank(Rng &rng) {
  int n = 0;
  for (int d = 2; d <= 8; ++d, ++n)
    expect(verify_rank_condition(build_model(light_cone(d))).holds, "light cone fails at order " + std::to_string(d));
  for (auto [s, r] : shapes()) {
    expect(verify_rank_condition(build_model(random_model(rng, s, r, 6))).holds, "random model fails");
    ++n;
  }
  VarSpace sp(1, 1);
  SeriesMatrix H(1, 1, sp, 4), S(1, 1, sp, 4);
  TruncatedSeries h = TruncatedSeries::constant(sp, 4, GR(1)) + TruncatedSeries::variable(sp, sp.zeta(0), 4) +
                      TruncatedSeries::variable(sp, sp.zetabar(0), 4);
  H.set(0, 0, h);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), 4));
  RankReport bad = verify_rank_condition({H, S});
  expect(!bad.holds && !bad.monomial.empty(), "broken fixture was not rejected");
  return count_str(n, "equations pass") + "; broken fixture fails at equation " + std::to_string(bad.equation) +
         ", monomial " + bad.monomial;
}

// 3. H0 = Id against (Id - Sb S)^{-1} and (Id - S Sb)^{-1} S.
std::string criterion_pseudoconvex(Rng &rng) {
  const int d = 8;
  DefiningEquation lc = build_model(light_cone(d));
  VarSpace sp(1, 1);
  TruncatedSeries geo(sp, d), zgeo(sp, d);
  Monomial m{};
  for (int k = 0; 2 * k <= d; ++k) {
    m[sp.zeta(0)] = static_cast<std::uint8_t>(k);
    m[sp.zetabar(0)] = static_cast<std::uint8_t>(k);
    geo.add_term(m, GR(1));
    m[sp.zeta(0)] = static_cast<std::uint8_t>(k + 1);
    zgeo.add_term(m, GR(1));
  }
  expect(lc.H(0, 0) == geo, "light cone H is not the geometric series");
  expect(lc.S(0, 0) == zgeo, "light cone S is not zeta times the geometric series");
  int n = 1;
  for (int s = 1; s <= 3; ++s) {
    ModelData data = random_model(rng, s, std::min(2, s), 6);
    data.H0 = Matrix::identity(static_cast<std::size_t>(s));
    DefiningEquation eq = build_model(data);
    SeriesMatrix Sb = data.S.conjugate();
    expect(eq.H == neumann_inverse(Sb * data.S), "H differs from (Id - conj(S) S)^{-1}");
    expect(eq.S == neumann_inverse(data.S * Sb) * data.S, "S differs from (Id - S conj(S))^{-1} S");
    ++n;
  }
  return count_str(n, "identity-H models match the pseudoconvex form") + " (order 8 light cone)";
}

// 4. Taylor coefficients of the realized S.
std::string criterion_bch(Rng &rng) {
  auto inputs = realizable_inputs(rng, 20);
  for (const auto &in : inputs) {
    ModelData m = realize_S_from_symbol(in, 3);
    const VarSpace &sp = m.S.space();
    for (int a = 0; a < in.r(); ++a) {
      const auto ua = static_cast<std::size_t>(a);
      expect(m.S.differentiate(sp.zeta(a)).constant_part() == in.S02[ua], "linear coefficient differs");
      for (int b = 0; b < in.r(); ++b) {
        const auto ub = static_cast<std::size_t>(b);
        Matrix want = (bracket_02(in.Omega[ua], in.S02[ub]) + bracket_02(in.Omega[ub], in.S02[ua])) *
                      GR(mpq_class(1, 2));
        expect(m.S.differentiate(sp.zeta(a)).differentiate(sp.zeta(b)).constant_part() == want,
               "quadratic coefficient differs");
      }
    }
  }
  return count_str(static_cast<int>(inputs.size()), "realizable inputs match through degree 2");
}

// 5. symbol -> realize -> model -> symbol.
std::string criterion_roundtrip(Rng &rng, int order) {
  auto inputs = realizable_inputs(rng, 12);
  for (const auto &in : inputs) {
    RoundtripReport rep = verify_roundtrip(in, order);
    expect(rep.ok, "round trip failed: " + rep.detail);
  }
  return count_str(static_cast<int>(inputs.size()), "symbols round-trip") + " at order " + std::to_string(order);
}

// 6. The two hand-checkable s = 2 realizability fixtures.
std::string criterion_realizability() {
  Involution inv{Matrix::identity(2), GR(1)};
  auto sym = [&](const Matrix &omega) {
    return ModifiedSymbol{inv, {E(2, 0, 0)}, {omega}, g00_prime(inv, {E(2, 0, 0)})};
  };
  RealizabilityReport ok = check_realizable(sym(diag2(1, 0)));
  RealizabilityReport bad = check_realizable(sym(E(2, 0, 1)));
  expect(ok.realizable, "Omega = diag(1,0) rejected");
  expect(!bad.realizable, "Omega = E12 accepted");
  return "diag(1,0) realizable; E12 fails condition " + std::to_string(bad.condition);
}

// 7. Tangency of transversal, isotropy and Euler fields; sign-flipped control.
std::string criterion_tangency(Rng &rng, int order) {
  int fields = 0, models = 0;
  const std::vector<std::pair<int, int>> pool{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}};
  for (auto [s, r] : pool) {
    ModelData data = random_model(rng, s, r, order);
    DefiningEquation eq = build_model(data);
    ++models;
    for (int k = 0; k < 2; ++k) {
      Vec a;
      for (int j = 0; j < s; ++j)
        a.push_back(rng.gr(3, true));
      GR b(rng.gr(3, false).re());
      HoloVectorField x = transversal_symmetry(eq, a, b);
      expect(agree(x, transversal_symmetry(data, a, b)), "general and normalized fields differ");
      expect(verify_tangency(eq, x).holds, "transversal field not tangent");
      ++fields;
    }
    expect(verify_tangency(eq, euler_symmetry(eq.H.space(), order + 2)).holds, "Euler field not tangent");
    ++fields;
  }
  int iso = 0;
  auto iso_check = [&](const SymbolInput &in, const Matrix &L) {
    ModelData m = realize_S_from_symbol(in, order);
    DefiningEquation eq = build_model(m);
    expect(verify_tangency(eq, isotropy_symmetry(m, in, CspElement::from_L(L))).holds, "isotropy field not tangent");
    expect(verify_tangency(eq, euler_symmetry(eq.H.space(), order + 2)).holds, "Euler field not tangent");
    ++iso;
  };
  Matrix li(2, 2);
  li(0, 0) = GR(0, 1);
  iso_check(e11_symbol(0), li);
  iso_check(e11_symbol(0), Matrix::identity(2) * GR(0, 1));
  for (const Matrix &L : {E(2, 0, 1), E(2, 1, 0) + E(2, 0, 0) * GR(0, 3)}) {
    iso_check(full_symbol(Matrix::identity(2)), L);
    iso_check(full_symbol(diag2(1, -1)), L);
  }
  ModelData lc = light_cone(order);
  DefiningEquation eq = build_model(lc);
  HoloVectorField flipped = transversal_symmetry(lc, Vec{GR(1)}, GR(0));
  flipped.Xz[0] = WPoly::series(TruncatedSeries::constant(lc.S.space(), order, GR(2))) - flipped.Xz[0];
  TangencyReport neg = verify_tangency(eq, flipped);
  expect(!neg.holds, "sign-flipped field is tangent");
  std::ostringstream os;
  os << fields << " transversal/Euler fields on " << models << " models and " << iso
     << " isotropy fields tangent at order " << order << "; flipped control fails at " << neg.monomial
     << " (bidegree " << neg.z_degree << "," << neg.zbar_degree << ")";
  return os.str();
}

// 8. Heisenberg algebra of transversal fields.
std::string criterion_heisenberg(Rng &rng) {
  int n = 0;
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= std::min(2, s); ++r) {
      HeisenbergReport rep = heisenberg_closure(build_model(random_model(rng, s, r, 5)));
      expect(rep.holds, "closure fails: " + rep.detail);
      expect(rep.dimension == 2 * s + 1, "wrong dimension");
      ++n;
    }
  return count_str(n, "models close into Heisenberg algebras of dimension 2s+1");
}

// 9. Normal form: pivots, idempotence, pivot entries.
std::string criterion_normal_form(Rng &rng) {
  using P = std::vector<std::pair<int, int>>;
  expect(pivot_select(std::vector<Matrix>{Matrix{{GR(1)}}}).positions == P{{0, 0}}, "pivot fixture 1");
  expect(pivot_select(std::vector<Matrix>{sym_e(2, 0, 1)}).positions == P{{0, 1}}, "pivot fixture 2");
  expect(pivot_select(std::vector<Matrix>{E(2, 0, 0), sym_e(2, 0, 1)}).positions == P{{0, 0}, {0, 1}},
         "pivot fixture 3");
  const int d = 6;
  ModelData q = scalar_model(1, d, [](const TruncatedSeries &z) { return z * GR(2) + z * z; });
  expect(normal_form_reduce(q).S(0, 0) == TruncatedSeries::variable(q.S.space(), q.S.space().zeta(0), d),
         "2 zeta + zeta^2 not reduced to zeta");
  int n = 0;
  for (auto [s, r] : shapes()) {
    ModelData data = random_model(rng, s, r, 5);
    ModelData once = normal_form_reduce(data);
    expect(normal_form_reduce(once).S == once.S, "not idempotent");
    expect(once.H0 == data.H0, "H changed");
    const VarSpace &sp = data.S.space();
    std::vector<Matrix> s02;
    for (int a = 0; a < r; ++a)
      s02.push_back(data.S.differentiate(sp.zeta(a)).constant_part());
    PivotTuple p = pivot_select(s02);
    for (int a = 0; a < r; ++a) {
      auto [j, k] = p.positions[static_cast<std::size_t>(a)];
      expect(once.S(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) ==
                 TruncatedSeries::variable(sp, sp.zeta(a), 5),
             "pivot entry is not zeta");
    }
    ++n;
  }
  return "3 pivot fixtures; " + count_str(n, "random models idempotent with pivot entries zeta_a");
}

// 10. The s = 1 scaling witness.
std::string criterion_witness() {
  const int d = 6;
  auto id = [](const TruncatedSeries &z) { return z; };
  ModelData m1 = scalar_model(1, d, id), m2 = scalar_model(4, d, id);
  TruncatedSeries z = m1.S(0, 0);
  EquivalenceWitness w{Matrix{{GR(2)}}, {z * GR(mpq_class(1, 4))}};
  expect(verify_equivalence_witness(m1, m2, w).holds, "scaling witness rejected");
  WitnessReport bad = verify_equivalence_witness(m1, m2, {Matrix{{GR(2)}}, {z}});
  expect(!bad.holds, "g = id accepted");
  expect(verify_equivalence_witness(m2, m1, w.inverse()).holds, "inverse witness rejected");
  return "U=[2], g=zeta/4 passes; g=id fails at " + bad.monomial + "; inverse passes";
}

// 11. Weight-3 perturbations do not change symbols.
std::string criterion_perturbation(Rng &rng) {
  const int d = 4;
  std::vector<ModelData> models{light_cone(d), realize_S_from_symbol(e11_symbol(1), d)};
  for (int s = 1; s <= 3; ++s)
    models.push_back(random_model(rng, s, 1, d));
  for (const auto &data : models) {
    DefiningEquation eq = build_model(data);
    const VarSpace &sp = eq.H.space();
    TruncatedSeries p = defining_function(eq);
    TruncatedSeries full(sp, 3, Grading::Weighted);
    for (const auto &[m, c] : p.terms())
      full.add_term(m, c);
    // Random real weight-3 terms: z_j z_k zbar_l times zeta monomials, plus conjugates.
    TruncatedSeries q(sp, 3, Grading::Weighted);
    for (int k = 0; k < 4; ++k) {
      Monomial m{};
      m[sp.z(rng.integer(0, sp.s() - 1))] += 1;
      m[sp.z(rng.integer(0, sp.s() - 1))] += 1;
      m[sp.zbar(rng.integer(0, sp.s() - 1))] += 1;
      m[sp.zeta(rng.integer(0, sp.r() - 1))] += static_cast<std::uint8_t>(rng.integer(0, 2));
      q.add_term(m, rng.gr(2, true));
    }
    full += q + q.conjugate();
    DefiningSeries split = split_by_weight(full);
    expect(!split.Q.is_zero(), "perturbation vanished");
    DefiningEquation back = extract_weighted_model(split, d);
    BigradedSymbol s0 = bigraded_symbol_at_zero(eq), s1 = bigraded_symbol_at_zero(back);
    expect(s0.inv.H == s1.inv.H && s0.Xi == s1.Xi && s0.two_nondegenerate == s1.two_nondegenerate,
           "bigraded symbol changed");
    FocReport f0 = first_order_constancy(eq), f1 = first_order_constancy(back);
    expect(f0.constant == f1.constant && f0.Omega == f1.Omega, "modified symbol changed");
    expect(g00_prime(s0.inv, s0.Xi) == g00_prime(s1.inv, s1.Xi), "g'_00 changed");
  }
  return count_str(static_cast<int>(models.size()), "perturbed models keep their symbols");
}

GroupElement00 random_group(Rng &rng, std::size_t s) {
  GR b;
  do
    b = rng.gr(2, true);
  while (b.is_zero());
  return {b, rng.invertible(s)};
}

// 12. Structure-group action.
std::string criterion_equivariance(Rng &rng) {
  int n = 0;
  for (auto [s, r] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    const auto us = static_cast<std::size_t>(s);
    ModifiedSymbol sym = random_realizable_symbol(rng, s, r);
    GroupElement00 g1 = random_group(rng, us), g2 = random_group(rng, us);
    ModifiedSymbol a = act_on_modified_symbol(g1 * g2, sym);
    ModifiedSymbol b = act_on_modified_symbol(g2, act_on_modified_symbol(g1, sym));
    expect(equivalent(a.inv, b.inv) && a.Xi == b.Xi && a.Omega == b.Omega, "composition law fails");
    expect(check_realizable(a).realizable, "realizability not preserved");
    // A non-realizable perturbation stays non-realizable.
    ModifiedSymbol bad = sym;
    bool found = false;
    for (std::size_t i = 0; i < us && !found; ++i)
      for (std::size_t j = 0; j < us && !found; ++j) {
        bad.Omega[0] = sym.Omega[0] + E(us, i, j);
        found = !check_realizable(bad).realizable;
      }
    if (found)
      expect(!check_realizable(act_on_modified_symbol(g1, bad)).realizable, "non-realizable became realizable");
    // FOC verdicts of linearly transformed models.
    ModelData m = realize_S_from_symbol(SymbolInput::from_symbol(sym), 4);
    Matrix V = rng.invertible(us);
    DefiningEquation moved = build_model(transform_linear(m, V));
    expect(first_order_constancy(moved).constant, "FOC lost under z -> Vz");
    ModifiedSymbol ms = modified_symbol(build_model(m));
    ModifiedSymbol acted = act_on_modified_symbol({GR(1), V}, ms), direct = modified_symbol(moved);
    expect(acted.Xi == direct.Xi, "symbol of moved model differs from the acted symbol");
    for (std::size_t k = 0; k < acted.Omega.size(); ++k)
      expect(in_g00_prime(direct.inv, direct.Xi, acted.Omega[k] - direct.Omega[k]), "Omega differs beyond g'_00");
    ++n;
  }
  VarSpace sp(2, 1);
  SeriesMatrix S(2, 2, sp, 4);
  S.set(0, 0, TruncatedSeries::variable(sp, sp.zeta(0), 4));
  S.set(1, 1, TruncatedSeries::variable(sp, sp.zeta(0), 4).pow(2));
  ModelData obstructed{Matrix::identity(2), S};
  expect(!first_order_constancy(build_model(obstructed)).constant, "obstructed fixture is constant");
  expect(!first_order_constancy(build_model(transform_linear(obstructed, Matrix{{GR(1), GR(2)}, {GR(0), GR(1, 1)}})))
              .constant,
         "obstruction lost under z -> Vz");
  return count_str(n, "random symbols satisfy the composition law and keep their verdicts");
}

const std::vector<std::string> &criterion_names() {
  static const std::vector<std::string> names{
      "closed form equals PDE solver",   "rank identities",       "pseudoconvex form",
      "realized S Taylor coefficients",  "symbol round trip",     "realizability fixtures",
      "symmetry tangency",               "Heisenberg closure",    "normal form",
      "equivalence witness",             "perturbation invariance", "structure group equivariance"};
  return names;
}

} // namespace

int acceptance_count() { return static_cast<int>(criterion_names().size()); }

CriterionResult run_criterion(int id, const AcceptanceOptions &opts) {
  if (id < 1 || id > acceptance_count())
    throw DomainError("no criterion " + std::to_string(id));
  CriterionResult res{id, criterion_names()[static_cast<std::size_t>(id - 1)], false, ""};
  Rng rng(opts.seed + static_cast<std::uint64_t>(id));
  try {
    switch (id) {
    case 1: res.detail = criterion_closed_form(rng); break;
    case 2: res.detail = criterion_rank(rng); break;
    case 3: res.detail = criterion_pseudoconvex(rng); break;
    case 4: res.detail = criterion_bch(rng); break;
    case 5: res.detail = criterion_roundtrip(rng, opts.order); break;
    case 6: res.detail = criterion_realizability(); break;
    case 7: res.detail = criterion_tangency(rng, opts.order); break;
    case 8: res.detail = criterion_heisenberg(rng); break;
    case 9: res.detail = criterion_normal_form(rng); break;
    case 10: res.detail = criterion_witness(); break;
    case 11: res.detail = criterion_perturbation(rng); break;
    case 12: res.detail = criterion_equivariance(rng); break;
    }
    res.pass = true;
  } catch (const Failure &f) {
    res.detail = f.what;
  } catch (const std::exception &e) {
    res.detail = std::string("error: ") + e.what();
  }
  return res;
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F &&f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k)
      f(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++)
        f(k);
    });
  for (auto &th : pool)
    th.join();
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts, unsigned threads) {
  std::vector<CriterionResult> out(static_cast<std::size_t>(acceptance_count()));
  parallel_for(out.size(), threads, [&](std::size_t k) { out[k] = run_criterion(static_cast<int>(k) + 1, opts); });
  return out;
}

namespace {

struct FixtureContext {
  const Json &entry;
  std::string base;
  std::string name;

  std::string path(const char *key) const {
    auto it = entry.find(key);
    if (it == entry.end() || !it->is_string())
      throw SchemaError(name + "." + key, "missing path");
    std::filesystem::path p(it->get<std::string>());
    return p.is_absolute() ? p.string() : (std::filesystem::path(base) / p).string();
  }
  bool has(const char *key) const { return entry.contains(key); }
  int order(int fallback) const {
    auto it = entry.find("order");
    if (it == entry.end())
      return fallback;
    if (!it->is_number_integer() || it->get<int>() < 2)
      throw SchemaError(name + ".order", "expected an integer >= 2");
    return it->get<int>();
  }
  ModelData model() const {
    ModelData m = io::model_from_json(io::read_json_file(path("model")));
    int d = order(m.order());
    if (d > m.order())
      throw SchemaError(name + ".order", "exceeds the order stored in the model");
    m.S = m.S.truncated(d);
    return m;
  }
  DefiningEquation equation() const {
    if (has("eq"))
      return io::equation_from_json(io::read_json_file(path("eq")));
    return build_model(model());
  }
  ModifiedSymbol symbol() const { return io::symbol_from_json(io::read_json_file(path("symbol"))); }
};

std::pair<bool, std::string> run_fixture(const FixtureContext &fx, const std::string &check, int default_order) {
  auto verdict = [](bool v, const std::string &d) { return std::make_pair(v, d); };
  if (check == "verify-rank") {
    RankReport r = verify_rank_condition(fx.equation());
    return verdict(r.holds, r.holds ? "rank identities hold" : "fails at " + r.monomial);
  }
  if (check == "closed-form") {
    ModelData m = fx.model();
    DefiningEquation a = build_model(m), b = reconstruct_from_HS(m), c = pde_propagate_oracle(m);
    bool ok = a.H == c.H && a.S == c.S && b.H == c.H && b.S == c.S;
    return verdict(ok, ok ? "closed forms equal the PDE solver" : "closed forms differ");
  }
  if (check == "foc") {
    FocReport r = first_order_constancy(fx.equation());
    return verdict(r.constant, r.constant ? "constant to first order" : "obstructed");
  }
  if (check == "realizable") {
    RealizabilityReport r = check_realizable(fx.symbol());
    return verdict(r.realizable,
                   r.realizable ? "realizable" : "fails condition " + std::to_string(r.condition));
  }
  if (check == "roundtrip") {
    RoundtripReport r = verify_roundtrip(SymbolInput::from_symbol(fx.symbol()), fx.order(default_order));
    return verdict(r.ok, r.ok ? "round trip recovers the symbol" : r.detail);
  }
  if (check == "tangency") {
    ModelData m = fx.model();
    DefiningEquation eq = build_model(m);
    Vec a(static_cast<std::size_t>(m.s()));
    GR b(1);
    if (fx.has("a"))
      a = io::vec_from_json(fx.entry["a"], fx.name + ".a");
    if (fx.has("b"))
      b = io::gr_from_json(fx.entry["b"], fx.name + ".b");
    bool ok = verify_tangency(eq, transversal_symmetry(eq, a, b)).holds &&
              verify_tangency(eq, transversal_symmetry(m, a, b)).holds &&
              verify_tangency(eq, euler_symmetry(eq.H.space(), m.order() + 2)).holds;
    return verdict(ok, ok ? "transversal and Euler fields tangent" : "tangency fails");
  }
  if (check == "isotropy") {
    SymbolInput in = SymbolInput::from_symbol(fx.symbol());
    Matrix L = io::matrix_from_json(fx.entry.at("L"), fx.name + ".L");
    ModelData m = realize_S_from_symbol(in, fx.order(default_order));
    bool ok = verify_tangency(build_model(m), isotropy_symmetry(m, in, CspElement::from_L(L))).holds;
    return verdict(ok, ok ? "isotropy field tangent" : "isotropy field not tangent");
  }
  if (check == "heisenberg") {
    HeisenbergReport r = heisenberg_closure(fx.equation());
    return verdict(r.holds, r.holds ? "dimension " + std::to_string(r.dimension) : r.detail);
  }
  if (check == "normal-form") {
    ModelData m = fx.model();
    ModelData once = normal_form_reduce(m);
    bool ok = normal_form_reduce(once).S == once.S;
    return verdict(ok, ok ? "idempotent" : "not idempotent");
  }
  if (check == "pivot") {
    ModifiedSymbol sym = fx.symbol();
    PivotTuple p = pivot_select(BigradedSymbol{sym.inv, sym.Xi, true}.s02());
    Json got = io::to_json(p);
    return verdict(!fx.has("pivot") || got == fx.entry["pivot"], "pivot " + got.dump());
  }
  if (check == "witness") {
    ModelData m1 = io::model_from_json(io::read_json_file(fx.path("m1")));
    ModelData m2 = io::model_from_json(io::read_json_file(fx.path("m2")));
    EquivalenceWitness w = io::witness_from_json(io::read_json_file(fx.path("witness")), m1.S.space(),
                                                 std::min(m1.order(), m2.order()));
    WitnessReport r = verify_equivalence_witness(m1, m2, w);
    return verdict(r.holds, r.holds ? "witness verified" : "fails at " + r.monomial);
  }
  throw SchemaError(fx.name + ".check", "unknown check \"" + check + "\"");
}

} // namespace

BatteryReport run_battery(const Json &config, const std::string &base_dir, unsigned threads) {
  if (!config.is_object())
    throw SchemaError("$", "expected an object");
  BatteryReport rep;
  AcceptanceOptions opts;
  if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned())
      throw SchemaError("$.seed", "expected a non-negative integer");
    opts.seed = config["seed"].get<std::uint64_t>();
  }
  if (config.contains("order")) {
    if (!config["order"].is_number_integer() || config["order"].get<int>() < 2)
      throw SchemaError("$.order", "expected an integer >= 2");
    opts.order = config["order"].get<int>();
  }
  std::vector<const Json *> entries;
  if (config.contains("fixtures")) {
    if (!config["fixtures"].is_array())
      throw SchemaError("$.fixtures", "expected an array");
    for (const auto &f : config["fixtures"])
      entries.push_back(&f);
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!entries[k]->is_object())
      continue;
    for (const char *key : {"model", "eq", "symbol", "m1", "m2", "witness"}) {
      auto it = entries[k]->find(key);
      if (it == entries[k]->end() || !it->is_string())
        continue;
      std::filesystem::path p(it->get<std::string>());
      if (!p.is_absolute())
        p = std::filesystem::path(base_dir) / p;
      if (!std::filesystem::exists(p))
        throw SchemaError("$.fixtures[" + std::to_string(k) + "]." + key, "missing fixture " + p.string());
    }
  }
  rep.fixtures.resize(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t k) {
    const Json &entry = *entries[k];
    FixtureResult &out = rep.fixtures[k];
    out.name = "fixtures[" + std::to_string(k) + "]";
    try {
      if (!entry.is_object())
        throw SchemaError(out.name, "expected an object");
      if (entry.contains("name") && entry["name"].is_string())
        out.name = entry["name"].get<std::string>();
      if (!entry.contains("check") || !entry["check"].is_string())
        throw SchemaError(out.name + ".check", "missing check");
      out.check = entry["check"].get<std::string>();
      bool want = true;
      if (entry.contains("expect")) {
        if (!entry["expect"].is_boolean())
          throw SchemaError(out.name + ".expect", "expected a boolean");
        want = entry["expect"].get<bool>();
      }
      auto [verdict, detail] = run_fixture({entry, base_dir, out.name}, out.check, opts.order);
      out.pass = verdict == want;
      out.detail = detail;
    } catch (const std::exception &e) {
      out.pass = false;
      out.detail = std::string("error: ") + e.what();
    }
  });
  std::stable_sort(rep.fixtures.begin(), rep.fixtures.end(),
                   [](const FixtureResult &a, const FixtureResult &b) { return a.name < b.name; });
  if (config.value("acceptance", false))
    rep.criteria = run_acceptance(opts, threads);
  if (rep.fixtures.empty() && rep.criteria.empty())
    rep.warnings.push_back("no fixtures or criteria configured; vacuous pass");
  for (const auto &f : rep.fixtures)
    rep.pass = rep.pass && f.pass;
  for (const auto &c : rep.criteria)
    rep.pass = rep.pass && c.pass;
  return rep;
}

io::Json to_json(const CriterionResult &r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
}

io::Json to_json(const BatteryReport &r) {
  Json fixtures = Json::array(), criteria = Json::array();
  for (const auto &f : r.fixtures)
    fixtures.push_back({{"name", f.name}, {"check", f.check}, {"pass", f.pass}, {"detail", f.detail}});
  for (const auto &c : r.criteria)
    criteria.push_back(to_json(c));
  return {{"pass", r.pass}, {"warnings", r.warnings}, {"fixtures", fixtures}, {"criteria", criteria}};
}

} // namespace crmw
