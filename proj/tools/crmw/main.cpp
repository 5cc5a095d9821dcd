#include <crmw/battery.hpp>
#include <crmw/errors.hpp>
#include <crmw/json_io.hpp>
#include <crmw/normalform.hpp>
#include <crmw/realize.hpp>
#include <crmw/symmetry.hpp>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace {

using crmw::io::Json;

enum Exit { kPass = 0, kFail = 1, kInput = 2, kInternal = 3 };

struct Options {
  std::string model, eq, symbol, witness, m1, m2, config, out;
  int order = 6;
  bool json = false, foc = false, check = false;
};

struct Outcome {
  bool pass = true;
  Json report = Json::object();
  std::string summary;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw crmw::ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sha256_hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

class Runner {
public:
  Runner(const Options &opt, bool order_given) : opt_(opt), order_given_(order_given) {}

  Json load(const std::string &role, const std::string &path) {
    if (path.empty())
      throw crmw::SchemaError("--" + role, "required");
    std::string bytes = read_file(path);
    inputs_[role] = "sha256:" + sha256_hex(bytes);
    return crmw::io::parse_json(bytes);
  }

  int order_for(int stored) const {
    if (!order_given_)
      return stored;
    if (opt_.order > stored)
      throw crmw::SchemaError("--order", "exceeds the stored order " + std::to_string(stored));
    return opt_.order;
  }

  crmw::ModelData model(const std::string &role, const std::string &path) {
    crmw::ModelData m = crmw::io::model_from_json(load(role, path));
    m.S = m.S.truncated(order_for(m.order()));
    return m;
  }

  crmw::DefiningEquation equation() {
    if (opt_.eq.empty() && opt_.model.empty())
      throw crmw::SchemaError("--eq", "one of --eq or --model is required");
    if (opt_.eq.empty())
      return crmw::build_model(model("model", opt_.model));
    crmw::DefiningEquation eq = crmw::io::equation_from_json(load("eq", opt_.eq));
    int d = order_for(eq.order());
    return {eq.H.truncated(d), eq.S.truncated(d)};
  }

  crmw::ModifiedSymbol symbol() { return crmw::io::symbol_from_json(load("symbol", opt_.symbol)); }

  void emit(const Json &j) {
    if (!opt_.out.empty()) {
      crmw::io::write_json_file(opt_.out, j);
      outputs_.push_back(opt_.out);
    }
  }

  Json inputs() const {
    Json j = Json::object();
    for (const auto &[k, v] : inputs_)
      j[k] = v;
    return j;
  }

  const Options &opt() const { return opt_; }

private:
  const Options &opt_;
  bool order_given_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
};

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *cap = std::getenv("CRMW_THREADS")) {
    char *end = nullptr;
    unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && v > 0)
      n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::string rank_summary(const crmw::RankReport &r) {
  if (r.holds)
    return "rank identities hold through order " + std::to_string(r.checked_order);
  return "rank identity " + std::to_string(r.equation) + " fails at monomial " + r.monomial;
}

Outcome cmd_build(Runner &run) {
  crmw::ModelData m = run.model("model", run.opt().model);
  crmw::DefiningEquation eq = crmw::build_model(m);
  Outcome o;
  o.report["order"] = m.order();
  if (run.opt().out.empty())
    o.report["equation"] = crmw::io::to_json(eq);
  run.emit(crmw::io::to_json(eq));
  o.summary = "built s=" + std::to_string(m.s()) + " r=" + std::to_string(m.r()) + " model at order " +
              std::to_string(m.order());
  return o;
}

Outcome cmd_verify_rank(Runner &run) {
  crmw::RankReport r = crmw::verify_rank_condition(run.equation());
  return {r.holds, {{"rank", crmw::io::to_json(r)}}, rank_summary(r)};
}

Outcome cmd_symbol(Runner &run) {
  crmw::DefiningEquation eq = run.equation();
  Outcome o;
  crmw::BigradedSymbol bg = crmw::bigraded_symbol_at_zero(eq);
  o.report["bigraded"] = crmw::io::to_json(bg);
  if (!run.opt().foc) {
    o.pass = bg.two_nondegenerate;
    run.emit(o.report["bigraded"]);
    o.summary = bg.two_nondegenerate ? "bigraded symbol computed" : "not 2-nondegenerate at 0";
    return o;
  }
  crmw::FocReport f = crmw::first_order_constancy(eq);
  o.report["foc"] = crmw::io::to_json(f);
  o.pass = f.constant;
  if (f.constant) {
    crmw::ModifiedSymbol sym = crmw::modified_symbol(eq);
    o.report["symbol"] = crmw::io::to_json(sym);
    run.emit(o.report["symbol"]);
    o.summary = "constant to first order; modified symbol computed";
  } else {
    o.summary = "not constant to first order";
  }
  return o;
}

Outcome cmd_realizable(Runner &run) {
  crmw::RealizabilityReport r = crmw::check_realizable(run.symbol());
  return {r.realizable, {{"realizability", crmw::io::to_json(r)}},
          r.realizable ? "realizable" : "condition " + std::to_string(r.condition) + " fails"};
}

Outcome cmd_realize(Runner &run) {
  crmw::SymbolInput in = crmw::SymbolInput::from_symbol(run.symbol());
  crmw::ModelData m = crmw::realize_S_from_symbol(in, run.opt().order);
  Outcome o;
  if (run.opt().out.empty())
    o.report["model"] = crmw::io::to_json(m);
  run.emit(crmw::io::to_json(m));
  o.summary = "realized at order " + std::to_string(m.order());
  if (run.opt().check) {
    crmw::RoundtripReport r = crmw::verify_roundtrip(in, run.opt().order);
    o.report["roundtrip"] = crmw::io::to_json(r);
    o.pass = r.ok;
    o.summary += r.ok ? "; round trip recovers the symbol" : "; round trip fails: " + r.detail;
  }
  return o;
}

Outcome cmd_symmetries(Runner &run) {
  crmw::ModelData m = run.model("model", run.opt().model);
  crmw::DefiningEquation eq = crmw::build_model(m);
  const auto s = static_cast<std::size_t>(m.s());
  std::vector<std::pair<std::string, crmw::HoloVectorField>> fields;
  for (std::size_t j = 0; j < s; ++j)
    for (int im = 0; im < 2; ++im) {
      crmw::Vec a(s);
      a[j] = im ? crmw::GR(0, 1) : crmw::GR(1);
      fields.push_back({(im ? "i*e" : "e") + std::to_string(j + 1), crmw::transversal_symmetry(m, a, crmw::GR(0))});
    }
  fields.push_back({"w", crmw::transversal_symmetry(m, crmw::Vec(s), crmw::GR(1))});
  fields.push_back({"euler", crmw::euler_symmetry(eq.H.space(), m.order() + 2)});
  Outcome o;
  Json arr = Json::array();
  int tangent = 0;
  for (const auto &[name, x] : fields) {
    Json f{{"name", name}, {"field", crmw::io::to_json(x)}};
    if (run.opt().check) {
      crmw::TangencyReport t = crmw::verify_tangency(eq, x);
      f["tangency"] = crmw::io::to_json(t);
      o.pass = o.pass && t.holds;
      tangent += t.holds ? 1 : 0;
    }
    arr.push_back(std::move(f));
  }
  o.report["fields"] = arr;
  if (run.opt().check) {
    crmw::HeisenbergReport h = crmw::heisenberg_closure(eq);
    o.report["heisenberg"] = crmw::io::to_json(h);
    o.pass = o.pass && h.holds;
    o.summary = std::to_string(tangent) + "/" + std::to_string(fields.size()) + " fields tangent; Heisenberg " +
                (h.holds ? "closes" : "fails");
  } else {
    o.summary = std::to_string(fields.size()) + " fields emitted";
  }
  run.emit(o.report["fields"]);
  return o;
}

Outcome cmd_normalize(Runner &run) {
  crmw::ModelData m = run.model("model", run.opt().model);
  crmw::ModelData nf = crmw::normal_form_reduce(m);
  std::vector<crmw::Matrix> s02;
  const crmw::VarSpace &sp = m.S.space();
  for (int a = 0; a < m.r(); ++a)
    s02.push_back(m.S.differentiate(sp.zeta(a)).constant_part());
  Outcome o;
  o.report["pivot"] = crmw::io::to_json(crmw::pivot_select(s02));
  if (run.opt().out.empty())
    o.report["model"] = crmw::io::to_json(nf);
  run.emit(crmw::io::to_json(nf));
  o.summary = "normal form with pivots " + o.report["pivot"].dump();
  return o;
}

Outcome cmd_equiv(Runner &run) {
  crmw::ModelData a = run.model("m1", run.opt().m1);
  crmw::ModelData b = run.model("m2", run.opt().m2);
  crmw::EquivalenceWitness w = crmw::io::witness_from_json(run.load("witness", run.opt().witness), a.S.space(),
                                                           std::min(a.order(), b.order()));
  crmw::WitnessReport r = crmw::verify_equivalence_witness(a, b, w);
  return {r.holds, {{"witness", crmw::io::to_json(r)}},
          r.holds ? "witness verified" : "witness fails at " + r.monomial};
}

Outcome cmd_battery(Runner &run) {
  const std::string &path = run.opt().config;
  Json config = run.load("config", path);
  std::string base = std::filesystem::path(path).parent_path().string();
  crmw::BatteryReport rep = crmw::run_battery(config, base.empty() ? "." : base, thread_cap());
  Outcome o{rep.pass, {{"battery", crmw::to_json(rep)}}, ""};
  int ok = 0;
  for (const auto &f : rep.fixtures)
    ok += f.pass ? 1 : 0;
  for (const auto &c : rep.criteria)
    ok += c.pass ? 1 : 0;
  std::ostringstream os;
  os << ok << "/" << rep.fixtures.size() + rep.criteria.size() << " checks pass";
  for (const auto &f : rep.fixtures)
    if (!f.pass)
      os << "\n  FAIL " << f.name << ": " << f.detail;
  for (const auto &c : rep.criteria)
    if (!c.pass)
      os << "\n  FAIL criterion " << c.id << ": " << c.detail;
  for (const auto &w : rep.warnings)
    os << "\n  warning: " << w;
  o.summary = os.str();
  return o;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"crmw: exact series for 2-nondegenerate CR models"};
  app.require_subcommand(1);
  Options opt;
  struct Sub {
    const char *name, *help;
    Outcome (*fn)(Runner &);
  };
  const std::vector<Sub> subs{
      {"build", "build the defining equation of a model", cmd_build},
      {"verify-rank", "check the rank identities of an equation", cmd_verify_rank},
      {"symbol", "bigraded or modified symbol at the origin", cmd_symbol},
      {"realizable", "decide realizability of a modified symbol", cmd_realizable},
      {"realize", "realize a modified symbol as a model", cmd_realize},
      {"symmetries", "transversal and Euler symmetry fields", cmd_symmetries},
      {"normalize", "reduce a model to normal form", cmd_normalize},
      {"equiv", "verify an equivalence witness", cmd_equiv},
      {"battery", "run a fixture battery", cmd_battery},
  };
  std::map<CLI::App *, const Sub *> dispatch;
  std::map<CLI::App *, CLI::Option *> order_opts;
  for (const auto &s : subs) {
    CLI::App *sub = app.add_subcommand(s.name, s.help);
    dispatch[sub] = &s;
    auto name = std::string(s.name);
    if (name == "build" || name == "symmetries" || name == "normalize")
      sub->add_option("--model", opt.model, "model JSON")->required();
    if (name == "verify-rank" || name == "symbol") {
      auto *e = sub->add_option("--eq", opt.eq, "equation JSON");
      auto *m = sub->add_option("--model", opt.model, "model JSON");
      e->excludes(m);
    }
    if (name == "realizable" || name == "realize")
      sub->add_option("--symbol", opt.symbol, "modified symbol JSON")->required();
    if (name == "equiv") {
      sub->add_option("--m1", opt.m1, "first model JSON")->required();
      sub->add_option("--m2", opt.m2, "second model JSON")->required();
      sub->add_option("--witness", opt.witness, "witness JSON")->required();
    }
    if (name == "battery")
      sub->add_option("config,--config", opt.config, "battery config JSON")->required();
    if (name != "battery" && name != "realizable" && name != "equiv")
      order_opts[sub] = sub->add_option("--order", opt.order, "truncation order")->check(CLI::Range(2, 16));
    if (name == "build" || name == "symbol" || name == "realize" || name == "normalize" || name == "symmetries")
      sub->add_option("--out", opt.out, "output path");
    if (name == "symbol")
      sub->add_flag("--foc", opt.foc, "solve first-order constancy and emit the modified symbol");
    if (name == "symmetries" || name == "realize")
      sub->add_flag("--check", opt.check, "verify the output");
    sub->add_flag("--json", opt.json, "suppress the stderr summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInput;
  }

  CLI::App *sub = app.get_subcommands().front();
  const Sub &cmd = *dispatch.at(sub);
  bool order_given = order_opts.count(sub) && order_opts[sub]->count() > 0;
  Runner run(opt, order_given);
  Json report{{"command", cmd.name}};
  int code = kPass;
  std::string summary;
  try {
    Outcome o = cmd.fn(run);
    report["inputs"] = run.inputs();
    report["pass"] = o.pass;
    for (auto &[k, v] : o.report.items())
      report[k] = v;
    code = o.pass ? kPass : kFail;
    summary = std::string(o.pass ? "PASS " : "FAIL ") + cmd.name + ": " + o.summary;
  } catch (const crmw::ParseError &e) {
    report["inputs"] = run.inputs();
    report["error"] = {{"kind", "parse"}, {"message", e.what()}, {"position", e.position()}};
    code = kInput;
  } catch (const crmw::SchemaError &e) {
    report["inputs"] = run.inputs();
    report["error"] = {{"kind", "schema"}, {"message", e.what()}, {"path", e.path()}};
    code = kInput;
  } catch (const crmw::InternalError &e) {
    report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    code = kInternal;
  } catch (const crmw::Error &e) {
    report["inputs"] = run.inputs();
    report["error"] = {{"kind", "domain"}, {"message", e.what()}};
    code = kInput;
  }
  if (code == kInput || code == kInternal)
    summary = std::string("ERROR ") + cmd.name + ": " + report["error"]["message"].get<std::string>();
  std::cout << crmw::io::dump(report);
  if (!opt.json)
    std::cerr << summary << "\n";
  return code;
}
