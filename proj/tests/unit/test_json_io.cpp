#include <doctest.h>

#include "helpers.hpp"

#include <crmw/errors.hpp>
#include <crmw/generators.hpp>
#include <crmw/json_io.hpp>

using namespace crmw;
using namespace testing_support;
using crmw::io::Json;

TEST_CASE("series round trip and the documented layout") {
  VarSpace sp(1, 1, true);
  TruncatedSeries f = poly(sp, 4, {{{1, 0, 2, 0, 1}, "1/2-3i"}, {{0, 0, 0, 0, 0}, "7"}});
  Json j = io::to_json(f);
  CHECK(j["vars"] == Json({{"s", 1}, {"r", 1}, {"t", true}}));
  CHECK(j["order"] == 4);
  CHECK(j["grading"] == "total");
  CHECK(j["terms"][0]["exp"] == Json::array({0, 0, 0, 0, 0}));
  CHECK(j["terms"][1]["c"] == "1/2-3i");
  CHECK(io::series_from_json(j, "$") == f);
  CHECK(io::series_from_json(io::parse_json(io::dump(j)), "$") == f);
}

TEST_CASE("model, equation and symbol round trips") {
  Rng rng(61);
  ModelData m = random_model(rng, 2, 2, 4);
  ModelData m2 = io::model_from_json(io::to_json(m));
  CHECK(m2.H0 == m.H0);
  CHECK(m2.S == m.S);
  DefiningEquation eq = build_model(m);
  DefiningEquation eq2 = io::equation_from_json(io::to_json(eq));
  CHECK(eq2.H == eq.H);
  CHECK(eq2.S == eq.S);
  ModifiedSymbol sym = random_realizable_symbol(rng, 2, 1);
  ModifiedSymbol sym2 = io::symbol_from_json(io::to_json(sym));
  CHECK(sym2.inv.H == sym.inv.H);
  CHECK(sym2.Xi == sym.Xi);
  CHECK(sym2.Omega == sym.Omega);
  CHECK(sym2.g00prime == sym.g00prime);
  CspElement x = rng.csp(2);
  CHECK(io::csp_from_json(io::to_json(x), "$") == x);
}

TEST_CASE("series inside models inherit the enclosing variables") {
  Json j = io::parse_json(R"({"s":1,"r":1,"order":3,"H0":[["1"]],
    "S":[[{"terms":[{"exp":[0,0,1,0],"c":"1"}]}]]})");
  ModelData m = io::model_from_json(j);
  CHECK(m.S(0, 0) == TruncatedSeries::variable(VarSpace(1, 1), VarSpace(1, 1).zeta(0), 3));
}

TEST_CASE("schema errors carry the field path") {
  auto path_of = [](const std::string &text) {
    try {
      io::model_from_json(io::parse_json(text));
    } catch (const SchemaError &e) {
      return e.path();
    }
    return std::string("none");
  };
  CHECK(path_of(R"({"s":1,"r":1,"order":3,"H0":[["1"]]})") == "$");
  CHECK(path_of(R"({"s":1,"r":1,"order":3,"H0":[["1x"]],"S":[[{"terms":[]}]]})") == "$.H0[0][0]");
  CHECK(path_of(R"({"s":1,"r":1,"order":3,"H0":[["1"]],"S":[[{"terms":[{"exp":[0,0,1],"c":"1"}]}]]})") ==
        "$.S[0][0].terms[0].exp");
  CHECK(path_of(R"({"s":1,"r":1,"order":3,"H0":[["1"]],"S":[[{"terms":[{"exp":[0,0,4,0],"c":"1"}]}]]})") ==
        "$.S[0][0].terms[0]");
  CHECK(path_of(R"({"s":"one","r":1,"order":3})") == "$.s");
}

TEST_CASE("malformed JSON reports the byte offset") {
  try {
    io::parse_json("{\"s\": 1,, }");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.position() == 9);
  }
}

TEST_CASE("witness parsing truncates g to the model order") {
  Json j = io::parse_json(R"({"U":[["2"]],"g":[{"order":8,"terms":[{"exp":[0,0,1,0],"c":"1/4"},{"exp":[0,0,7,0],"c":"1"}]}]})");
  EquivalenceWitness w = io::witness_from_json(j, VarSpace(1, 1), 4);
  CHECK(w.g[0].order() == 4);
  CHECK(w.g[0].size() == 1);
}
