#pragma once

#include "crmw/model.hpp"
#include "crmw/normalform.hpp"
#include "crmw/realize.hpp"
#include "crmw/symbols.hpp"
#include "crmw/symmetry.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace crmw::io {

using Json = nlohmann::json;

// Malformed text raises ParseError carrying the byte offset.
Json parse_json(const std::string &text);
Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &j);
// Two-space indented dump with a trailing newline.
std::string dump(const Json &j);

// Fallbacks for series nested in a model or equation; keys present in the
// series object must agree with them.
struct SeriesContext {
  VarSpace space;
  int order = 0;
  Grading grading = Grading::Total;
};

Json to_json(const GR &x);
GR gr_from_json(const Json &j, const std::string &path);

Json to_json(const Vec &v);
Vec vec_from_json(const Json &j, const std::string &path);

Json to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j, const std::string &path);

Json to_json(const TruncatedSeries &f);
TruncatedSeries series_from_json(const Json &j, const std::string &path,
                                 const std::optional<SeriesContext> &ctx = std::nullopt);

Json to_json(const SeriesMatrix &m);
SeriesMatrix series_matrix_from_json(const Json &j, const std::string &path, const SeriesContext &ctx);

Json to_json(const ModelData &m);
ModelData model_from_json(const Json &j, const std::string &path = "$");

Json to_json(const DefiningEquation &eq);
DefiningEquation equation_from_json(const Json &j, const std::string &path = "$");

Json to_json(const Involution &inv);
Involution involution_from_json(const Json &j, const std::string &path);

Json to_json(const CspElement &x);
CspElement csp_from_json(const Json &j, const std::string &path);

Json to_json(const ModifiedSymbol &sym);
// g00prime is recomputed; Omega defaults to zero matrices when absent.
ModifiedSymbol symbol_from_json(const Json &j, const std::string &path = "$");
Json to_json(const BigradedSymbol &sym);

Json to_json(const EquivalenceWitness &w);
EquivalenceWitness witness_from_json(const Json &j, const VarSpace &space, int order,
                                     const std::string &path = "$");

Json to_json(const HoloVectorField &x);

Json to_json(const RankReport &r);
Json to_json(const FocReport &r);
Json to_json(const RealizabilityReport &r);
Json to_json(const RoundtripReport &r);
Json to_json(const TangencyReport &r);
Json to_json(const HeisenbergReport &r);
Json to_json(const PivotTuple &p);
Json to_json(const WitnessReport &r);

} // namespace crmw::io
