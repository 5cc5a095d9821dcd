#pragma once

#include "crmw/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace crmw {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240607;
  int order = 6;
};

int acceptance_count();
CriterionResult run_criterion(int id, const AcceptanceOptions &opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts, unsigned threads = 1);

struct FixtureResult {
  std::string name;
  std::string check;
  bool pass = false;
  std::string detail;
};

struct BatteryReport {
  bool pass = true;
  std::vector<std::string> warnings;
  std::vector<FixtureResult> fixtures;     // sorted by name
  std::vector<CriterionResult> criteria;   // when requested by the config
};

// Config: {"fixtures": [{"name", "check", inputs..., "expect"}], "acceptance": bool,
// "seed": int, "order": int}. Relative paths resolve against base_dir.
// Throws SchemaError naming the fixture when a referenced file does not exist.
BatteryReport run_battery(const io::Json &config, const std::string &base_dir, unsigned threads = 1);

io::Json to_json(const CriterionResult &r);
io::Json to_json(const BatteryReport &r);

} // namespace crmw
