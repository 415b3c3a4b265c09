#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "subdist/group_models.hpp"
#include "subdist/run_config.hpp"

namespace subdist {

inline constexpr int kSchemaVersion = 1;
std::string version();

// A rectangular result; every numeric column is paired with an exactness_flag column.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

std::string to_csv(const Table& table);
nlohmann::ordered_json to_json(const Table& table);

struct OpResult {
  std::string operation;
  std::vector<Table> tables;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct RunResult {
  std::vector<OpResult> results;
  std::vector<std::string> files;  // written artifacts, manifest last
  std::vector<StageTiming> timings;
};

// Executes every operation of the config. With an output directory, writes one
// file per table (csv) or per operation (json) plus manifest.json; otherwise
// prints the tables to `out`. Table bytes depend only on the config.
RunResult run(const RunConfig& config, std::ostream& out);

// Reads words such as "a^6 b^-2 a" (generator names with optional integer
// exponents, separated by spaces) or "e" for the identity.
Element parse_element(const GroupModel& model, const std::string& text);

}  // namespace subdist
