#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

// Column-major table written as CSV: line 1 column names, line 2 units, then data.
struct Table {
  std::vector<std::string> names;
  std::vector<std::string> units;
  std::vector<std::vector<double>> columns;
};

void write_csv(const std::string& path, const Table& t);

// Reads numeric columns; leading lines whose first field is not a number are headers.
// Errors carry the offending line number.
std::vector<std::vector<double>> read_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::ordered_json read_json(const std::string& path);

}  // namespace cli
