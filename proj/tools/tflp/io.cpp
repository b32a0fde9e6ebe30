#include "io.hpp"

#include <fstream>
#include <sstream>

#include "config.hpp"
#include "tflp/errors.hpp"

namespace cli {

void write_csv(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) tflp::fail(tflp::ErrorKind::io, "cannot write '" + path + "'");
  auto line = [&](const std::vector<std::string>& v) {
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '\n';
  };
  line(t.names);
  line(t.units);
  const size_t rows = t.columns.empty() ? 0 : t.columns.front().size();
  std::string buf;
  for (size_t r = 0; r < rows; ++r) {
    buf.clear();
    for (size_t c = 0; c < t.columns.size(); ++c) {
      if (c) buf += ',';
      buf += fmt(t.columns[c][r]);
    }
    buf += '\n';
    out << buf;
  }
  if (!out) tflp::fail(tflp::ErrorKind::io, "write to '" + path + "' failed");
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) tflp::fail(tflp::ErrorKind::io, "cannot open '" + path + "'");
  std::vector<std::vector<double>> cols;
  std::string line;
  int lineno = 0;
  bool data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    std::vector<double> row;
    bool ok = true;
    for (const auto& s : fields) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(s, &pos));
        ok = ok && pos == s.size();
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      if (!data) continue;
      tflp::fail(tflp::ErrorKind::io, path + ":" + std::to_string(lineno) + ": non-numeric field");
    }
    if (!data) {
      cols.resize(row.size());
      data = true;
    }
    if (row.size() != cols.size())
      tflp::fail(tflp::ErrorKind::io, path + ":" + std::to_string(lineno) + ": expected " +
                                          std::to_string(cols.size()) + " fields, got " +
                                          std::to_string(row.size()));
    for (size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
  }
  if (!data) tflp::fail(tflp::ErrorKind::io, path + ": no data rows");
  return cols;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) tflp::fail(tflp::ErrorKind::io, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) tflp::fail(tflp::ErrorKind::io, "cannot open '" + path + "'");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    tflp::fail(tflp::ErrorKind::io, path + ": " + e.what());
  }
}

}  // namespace cli
