#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  if (text.empty()) throw UsageError("'" + key + "' is required");
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("'" + key + "': expected a number, got '" + text + "'");
}

}  // namespace

const std::string& Config::str(const std::string& key) const {
  auto it = v_.find(key);
  if (it == v_.end()) throw UsageError("missing setting '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const { return to_double(key, str(key)); }

long Config::integer(const std::string& key) const {
  const double v = num(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw UsageError("'" + key + "': expected an integer");
  return static_cast<long>(v);
}

std::uint64_t Config::u64(const std::string& key) const {
  const std::string& s = str(key);
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos == s.size() && s.find('-') == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("'" + key + "': expected a non-negative integer, got '" + s + "'");
}

bool Config::flag(const std::string& key) const {
  const std::string& s = str(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw UsageError("'" + key + "': expected true or false, got '" + s + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Config resolve(const std::vector<OptSpec>& specs, const std::map<std::string, std::string>& file,
               const std::map<std::string, std::string>& flags) {
  std::map<std::string, std::string> v;
  std::set<std::string> known;
  for (const auto& s : specs) {
    known.insert(s.key);
    v[s.key] = s.dflt;
  }
  for (const auto* src : {&file, &flags})
    for (const auto& [k, val] : *src) {
      if (!known.count(k)) throw UsageError("unknown setting '" + k + "'");
      v[k] = val;
    }
  return Config(std::move(v));
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const auto c = text.find(':', start);
    parts.push_back(text.substr(start, c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  if (parts.size() == 1) return {to_double("range", parts[0])};
  if (parts.size() != 3) throw UsageError("range '" + text + "': expected a:b:step");
  const double a = to_double("range", parts[0]), b = to_double("range", parts[1]), h = to_double("range", parts[2]);
  if (!(h > 0.0) || !(b >= a)) throw UsageError("range '" + text + "': need step > 0 and b >= a");
  const long n = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
  if (n > 10000000) throw UsageError("range '" + text + "': too many points");
  std::vector<double> out(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = a + static_cast<double>(i) * h;
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace cli
