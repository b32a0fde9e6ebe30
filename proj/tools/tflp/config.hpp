#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

// Thrown for malformed flags, config files or manifests (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptSpec {
  std::string key;
  std::string dflt;
  std::string help;
};

// Fully resolved key=value settings of one command.
class Config {
 public:
  Config() = default;
  explicit Config(std::map<std::string, std::string> values) : v_(std::move(values)) {}

  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key) const;
  bool has(const std::string& key) const { return v_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { v_[key] = value; }
  const std::map<std::string, std::string>& values() const { return v_; }

 private:
  std::map<std::string, std::string> v_;
};

// key=value lines, '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

// defaults < file < flags; keys outside `specs` are rejected.
Config resolve(const std::vector<OptSpec>& specs, const std::map<std::string, std::string>& file,
               const std::map<std::string, std::string>& flags);

// "a:b:step" -> a, a+step, ..., up to b inclusive; a single number gives one value.
std::vector<double> parse_range(const std::string& text);

std::string fmt(double v);

}  // namespace cli
