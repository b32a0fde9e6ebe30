#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace cli {

struct Outcome {
  int exit_code = 0;
  std::vector<std::string> outputs;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
};

struct Command {
  std::string name;
  std::string summary;
  std::vector<std::string> choices;  // allowed values of the positional argument
  std::vector<OptSpec> options;
  std::function<Outcome(const std::string& what, const Config& cfg)> run;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

// Runs the command and, when it produced files, writes <out>.manifest.json next to them.
int execute(const Command& cmd, const std::string& what, const Config& cfg);

// Re-runs the command recorded in a manifest; out_override replaces the recorded output path.
int replay(const std::string& manifest_path, const std::string& out_override);

Outcome run_verify(const std::string& suite, const Config& cfg);

}  // namespace cli
