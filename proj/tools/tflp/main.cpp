#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "tflp/errors.hpp"

namespace {

// 0 ok, 1 verification failure, 2 usage, 3 parameter, 4 numeric tolerance, 5 io
int exit_code_for(tflp::ErrorKind k) {
  switch (k) {
    case tflp::ErrorKind::parameter:
    case tflp::ErrorKind::domain:
    case tflp::ErrorKind::length:
    case tflp::ErrorKind::alignment:
      return 3;
    case tflp::ErrorKind::tolerance:
    case tflp::ErrorKind::overflow:
      return 4;
    case tflp::ErrorKind::io:
      return 5;
  }
  return 4;
}

std::string flag_name(std::string key) {
  for (auto& ch : key)
    if (ch == '_') ch = '-';
  return "--" + key;
}

struct Parsed {
  std::string what;
  std::string config_file;
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> opts;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tempered fractional Levy processes: simulation, analytics, estimation, verification"};
  app.require_subcommand(1);
  std::map<std::string, std::unique_ptr<Parsed>> parsed;
  for (const auto& cmd : cli::commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.summary);
    auto st = std::make_unique<Parsed>();
    sub->add_option("what", st->what, "one of the listed choices")
        ->required()
        ->check(CLI::IsMember(cmd.choices));
    sub->add_option("--config", st->config_file, "key=value file (flags take precedence)");
    for (const auto& o : cmd.options) {
      std::string help = o.help + (o.dflt.empty() ? "" : " [" + o.dflt + "]");
      st->opts[o.key] = sub->add_option(flag_name(o.key), st->flags[o.key], help);
    }
    parsed[cmd.name] = std::move(st);
  }
  std::string manifest, replay_out;
  auto* rp = app.add_subcommand("replay", "re-run a command from its manifest");
  rp->add_option("manifest", manifest, "manifest written by a previous run")->required();
  rp->add_option("--out", replay_out, "write outputs here instead of the recorded path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (rp->parsed()) return cli::replay(manifest, replay_out);
    for (const auto& cmd : cli::commands()) {
      if (!app.got_subcommand(cmd.name)) continue;
      auto& st = *parsed[cmd.name];
      std::map<std::string, std::string> given;
      for (const auto& [k, opt] : st.opts)
        if (opt->count() > 0) given[k] = st.flags[k];
      std::map<std::string, std::string> file;
      if (!st.config_file.empty()) file = cli::read_config_file(st.config_file);
      return cli::execute(cmd, st.what, cli::resolve(cmd.options, file, given));
    }
  } catch (const cli::UsageError& e) {
    std::fprintf(stderr, "tflp: %s\n", e.what());
    return 2;
  } catch (const tflp::Error& e) {
    std::fprintf(stderr, "tflp: %s error: %s\n", tflp::to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tflp: %s\n", e.what());
    return 2;
  }
  return 2;
}
