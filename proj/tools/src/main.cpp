#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "seedner/error.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Positional arguments double as keys: `seedner eval gold.conll pred.conll`.
const std::map<std::string, std::vector<std::string>> kPositional = {
    {"eval", {"gold", "pred"}},
};

bool is_positional(const std::string& command, const std::string& key) {
  auto it = kPositional.find(command);
  if (it == kPositional.end()) return false;
  return std::find(it->second.begin(), it->second.end(), key) != it->second.end();
}

int fail(int code, const std::string& what) {
  std::cerr << "seedner: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using seedner::cli::commands;

  CLI::App app{"Seed-set NER: CRF tagging, embedding adaptation and self-training"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "seedner 0.1.0");

  struct Bound {
    CLI::App* sub;
    const seedner::cli::Command* command;
    std::string config_path;
    std::map<std::string, std::string> values;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());

  for (const auto& cmd : commands()) {
    auto& b = bound.emplace_back();
    b.command = &cmd;
    b.sub = app.add_subcommand(cmd.name, cmd.summary);
    b.sub->add_option("--config", b.config_path, "key = value configuration file");
    for (const auto& key : cmd.keys) {
      const std::string names =
          is_positional(cmd.name, key.name) ? key.name + ",--" + key.name : "--" + key.name;
      b.sub->add_option(names, b.values[key.name], key.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  for (auto& b : bound) {
    if (!b.sub->parsed()) continue;
    try {
      seedner::RunConfig cfg;
      if (!b.config_path.empty()) cfg = seedner::RunConfig::load(b.config_path);
      for (const auto& key : b.command->keys) {
        const std::string lookup =
            is_positional(b.command->name, key.name) ? key.name : "--" + key.name;
        if (b.sub->get_option(lookup)->count() > 0) cfg.set(key.name, b.values[key.name]);
      }
      b.command->run(cfg);
      return kOk;
    } catch (const seedner::ConfigError& e) {
      return fail(kUsage, e.what());
    } catch (const seedner::NumericalError& e) {
      return fail(kNumerical, std::string("numerical failure: ") + e.what());
    } catch (const seedner::DataError& e) {
      return fail(kData, e.what());
    } catch (const std::exception& e) {
      return fail(kData, e.what());
    }
  }
  return kUsage;
}
