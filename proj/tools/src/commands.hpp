#pragma once

#include <string>
#include <vector>

#include "seedner/config.hpp"

namespace seedner::cli {

// One configuration key accepted by a subcommand. Every key can come from the
// --config file or from a --<name> flag; flags win.
struct KeySpec {
  std::string name;
  std::string help;
};

struct Command {
  std::string name;
  std::string summary;
  std::vector<KeySpec> keys;
  void (*run)(const RunConfig&);
};

const std::vector<Command>& commands();

void run_split(const RunConfig& cfg);
void run_train(const RunConfig& cfg);
void run_adapt(const RunConfig& cfg);
void run_bootstrap(const RunConfig& cfg);
void run_predict(const RunConfig& cfg);
void run_eval(const RunConfig& cfg);
void run_synth(const RunConfig& cfg);
void run_sweep(const RunConfig& cfg);

}  // namespace seedner::cli
