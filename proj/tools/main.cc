// Copyright 2026 The qinductive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "config.h"
#include "qinductive/errors.h"
#include "qinductive/serialize.h"

namespace {

using qinductive::Json;
using namespace qinductive::cli;

enum class Kind { kInt, kUint, kDouble, kString };

struct Flag {
  const char* name;  // command-line spelling
  const char* key;   // config key
  Kind kind;
  const char* help;
};

const std::vector<Flag> kCommonFlags{
    {"--seed", "seed", Kind::kUint, "RNG seed"},
    {"--out", "out", Kind::kString, "output path (default stdout)"},
    {"--grid", "grid", Kind::kString, "haar, haar:SEED:COUNT or design"},
    {"--tol", "tol", Kind::kDouble, "check tolerance"},
    {"--n", "n", Kind::kString, "instance counts: 3, 1..4 or 4,8,16"},
};

const std::map<std::string, std::vector<Flag>> kCommandFlags{
    {"verify",
     {{"--fixture", "fixture", Kind::kString,
       "channel JSON that must be CPTP and non-signalling"}}},
    {"risk-gap",
     {{"--task", "task", Kind::kString, "learning task (classify)"},
      {"--overlap", "overlap", Kind::kDouble, "|<psi_0|psi_1>| in [0, 1]"},
      {"--loss", "loss", Kind::kString, "default or unit (S = 1)"},
      {"--s-bar", "s_bar", Kind::kString, "average or sum over instances"},
      {"--epsilon", "epsilon", Kind::kString, "cube-root or fixed"},
      {"--epsilon-fixed", "epsilon_fixed", Kind::kDouble,
       "epsilon when --epsilon fixed"},
      {"--grid-count", "grid_count", Kind::kInt, "points for plain 'haar'"}}},
    {"definetti",
     {{"--family", "family", Kind::kString, "product or locc"},
      {"--k", "k", Kind::kString, "marginal sizes, e.g. 0,1"},
      {"--grid-count", "grid_count", Kind::kInt, "points for plain 'haar'"}}},
    {"classical-demo",
     {{"--nx", "nx", Kind::kInt, "input alphabet size"},
      {"--ny", "ny", Kind::kInt, "label alphabet size"},
      {"--na", "na", Kind::kInt, "training alphabet size"},
      {"--protocol", "protocol", Kind::kString, "protocol table JSON"}}},
    {"gen-channel",
     {{"--kind", "kind", Kind::kString,
       "random-ns, crossing, locc, identity or depolarizing"},
      {"--dA", "d_A", Kind::kInt, "training register dimension"},
      {"--dX", "d_X", Kind::kInt, "input dimension"},
      {"--dY", "d_Y", Kind::kInt, "output dimension"}}},
};

const std::map<std::string, const char*> kDescriptions{
    {"verify", "run the invariant suite and print a JSON report"},
    {"risk-gap", "collective vs reconstructed LOCC risk per n (CSV)"},
    {"definetti", "de Finetti approximation errors per (n, k) (CSV)"},
    {"classical-demo", "classical classifier-mixture reduction (JSON)"},
    {"gen-channel", "write a channel fixture (JSON)"},
};

Json flag_value(const Flag& f, const std::string& text) {
  try {
    switch (f.kind) {
      case Kind::kInt: {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case Kind::kUint: {
        std::size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') break;
        return v;
      }
      case Kind::kDouble: {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case Kind::kString:
        return text;
    }
  } catch (const std::exception&) {
  }
  throw qinductive::ConfigError(std::string(f.name) + ": cannot parse '" +
                                text + "'");
}

bool is_config_error(const std::exception& e) {
  return dynamic_cast<const qinductive::ConfigError*>(&e) ||
         dynamic_cast<const qinductive::DesignUnavailable*>(&e) ||
         dynamic_cast<const qinductive::DimensionError*>(&e) ||
         dynamic_cast<const qinductive::LabelError*>(&e) ||
         dynamic_cast<const qinductive::TooLargeError*>(&e);
}

int run(int argc, char** argv) {
  CLI::App app{"qinductive experiment runner"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::vector<std::pair<const Flag*, CLI::Option*>>> bound;

  for (const auto& [name, extra] : kCommandFlags) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--config", config_path, "JSON config; flags override it");
    std::vector<const Flag*> flags;
    for (const auto& f : kCommonFlags) flags.push_back(&f);
    for (const auto& f : extra) flags.push_back(&f);
    for (const Flag* f : flags) {
      CLI::Option* opt =
          sub->add_option(f->name, values[name][f->key], f->help);
      bound[name].emplace_back(f, opt);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig cfg;
    if (!config_path.empty())
      apply_json(qinductive::read_json_file(config_path), &cfg);
    Json overrides = Json::object();
    for (const auto& [flag, opt] : bound[command])
      if (opt->count() > 0)
        overrides[flag->key] = flag_value(*flag, values[command][flag->key]);
    apply_json(overrides, &cfg);
    cfg.command = command;

    CommandOutput result = run_command(cfg);
    if (cfg.out.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream os(cfg.out, std::ios::binary);
      if (!os) throw qinductive::ConfigError("cannot write '" + cfg.out + "'");
      os << result.text;
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfigError : kExitCheckFailure;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
