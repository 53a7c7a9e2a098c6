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


#ifndef QINDUCTIVE_TOOLS_CONFIG_H_
#define QINDUCTIVE_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qinductive/risk.h"
#include "qinductive/serialize.h"

namespace qinductive::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

// Every field can come from the --config JSON file; command-line flags
// override file values.
struct ExperimentConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::string out;  // empty means stdout
  std::string grid = "haar";
  int grid_count = 5000;
  double tol = 1e-8;
  std::vector<int> n_values;
  std::vector<int> k_values{0, 1};

  // risk-gap
  std::string task = "classify";
  double overlap = 0.6;
  std::string loss = "default";  // default | unit
  std::string s_bar = "average";
  std::string epsilon = "cube-root";  // cube-root | fixed
  double epsilon_fixed = 0.2;

  // definetti
  std::string family = "product";  // product | locc

  // classical-demo
  int nx = 2;
  int ny = 2;
  int na = 2;
  std::string protocol;  // JSON table path

  // gen-channel
  std::string kind = "random-ns";
  ChannelDims dims{1, 2, 2, 2};

  // verify
  std::string fixture;  // channel JSON that must be CPTP and non-signalling

  GridSpec grid_spec() const;
  LoccOptions locc_options() const;
  SBarNormalization normalization() const;
  Json to_json() const;
};

// "3", "1..4", "4,8,16" or a JSON array of integers.
std::vector<int> parse_int_list(const std::string& text);

// Applies the keys present in `j` on top of `cfg`. Unknown keys are a
// ConfigError so that typos do not silently fall back to defaults.
void apply_json(const Json& j, ExperimentConfig* cfg);

void validate(const ExperimentConfig& cfg);

}  // namespace qinductive::cli

#endif  // QINDUCTIVE_TOOLS_CONFIG_H_
