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

#include "config.h"

#include <algorithm>
#include <set>

#include "qinductive/errors.h"

namespace qinductive::cli {
namespace {

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

template <typename T>
void read(const Json& j, const char* key, T* out) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void require_one_of(const std::string& what, const std::string& value,
                    std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ConfigError(what + " must be one of {" + list + "}, got '" + value + "'");
}

}  // namespace

GridSpec ExperimentConfig::grid_spec() const {
  if (grid == "haar") {
    GridSpec s;
    s.mode = GridMode::kHaar;
    s.seed = seed;
    s.count = grid_count;
    return s;
  }
  return GridSpec::parse(grid);
}

LoccOptions ExperimentConfig::locc_options() const {
  LoccOptions o;
  o.grid = grid_spec();
  o.epsilon.cube_root = epsilon == "cube-root";
  o.epsilon.fixed = epsilon_fixed;
  return o;
}

SBarNormalization ExperimentConfig::normalization() const {
  return s_bar == "sum" ? SBarNormalization::kSum : SBarNormalization::kAverage;
}

Json ExperimentConfig::to_json() const {
  return Json{{"command", command},
              {"seed", seed},
              {"grid", grid_spec().to_string()},
              {"tol", tol},
              {"n", n_values},
              {"k", k_values},
              {"task", task},
              {"overlap", overlap},
              {"loss", loss},
              {"s_bar", s_bar},
              {"epsilon", epsilon},
              {"epsilon_fixed", epsilon_fixed},
              {"family", family},
              {"nx", nx},
              {"ny", ny},
              {"na", na},
              {"kind", kind},
              {"d_A", dims.d_A},
              {"d_X", dims.d_X},
              {"d_Y", dims.d_Y}};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = parse_int(text.substr(0, dots));
    int hi = parse_int(text.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
    out.push_back(parse_int(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_json(const Json& j, ExperimentConfig* cfg) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "command", "seed", "out", "grid", "grid_count", "tol", "n", "k",
      "task", "overlap", "loss", "s_bar", "epsilon", "epsilon_fixed",
      "family", "nx", "ny", "na", "protocol", "kind", "d_A", "d_X", "d_Y",
      "fixture"};
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ConfigError("unknown config key '" + item.key() + "'");
  read(j, "seed", &cfg->seed);
  read(j, "out", &cfg->out);
  read(j, "grid", &cfg->grid);
  read(j, "grid_count", &cfg->grid_count);
  read(j, "tol", &cfg->tol);
  for (const char* key : {"n", "k"}) {
    if (!j.contains(key)) continue;
    auto& target = std::string(key) == "n" ? cfg->n_values : cfg->k_values;
    const Json& v = j.at(key);
    if (v.is_string()) {
      target = parse_int_list(v.get<std::string>());
    } else if (v.is_number_integer()) {
      target = {v.get<int>()};
    } else {
      read(j, key, &target);
    }
  }
  read(j, "task", &cfg->task);
  read(j, "overlap", &cfg->overlap);
  read(j, "loss", &cfg->loss);
  read(j, "s_bar", &cfg->s_bar);
  read(j, "epsilon", &cfg->epsilon);
  read(j, "epsilon_fixed", &cfg->epsilon_fixed);
  read(j, "family", &cfg->family);
  read(j, "nx", &cfg->nx);
  read(j, "ny", &cfg->ny);
  read(j, "na", &cfg->na);
  read(j, "protocol", &cfg->protocol);
  read(j, "kind", &cfg->kind);
  read(j, "d_A", &cfg->dims.d_A);
  read(j, "d_X", &cfg->dims.d_X);
  read(j, "d_Y", &cfg->dims.d_Y);
  read(j, "fixture", &cfg->fixture);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.grid != "haar") GridSpec::parse(cfg.grid);
  if (cfg.grid_count < 1) throw ConfigError("grid_count must be positive");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  for (int n : cfg.n_values)
    if (n < 1) throw ConfigError("n must be positive");
  for (int k : cfg.k_values)
    if (k < 0) throw ConfigError("k must be non-negative");
  require_one_of("task", cfg.task, {"classify"});
  if (cfg.overlap < 0.0 || cfg.overlap > 1.0)
    throw ConfigError("overlap must lie in [0, 1]");
  require_one_of("loss", cfg.loss, {"default", "unit"});
  require_one_of("s_bar", cfg.s_bar, {"average", "sum"});
  require_one_of("epsilon", cfg.epsilon, {"cube-root", "fixed"});
  require_one_of("family", cfg.family, {"product", "locc"});
  require_one_of("kind", cfg.kind,
                 {"random-ns", "crossing", "locc", "identity", "depolarizing"});
  if (cfg.dims.d_A < 1 || cfg.dims.d_X < 1 || cfg.dims.d_Y < 1)
    throw ConfigError("dimensions must be positive");
}

}  // namespace qinductive::cli
