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


#ifndef QINDUCTIVE_TOOLS_COMMANDS_H_
#define QINDUCTIVE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "config.h"
#include "qinductive/channels.h"
#include "qinductive/definetti.h"
#include "qinductive/risk.h"

namespace qinductive::cli {

struct CommandOutput {
  int exit_code = kExitPass;
  std::string text;
};

CommandOutput cmd_verify(const ExperimentConfig& cfg);
CommandOutput cmd_risk_gap(const ExperimentConfig& cfg);
CommandOutput cmd_definetti(const ExperimentConfig& cfg);
CommandOutput cmd_classical_demo(const ExperimentConfig& cfg);
CommandOutput cmd_gen_channel(const ExperimentConfig& cfg);
CommandOutput run_command(const ExperimentConfig& cfg);

// Shortest round-trip decimal for a double, so CSV files are byte-stable.
std::string format_double(double v);

// Qubit measure-and-prepare family: computational-basis measurement of a
// qubit training register, then one of two seeded unitaries on every test
// instance.
struct LoccFamily {
  std::vector<Matrix> povm;
  std::vector<Matrix> unitaries;
  std::vector<Matrix> weights;  // M_j^T / d_A
  std::vector<Vector> states;   // unit Choi vectors of the unitaries

  static LoccFamily make(std::uint64_t seed);
  int d_A() const { return static_cast<int>(povm.front().rows()); }
  ChoiChannel choi(int n) const;
  SymmetricExtension extension(int n) const;
  // sum_j weights_j (x) (psi_j psi_j^dagger)^{(x)k}
  Matrix omega(int k) const;
};

struct DefinettiRow {
  int n = 0;
  int k = 0;
  int d_eff = 0;
  double delta = 0.0;
  double bound = 0.0;
  double grid_residual = 0.0;
  bool grid_residual_exact = true;

  bool ok() const { return delta <= bound + grid_residual + 1e-8; }
};
std::vector<DefinettiRow> definetti_rows(const ExperimentConfig& cfg);

std::vector<RiskReport> risk_gap_reports(const ExperimentConfig& cfg);
std::string risk_gap_csv(const std::vector<RiskReport>& rows,
                         std::uint64_t seed);

}  // namespace qinductive::cli

#endif  // QINDUCTIVE_TOOLS_COMMANDS_H_
