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

#ifndef QINDUCTIVE_LOCC_H_
#define QINDUCTIVE_LOCC_H_

#include <string>
#include <utility>
#include <vector>

#include "qinductive/channels.h"
#include "qinductive/definetti.h"
#include "qinductive/tensor_core.h"

namespace qinductive {

// tau = tr_Y phi for phi on X (x) Y.
Matrix marginal_input(const Matrix& phi, int d_X, int d_Y);

// (1/d_X) (tau^{-1/2} (x) 1) phi (tau^{-1/2} (x) 1). Throws
// SingularMarginalError when the smallest eigenvalue of tau is <= cutoff.
Matrix tp_repair(const Matrix& phi, int d_X, int d_Y, double cutoff = 1e-8);

struct RepairBound {
  double lhs = 0.0;       // ||phi - phi~||_1
  double rhs = 0.0;       // sqrt(1 - tr[sqrt(tau)]^2 / d_X)
  double fidelity = 0.0;  // F(phi, phi~)
  double fidelity_formula = 0.0;  // tr[sqrt(tau)]^2 / d_X
  // Fuchs-van de Graaf: ||phi - phi~||_1 <= 2 sqrt(1 - F).
  double rhs_fvdg() const { return 2.0 * rhs; }
};
RepairBound repair_distance_bound(const Matrix& phi, int d_X, int d_Y,
                                  double cutoff = 1e-8);

struct ChebyshevResult {
  double empirical_prob = 0.0;
  double bound = 0.0;
};
ChebyshevResult operator_chebyshev(const std::vector<Matrix>& samples,
                                   const std::vector<double>& probs,
                                   double epsilon);

struct ConcentrationReport {
  Matrix e1;
  std::vector<std::pair<int, double>> ek_residuals;  // (k, ||E_k - 1/d^k||_1)
  std::vector<double> ek_bounds;                     // k delta + residual
  double r_eps_mass = 0.0;
  double complement_mass = 0.0;
  double bound_rhs = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double grid_residual = 0.0;

  bool statement1_ok() const;
  bool statement2_ok() const { return complement_mass <= bound_rhs + 1e-9; }
};
ConcentrationReport concentration_report(const DeFinettiApprox& approx,
                                         int d_X, int d_Y, double epsilon,
                                         double delta);
// 4 d^2 / n with d = d_X d_Y.
double approximation_rate(int d_X, int d_Y, int n);

struct EpsilonRule {
  bool cube_root = true;  // epsilon = delta^{1/3}
  double fixed = 0.2;

  double choose(double delta) const;
};

struct LoccOptions {
  GridSpec grid;
  double cutoff = 1e-8;
  EpsilonRule epsilon;
};

struct LoccProvenance {
  double epsilon = 0.0;
  double delta = 0.0;
  int repaired_count = 0;
  int fallback_count = 0;
  int grid_size = 0;
  double grid_residual = 0.0;
  bool grid_residual_exact = true;
  std::string grid_spec;
  double slack_mass = 0.0;  // tr(slack) / d_A
  double povm_scale = 1.0;  // < 1 when sum M^_j overshot the identity
  int d_eff = 0;
  bool purified = false;
};

struct LoccProtocol {
  std::vector<Matrix> povm;
  std::vector<ChoiChannel> channels;
  std::vector<bool> fallback;  // element mapped to the fallback channel
  LoccProvenance provenance;

  int d_A() const { return static_cast<int>(povm.front().rows()); }
  // Measure-and-prepare Choi matrix for n instances.
  ChoiChannel rebuild(int n) const;
  // sum_j (M^_j^T / d_A) (x) phi~_j on A (x) X (x) Y.
  Matrix single_instance_choi() const;
};

struct LoccBuild {
  LoccProtocol protocol;
  ConcentrationReport concentration;
};

// Repair, fallback and POVM assembly for an extracted approximation.
LoccBuild protocol_from_approx(const DeFinettiApprox& approx, int d_X, int d_Y,
                               const LoccOptions& options);
// Symmetrize, purify, discretize, extract and repair.
LoccBuild build_locc_protocol_detailed(const ChoiChannel& q,
                                       const LoccOptions& options);
LoccProtocol build_locc_protocol(const ChoiChannel& q,
                                 const LoccOptions& options);

// Leading term of the risk-gap bound; the O(n^{-1/3}) remainder is omitted.
double theorem1_bound(int d_A, int d_X, int d_Y, int n, double r_infnorm);

}  // namespace qinductive

#endif  // QINDUCTIVE_LOCC_H_
