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

#ifndef QINDUCTIVE_RISK_H_
#define QINDUCTIVE_RISK_H_

#include <vector>

#include "qinductive/channels.h"
#include "qinductive/locc.h"
#include "qinductive/tensor_core.h"

namespace qinductive {

struct LearningTask {
  Matrix rho_xy;  // on X (x) Y'
  Matrix rho_a;   // on A
  Matrix s;       // on Y (x) Y'
  int d_A = 1;
  int d_X = 1;
  int d_Y = 1;
  int d_Yp = 1;
  int n = 1;

  ChannelDims channel_dims() const { return {d_A, d_X, d_Y, n}; }
};

// rho_XY' = sum_y p_y rho^(y) (x) |y><y| with 0-1 loss. The training state is
// (x)_y rho^(y)^{(x)m}; the label of each block is fixed by its position.
LearningTask classification_task(const std::vector<double>& priors,
                                 const std::vector<Matrix>& states, int n,
                                 int m = 1);
// rho_XY' = sum_x p_x |x><x| (x) rho^(x) with S = 1 - SWAP on Y (x) Y'.
LearningTask tomography_task(const std::vector<double>& priors,
                             const std::vector<Matrix>& states, int n,
                             int m = 1);
// Two pure qubit states with |<psi_0|psi_1>| = overlap, equal priors.
LearningTask overlap_classification_task(double overlap, int n, int m = 1);

enum class SBarNormalization { kAverage, kSum };

// (1/n) sum_i S_{Y_i Y'_i} (or the plain sum), with factors ordered
// Y1, Yp1, ..., Yn, Ypn.
Operator symmetrized_risk_observable(const Matrix& s, int d_Y, int d_Yp, int n,
                                     SBarNormalization norm =
                                         SBarNormalization::kAverage);

// R = tr_Y'[(rho_AXY' (x) 1_Y)^{T_AX} (1_AX (x) S)] on A (x) X (x) Y.
Matrix r_operator(const LearningTask& task);

// tr[(Q (x) id)(rho_A (x) rho_XY'^{(x)n}) S-bar].
double expected_risk_direct(const ChoiChannel& q, const LearningTask& task,
                            SBarNormalization norm =
                                SBarNormalization::kAverage);
// d_A d_X tr[omega-bar_1 R] with omega-bar_1 the one-instance marginal of the
// symmetrized channel.
double expected_risk_marginal(const ChoiChannel& q, const LearningTask& task,
                              SBarNormalization norm =
                                  SBarNormalization::kAverage);
double expected_risk(const ChoiChannel& q, const LearningTask& task,
                     SBarNormalization norm = SBarNormalization::kAverage);
// Risk of a measure-and-prepare protocol through its one-instance Choi.
double protocol_risk(const LoccProtocol& p, const LearningTask& task,
                     SBarNormalization norm = SBarNormalization::kAverage);

struct RiskReport {
  int n = 0;
  double risk_collective = 0.0;
  double risk_locc = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  double grid_residual = 0.0;
  double r_infnorm = 0.0;
  double s_infnorm = 0.0;  // n ||S|| under kSum
  LoccProvenance provenance;

  double trivial_bound() const { return 2.0 * s_infnorm; }
  bool within_bound() const {
    return gap <= std::min(trivial_bound(), bound) + 1e-9;
  }
};

// With kSum both the risks and the bounds carry a factor n.
RiskReport risk_gap_experiment(const LearningTask& task, const ChoiChannel& q,
                               const LoccOptions& options,
                               SBarNormalization norm =
                                   SBarNormalization::kAverage);

// Collective binary classifier on n test instances: a universal 1 -> n
// cloner on the training register followed, per instance, by a swap-test
// comparison of X_i against the two cloned training copies. Requires a
// binary classification task with m = 1.
ChoiChannel collective_classifier(const LearningTask& task);

}  // namespace qinductive

#endif  // QINDUCTIVE_RISK_H_
