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

#include "qinductive/risk.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qinductive/errors.h"
#include "qinductive/random.h"
#include "test_util.h"

namespace qinductive {
namespace {

using testing::basis;

Matrix pure(const Vector& v) { return v * v.adjoint(); }

// Channel that ignores A and acts as phi on every instance.
ChoiChannel ignore_training(const ChoiChannel& phi, int d_A, int n) {
  return measure_and_prepare_choi({Matrix::Identity(d_A, d_A)}, {phi}, n);
}

// Measures X in the computational basis and writes the outcome to Y.
ChoiChannel copy_basis(int d) {
  std::vector<Matrix> kraus;
  for (int k = 0; k < d; ++k) kraus.push_back(pure(basis(d, k)));
  return choi_of_kraus(kraus);
}

ChoiChannel random_qubit_channel(Rng& rng) {
  return choi_of_kraus(random_kraus(2, 2, 2, rng));
}

TEST(ClassificationTaskTest, Construction) {
  LearningTask t = overlap_classification_task(0.6, 2);
  EXPECT_EQ(t.d_A, 4);
  EXPECT_EQ(t.d_X, 2);
  EXPECT_EQ(t.d_Y, 2);
  EXPECT_EQ(t.d_Yp, 2);
  EXPECT_NEAR(t.rho_xy.trace().real(), 1.0, 1e-14);
  EXPECT_GE(min_eigenvalue(t.rho_xy), -1e-14);
  EXPECT_LT((t.s - t.s.adjoint()).norm(), 1e-15);
  EXPECT_THROW(overlap_classification_task(1.5, 1), DimensionError);
  EXPECT_THROW(classification_task({0.5, 0.6}, {pure(basis(2, 0)), pure(basis(2, 1))}, 1),
               DimensionError);
}

TEST(ClassificationTaskTest, OrthogonalStatesAreSeparable) {
  LearningTask t = classification_task({0.5, 0.5}, {pure(basis(2, 0)), pure(basis(2, 1))}, 1);
  ChoiChannel q = ignore_training(copy_basis(2), t.d_A, 1);
  EXPECT_NEAR(expected_risk(q, t), 0.0, 1e-12);
}

TEST(ClassificationTaskTest, SingleLabelConstantClassifier) {
  Rng rng(1);
  LearningTask t = classification_task({1.0}, {random_density(2, rng)}, 1);
  EXPECT_EQ(t.d_Y, 1);
  // The only channel into a one-dimensional output.
  ChoiChannel q = ignore_training(depolarizing_channel(2, 1), t.d_A, 1);
  EXPECT_NEAR(expected_risk(q, t), 0.0, 1e-12);
}

TEST(ClassificationTaskTest, HelstromRisk) {
  for (double c : {0.0, 0.3, 0.6, 0.9}) {
    LearningTask t = overlap_classification_task(c, 1);
    Vector psi0 = basis(2, 0);
    Vector psi1(2);
    psi1 << c, std::sqrt(1.0 - c * c);
    // Helstrom measurement from the eigendecomposition of rho0/2 - rho1/2.
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * pure(psi0) - 0.5 * pure(psi1));
    Matrix pi0 = Matrix::Zero(2, 2);
    for (int k = 0; k < 2; ++k)
      if (es.eigenvalues()(k) > 0) pi0 += pure(es.eigenvectors().col(k));
    Matrix pi1 = Matrix::Identity(2, 2) - pi0;
    // Instrument X -> Y: measure {pi0, pi1} and write the outcome.
    std::vector<Matrix> kraus;
    for (int y = 0; y < 2; ++y) {
      const Matrix& pi = y == 0 ? pi0 : pi1;
      Eigen::SelfAdjointEigenSolver<Matrix> ep(pi);
      for (int k = 0; k < 2; ++k)
        if (ep.eigenvalues()(k) > 0.5)
          kraus.push_back(basis(2, y) * ep.eigenvectors().col(k).adjoint());
    }
    ChoiChannel q = ignore_training(choi_of_kraus(kraus), t.d_A, 1);
    EXPECT_NEAR(expected_risk(q, t), (1.0 - std::sqrt(1.0 - c * c)) / 2.0, 1e-10)
        << "c=" << c;
  }
}

TEST(TomographyTaskTest, PerfectPreparation) {
  LearningTask t = tomography_task({0.5, 0.5}, {pure(basis(2, 0)), pure(basis(2, 0))}, 1);
  // Replace every input with |0><0|.
  ChoiChannel reset = choi_of_kraus({basis(2, 0) * basis(2, 0).adjoint(),
                                     basis(2, 0) * basis(2, 1).adjoint()});
  EXPECT_NEAR(expected_risk(ignore_training(reset, t.d_A, 1), t), 0.0, 1e-12);
}

TEST(TomographyTaskTest, MaximallyMixedGuess) {
  Rng rng(2);
  for (int d : {2, 3}) {
    LearningTask t = tomography_task(
        {0.3, 0.7}, {pure(random_state(d, rng)), pure(random_state(d, rng))}, 1);
    ChoiChannel q = ignore_training(depolarizing_channel(2, d), t.d_A, 1);
    EXPECT_NEAR(expected_risk(q, t), 1.0 - 1.0 / d, 1e-12);
  }
}

TEST(TomographyTaskTest, ClassicalRegisterIsDiagonal) {
  Rng rng(3);
  LearningTask t = tomography_task({0.2, 0.8}, {random_density(2, rng), random_density(2, rng)}, 1);
  for (int x = 0; x < 2; ++x) {
    Matrix proj = kron(pure(basis(2, x)), Matrix(Matrix::Identity(2, 2)));
    EXPECT_LT((proj * t.rho_xy - t.rho_xy * proj).norm(), 1e-15);
  }
}

TEST(RiskObservableTest, SingleInstanceIsS) {
  Rng rng(4);
  Matrix s = random_hermitian(4, rng);
  Operator sbar = symmetrized_risk_observable(s, 2, 2, 1);
  EXPECT_LT((sbar.matrix() - s).norm(), 1e-15);
}

TEST(RiskObservableTest, IdentityStaysIdentity) {
  Operator sbar = symmetrized_risk_observable(Matrix::Identity(6, 6), 2, 3, 3);
  EXPECT_LT((sbar.matrix() - Matrix::Identity(216, 216)).norm(), 1e-12);
  Operator sum = symmetrized_risk_observable(Matrix::Identity(6, 6), 2, 3, 3,
                                             SBarNormalization::kSum);
  EXPECT_LT((sum.matrix() - 3.0 * Matrix::Identity(216, 216)).norm(), 1e-12);
}

TEST(RiskObservableTest, CommutesWithPairPermutations) {
  Rng rng(5);
  Matrix s = random_hermitian(4, rng);
  const int n = 3;
  Matrix sbar = symmetrized_risk_observable(s, 2, 2, n).matrix();
  for (const auto& p : all_permutations(n)) {
    // Pairs (Y_i, Yp_i) are adjacent, so a pair permutation is a site
    // permutation with site dimension 4.
    Matrix u = permutation_operator(p, 4).matrix();
    EXPECT_LT((u * sbar - sbar * u).norm(), 1e-12);
  }
}

TEST(ROperatorTest, ZeroLoss) {
  LearningTask t = overlap_classification_task(0.4, 1);
  t.s = Matrix::Zero(4, 4);
  EXPECT_LT(r_operator(t).norm(), 1e-15);
}

TEST(ROperatorTest, UnitObservableGivesUnitRisk) {
  LearningTask t = overlap_classification_task(0.4, 2);
  t.s = Matrix::Identity(4, 4);
  Matrix r = r_operator(t);
  Operator rho_ax = partial_trace(
      Operator(kron(t.rho_a, t.rho_xy),
               Factorization{{"A", t.d_A}, {"X", t.d_X}, {"Yp", t.d_Yp}}),
      {"A", "X"});
  Matrix expect = kron(Matrix(rho_ax.matrix().transpose()), Matrix(Matrix::Identity(2, 2)));
  EXPECT_LT((r - expect).norm(), 1e-14);
  ChoiChannel q = random_nonsignalling_choi(t.channel_dims(), 6);
  EXPECT_NEAR(expected_risk_direct(q, t), 1.0, 1e-8);
  EXPECT_NEAR(expected_risk_marginal(q, t), 1.0, 1e-8);
}

TEST(ROperatorTest, MatchesDirectSingleInstanceApplication) {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    LearningTask t = tomography_task(
        {0.4, 0.6}, {random_density(2, rng), random_density(2, rng)}, 1);
    t.s = random_hermitian(4, rng);
    ChoiChannel q = choi_of_kraus(random_kraus(t.d_A * 2, 2, 3, rng),
                                  ChannelDims{t.d_A, 2, 2, 1});
    // Apply id_Yp (x) Q to rho_A (x) rho_XYp directly.
    Matrix in = kron(t.rho_a, t.rho_xy);  // A, X, Yp
    Operator grouped = reorder(
        Operator(in, Factorization{{"A", t.d_A}, {"X", 2}, {"Yp", 2}}), {"Yp", "A", "X"});
    Matrix out = apply_channel_with_ancilla(q, grouped.matrix(), 2);  // Yp, Y
    Operator s_yyp(t.s, Factorization{{"Y", 2}, {"Yp", 2}});
    Matrix s_ypy = reorder(s_yyp, {"Yp", "Y"}).matrix();
    double oracle = (out * s_ypy).trace().real();
    double via_r = t.d_A * t.d_X * (q.matrix() * r_operator(t)).trace().real();
    EXPECT_NEAR(via_r, oracle, 1e-10);
  }
}

TEST(ExpectedRiskTest, IdentityLabelChannelOnOrthogonalTask) {
  LearningTask t = classification_task({0.3, 0.7}, {pure(basis(2, 0)), pure(basis(2, 1))}, 2);
  ChoiChannel q = ignore_training(copy_basis(2), t.d_A, 2);
  EXPECT_NEAR(expected_risk(q, t), 0.0, 1e-12);
}

TEST(ExpectedRiskTest, MaximallyMixedLabels) {
  Rng rng(8);
  for (int labels : {2, 3}) {
    std::vector<Matrix> states;
    std::vector<double> priors(labels, 1.0 / labels);
    for (int y = 0; y < labels; ++y) states.push_back(random_density(2, rng));
    LearningTask t = classification_task(priors, states, 1);
    ChoiChannel q = ignore_training(depolarizing_channel(2, labels), t.d_A, 1);
    EXPECT_NEAR(expected_risk(q, t), 1.0 - 1.0 / labels, 1e-12);
  }
}

TEST(ExpectedRiskTest, DualPathAgreement) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      LearningTask t = overlap_classification_task(0.6, n);
      ChoiChannel q = random_nonsignalling_choi(t.channel_dims(), 100 + seed);
      for (auto norm : {SBarNormalization::kAverage, SBarNormalization::kSum})
        EXPECT_NEAR(expected_risk_direct(q, t, norm),
                    expected_risk_marginal(q, t, norm), 1e-8)
            << "n=" << n << " seed=" << seed;
    }
}

TEST(ExpectedRiskTest, SymmetrizationPreservesRisk) {
  LearningTask t = overlap_classification_task(0.3, 2);
  ChoiChannel q = random_nonsignalling_choi(t.channel_dims(), 9);
  EXPECT_NEAR(expected_risk(q, t), expected_risk(symmetrize_channel(q), t), 1e-10);
}

TEST(ExpectedRiskTest, ProductChannelRiskIsPerInstance) {
  Rng rng(10);
  ChoiChannel phi = random_qubit_channel(rng);
  LearningTask t1 = overlap_classification_task(0.5, 1);
  LearningTask t3 = overlap_classification_task(0.5, 3);
  EXPECT_NEAR(expected_risk(ignore_training(phi, t1.d_A, 1), t1),
              expected_risk(ignore_training(phi, t3.d_A, 3), t3), 1e-10);
}

TEST(CollectiveClassifierTest, IsSymmetricNonsignallingChannel) {
  for (int n = 1; n <= 3; ++n) {
    LearningTask t = overlap_classification_task(0.6, n);
    ChoiChannel q = collective_classifier(t);
    EXPECT_TRUE(is_cptp(q).ok(1e-10));
    EXPECT_LT(is_nonsignalling(q).max_violation(), 1e-10);
    EXPECT_LT((symmetrize_channel(q).matrix() - q.matrix()).norm(), 1e-10);
  }
}

TEST(CollectiveClassifierTest, SingleInstanceSwapTestRisk) {
  // With n = 1 the cloner is the identity and P(error) is
  // (1/2)(1 - (1 - c^2)/2) averaged over the two labels.
  for (double c : {0.0, 0.6, 1.0}) {
    LearningTask t = overlap_classification_task(c, 1);
    double expect = 0.5 * (1.0 - 0.5 * (1.0 - c * c));
    EXPECT_NEAR(expected_risk(collective_classifier(t), t), expect, 1e-12);
  }
}

TEST(CollectiveClassifierTest, RejectsUnsupportedTasks) {
  Rng rng(11);
  LearningTask t = classification_task(
      {0.2, 0.3, 0.5}, {random_density(2, rng), random_density(2, rng), random_density(2, rng)}, 1);
  EXPECT_THROW(collective_classifier(t), DimensionError);
}

TEST(RiskGapTest, UnitObservableHasNoGap) {
  LearningTask t = overlap_classification_task(0.6, 1);
  t.s = Matrix::Identity(4, 4);
  LoccOptions o;
  o.grid = GridSpec::parse("design");
  RiskReport r = risk_gap_experiment(t, collective_classifier(t), o);
  EXPECT_NEAR(r.risk_collective, 1.0, 1e-10);
  EXPECT_NEAR(r.risk_locc, 1.0, 1e-10);
  EXPECT_NEAR(r.gap, 0.0, 1e-10);
}

TEST(RiskGapTest, ReportFields) {
  LearningTask t = overlap_classification_task(0.6, 2);
  LoccOptions o;
  o.grid = GridSpec::parse("haar:5:300");
  RiskReport r = risk_gap_experiment(t, collective_classifier(t), o);
  EXPECT_EQ(r.n, 2);
  EXPECT_NEAR(r.gap, std::abs(r.risk_collective - r.risk_locc), 1e-15);
  EXPECT_NEAR(r.s_infnorm, 1.0, 1e-12);
  EXPECT_NEAR(r.bound, theorem1_bound(4, 2, 2, 2, r.r_infnorm), 1e-12);
  EXPECT_NEAR(r.trivial_bound(), 2.0, 1e-12);
  EXPECT_TRUE(r.within_bound());
  EXPECT_EQ(r.provenance.grid_size, 300);
}

}  // namespace
}  // namespace qinductive
