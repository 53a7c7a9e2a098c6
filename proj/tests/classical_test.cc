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

#include "qinductive/classical.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "qinductive/errors.h"
#include "qinductive/random.h"

namespace qinductive {
namespace {

Eigen::MatrixXd random_stochastic(int ny, int nx, Rng& rng) {
  Eigen::MatrixXd q(ny, nx);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) q(y, x) = rng.uniform() + 1e-3;
    q.col(x) /= q.col(x).sum();
  }
  return q;
}

Eigen::MatrixXd random_pmf(int nx, int ny, Rng& rng) {
  Eigen::MatrixXd d(nx, ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) d(x, y) = rng.uniform();
  return d / d.sum();
}

// Exhaustive sum over x_{1:n}, y_{1:n}, y'_{1:n}.
double brute_force_risk(const ClassicalProtocol& p, const Eigen::MatrixXd& dist,
                        int a) {
  double total = 0.0;
  for (std::int64_t x = 0; x < p.contexts(); ++x) {
    auto xd = digits(x, p.nx, p.n);
    for (std::int64_t y = 0; y < p.outcomes(); ++y) {
      auto yd = digits(y, p.ny, p.n);
      for (std::int64_t yp = 0; yp < p.outcomes(); ++yp) {
        auto ypd = digits(yp, p.ny, p.n);
        double weight = p.at(a, x, y);
        double score = 0.0;
        for (int i = 0; i < p.n; ++i) {
          weight *= dist(xd[i], ypd[i]);
          score += yd[i] != ypd[i] ? 1.0 : 0.0;
        }
        total += weight * score / p.n;
      }
    }
  }
  return total;
}

TEST(ClassicalProtocolTest, Indexing) {
  ClassicalProtocol p = ClassicalProtocol::zeros(2, 3, 2, 2);
  EXPECT_EQ(p.contexts(), 4);
  EXPECT_EQ(p.outcomes(), 9);
  EXPECT_EQ(p.probs.size(), 72u);
  EXPECT_EQ(p.index(1, 2, 5), (1 * 4 + 2) * 9 + 5);
  EXPECT_EQ(digits(5, 3, 2), (std::vector<int>{1, 2}));
  EXPECT_EQ(from_digits({1, 2}, 3), 5);
  EXPECT_THROW(p.validate(), DimensionError);
  EXPECT_THROW(ClassicalProtocol::zeros(9, 2, 1, 1), TooLargeError);
  EXPECT_THROW(ClassicalProtocol::zeros(2, 2, 1, 5), TooLargeError);
}

TEST(NonsignallingClassicalTest, ProductProtocolHasZeroDeviation) {
  Rng rng(1);
  ClassicalProtocol p = product_protocol(
      {random_stochastic(3, 2, rng), random_stochastic(3, 2, rng)}, 3);
  p.validate();
  EXPECT_LE(is_nonsignalling_classical(p).max_deviation(), 1e-15);
}

TEST(NonsignallingClassicalTest, CopyNeighbourSignals) {
  // y_1 = x_2, y_2 = x_1.
  ClassicalProtocol p = ClassicalProtocol::zeros(2, 2, 1, 2);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      p.at(0, from_digits({x1, x2}, 2), from_digits({x2, x1}, 2)) = 1.0;
  p.validate();
  ClassicalNsReport r = is_nonsignalling_classical(p);
  EXPECT_DOUBLE_EQ(r.per_i_deviation[0], 1.0);
  EXPECT_DOUBLE_EQ(r.max_deviation(), 1.0);
}

TEST(NonsignallingClassicalTest, RandomProtocolsAreNonsignalling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ClassicalProtocol p = random_nonsignalling_protocol(3, 2, 2, 3, seed);
    p.validate(1e-12);
    EXPECT_LT(is_nonsignalling_classical(p).max_deviation(), 1e-14);
    ClassicalProtocol s = symmetrize_classical(p);
    EXPECT_LT(is_nonsignalling_classical(s).max_deviation(), 1e-14);
  }
}

TEST(NonsignallingClassicalTest, RandomProtocolsAreNotProducts) {
  // The PR-box components make some protocol correlated across instances.
  ClassicalProtocol p = random_nonsignalling_protocol(2, 2, 1, 2, 3);
  Eigen::MatrixXd q1 = local_marginal(p, 0, 0), q2 = local_marginal(p, 0, 1);
  double worst = 0.0;
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2)
          worst = std::max(worst, std::abs(p.at(0, from_digits({x1, x2}, 2),
                                                from_digits({y1, y2}, 2)) -
                                           q1(y1, x1) * q2(y2, x2)));
  EXPECT_GT(worst, 1e-3);
}

TEST(SymmetrizeClassicalTest, SymmetricInputUnchanged) {
  Rng rng(2);
  ClassicalProtocol p = product_protocol({random_stochastic(2, 2, rng)}, 3);
  ClassicalProtocol s = symmetrize_classical(p);
  for (std::size_t k = 0; k < p.probs.size(); ++k)
    EXPECT_NEAR(s.probs[k], p.probs[k], 1e-15);
}

TEST(SymmetrizeClassicalTest, TwoTermAverage) {
  Rng rng(3);
  ClassicalProtocol p = random_nonsignalling_protocol(2, 2, 1, 2, 4);
  ClassicalProtocol s = symmetrize_classical(p);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2) {
          double direct = p.at(0, from_digits({x1, x2}, 2), from_digits({y1, y2}, 2));
          double swapped = p.at(0, from_digits({x2, x1}, 2), from_digits({y2, y1}, 2));
          EXPECT_NEAR(s.at(0, from_digits({x1, x2}, 2), from_digits({y1, y2}, 2)),
                      0.5 * (direct + swapped), 1e-15);
        }
}

TEST(SymmetrizeClassicalTest, IdempotentAndRiskPreserving) {
  Rng rng(5);
  ClassicalProtocol p = random_nonsignalling_protocol(2, 3, 2, 3, 6);
  ClassicalProtocol s = symmetrize_classical(p);
  ClassicalProtocol ss = symmetrize_classical(s);
  for (std::size_t k = 0; k < s.probs.size(); ++k)
    EXPECT_NEAR(ss.probs[k], s.probs[k], 1e-15);
  Eigen::MatrixXd dist = random_pmf(2, 3, rng);
  for (int a = 0; a < 2; ++a)
    EXPECT_NEAR(classical_expected_risk(p, dist, a),
                classical_expected_risk(s, dist, a), 1e-12);
}

TEST(DecomposeTest, DeterministicMap) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(3, 2);
  q(2, 0) = 1.0;
  q(0, 1) = 1.0;
  ClassifierMixture m = decompose_classifier_mixture(q);
  ASSERT_EQ(m.functions.size(), 1u);
  EXPECT_EQ(m.functions[0], (std::vector<int>{2, 0}));
  EXPECT_DOUBLE_EQ(m.weights[0], 1.0);
}

TEST(DecomposeTest, BinaryExample) {
  Eigen::MatrixXd q(2, 2);
  q << 0.7, 0.2, 0.3, 0.8;
  ClassifierMixture m = decompose_classifier_mixture(q);
  ASSERT_EQ(m.functions.size(), 4u);
  std::map<std::vector<int>, double> w;
  for (std::size_t k = 0; k < 4; ++k) w[m.functions[k]] = m.weights[k];
  EXPECT_NEAR((w[{0, 0}]), 0.14, 1e-15);
  EXPECT_NEAR((w[{0, 1}]), 0.56, 1e-15);
  EXPECT_NEAR((w[{1, 0}]), 0.06, 1e-15);
  EXPECT_NEAR((w[{1, 1}]), 0.24, 1e-15);
  EXPECT_LT((m.stochastic_map() - q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DecomposeTest, UniformMapGivesUniformWeights) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  ClassifierMixture m = decompose_classifier_mixture(q);
  ASSERT_EQ(m.functions.size(), 27u);
  for (double w : m.weights) EXPECT_NEAR(w, 1.0 / 27.0, 1e-15);
}

TEST(DecomposeTest, ReconstructionIsExact) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd q = random_stochastic(1 + rng.uniform_int(4), 1 + rng.uniform_int(4), rng);
    ClassifierMixture m = decompose_classifier_mixture(q);
    double total = 0.0;
    for (double w : m.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LT((m.stochastic_map() - q).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(DecomposeTest, RejectsBadInput) {
  Eigen::MatrixXd q(2, 1);
  q << 0.5, 0.6;
  EXPECT_THROW(decompose_classifier_mixture(q), DimensionError);
  Eigen::MatrixXd big = Eigen::MatrixXd::Constant(8, 8, 1.0 / 8.0);
  EXPECT_THROW(decompose_classifier_mixture(big), TooLargeError);
}

TEST(ClassicalRiskTest, PerfectClassifier) {
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(2, 2);
  dist(0, 1) = 0.4;  // x = 0 has label 1
  dist(1, 0) = 0.6;
  Eigen::MatrixXd q(2, 2);
  q << 0, 1, 1, 0;
  ClassicalProtocol p = product_protocol({q}, 2);
  EXPECT_NEAR(classical_expected_risk(p, dist, 0), 0.0, 1e-15);
}

TEST(ClassicalRiskTest, UniformLabels) {
  Rng rng(8);
  ClassicalProtocol p =
      product_protocol({Eigen::MatrixXd::Constant(2, 3, 0.5)}, 2);
  EXPECT_NEAR(classical_expected_risk(p, random_pmf(3, 2, rng), 0), 0.5, 1e-15);
}

TEST(ClassicalRiskTest, MatchesExhaustiveSum) {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ClassicalProtocol p = random_nonsignalling_protocol(2, 3, 2, 2, seed);
    Eigen::MatrixXd dist = random_pmf(2, 3, rng);
    for (int a = 0; a < 2; ++a)
      EXPECT_NEAR(classical_expected_risk(p, dist, a), brute_force_risk(p, dist, a),
                  1e-14);
  }
}

TEST(ClassicalRiskTest, SignallingProtocolsAlsoMatchExhaustiveSum) {
  Rng rng(10);
  ClassicalProtocol p = ClassicalProtocol::zeros(2, 2, 1, 3);
  for (std::int64_t x = 0; x < p.contexts(); ++x) {
    double total = 0.0;
    for (std::int64_t y = 0; y < p.outcomes(); ++y) total += p.at(0, x, y) = rng.uniform();
    for (std::int64_t y = 0; y < p.outcomes(); ++y) p.at(0, x, y) /= total;
  }
  Eigen::MatrixXd dist = random_pmf(2, 2, rng);
  EXPECT_NEAR(classical_expected_risk(p, dist, 0), brute_force_risk(p, dist, 0), 1e-14);
}

TEST(ReconstructTest, DeterministicSourceRecovered) {
  Eigen::MatrixXd q(2, 3);
  q << 1, 0, 1, 0, 1, 0;
  ClassicalProtocol p = product_protocol({q}, 2);
  MixtureReduction r = reduce_to_classifiers(p);
  for (std::size_t k = 0; k < p.probs.size(); ++k)
    EXPECT_NEAR(r.reconstructed.probs[k], p.probs[k], 1e-15);
}

TEST(ReconstructTest, RiskEqualityPerTrainingValue) {
  Rng rng(11);
  for (int n : {2, 3})
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ClassicalProtocol p = random_nonsignalling_protocol(2, 2, 2, n, seed);
      MixtureReduction r = reduce_to_classifiers(p);
      EXPECT_LE(is_nonsignalling_classical(r.reconstructed).max_deviation(), 1e-15);
      Eigen::MatrixXd dist = random_pmf(2, 2, rng);
      for (int a = 0; a < 2; ++a)
        EXPECT_NEAR(classical_expected_risk(p, dist, a),
                    classical_expected_risk(r.reconstructed, dist, a), 1e-12);
    }
}

TEST(ReconstructTest, SymmetrizedMarginalIsContextIndependent) {
  ClassicalProtocol p = random_nonsignalling_protocol(3, 2, 1, 3, 12);
  ClassicalProtocol s = symmetrize_classical(p);
  Eigen::MatrixXd full = marginal_classical(s, 0, 0);
  Eigen::MatrixXd local = local_marginal(s, 0, 0);
  for (std::int64_t x = 0; x < s.contexts(); ++x)
    EXPECT_LT((full.col(x) - local.col(digits(x, 3, 3)[0])).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace qinductive
