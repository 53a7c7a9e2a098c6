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

#include "qinductive/definetti.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qinductive/errors.h"
#include "qinductive/random.h"
#include "test_util.h"

namespace qinductive {
namespace {

// Average of omega over permutations of the n B factors (A stays first).
Matrix symmetrize_b(const Matrix& omega, int d_A, int d_B, int n) {
  Matrix acc = Matrix::Zero(omega.rows(), omega.cols());
  auto perms = all_permutations(n);
  for (const auto& p : perms) {
    Matrix u = kron(Matrix(Matrix::Identity(d_A, d_A)),
                    permutation_operator(p, d_B).matrix());
    acc += u * omega * u.adjoint();
  }
  return acc / static_cast<double>(perms.size());
}

Vector random_symmetric_vector(int d, int n, Rng& rng) {
  Matrix p = symmetric_projector(n, d).matrix();
  Vector v = p * gaussian_matrix(static_cast<int>(p.rows()), 1, rng).col(0);
  return v / v.norm();
}

TEST(PurifyTest, PureSymmetricStateIsKept) {
  Rng rng(1);
  Vector psi = random_symmetric_vector(2, 3, rng);
  SymmetricExtension ext = purify_extension(Matrix(psi * psi.adjoint()), 1, 2, 3);
  EXPECT_FALSE(ext.purified);
  EXPECT_EQ(ext.d_eff(), 2);
  EXPECT_NEAR(std::abs(psi.dot(ext.dense())), 1.0, 1e-10);
}

TEST(PurifyTest, MaximallyMixedUsesPairwiseEntanglement) {
  const int d = 2, n = 3;
  Matrix omega = Matrix::Identity(8, 8) / 8.0;
  SymmetricExtension ext = purify_extension(omega, 1, d, n);
  EXPECT_TRUE(ext.purified);
  EXPECT_EQ(ext.d_eff(), 4);
  Vector pair = Vector::Zero(d * d);
  for (int b = 0; b < d; ++b) pair(b * d + b) = 1.0 / std::sqrt(2.0);
  EXPECT_LT((ext.dense() - kron_power(pair, n)).norm(), 1e-12);
  EXPECT_LT((ext.reduced_state() - omega).norm(), 1e-12);
}

TEST(PurifyTest, RandomSymmetrizedStateRoundTrips) {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix omega = symmetrize_b(random_density(8, rng), 2, 2, 2);
    SymmetricExtension ext = purify_extension(omega, 2, 2, 2);
    EXPECT_NEAR(ext.norm(), 1.0, 1e-10);
    EXPECT_LT((ext.reduced_state() - omega).norm(), 1e-10);
  }
}

TEST(PurifyTest, ExtensionIsPermutationInvariant) {
  Rng rng(3);
  const int n = 3;
  Matrix omega = symmetrize_b(random_density(16, rng), 2, 2, n);
  SymmetricExtension ext = purify_extension(omega, 2, 2, n);
  Vector v = ext.dense();
  const int db = ext.d_eff();
  for (int k = 1; k < n; ++k) {
    std::vector<int> swap(n);
    for (int i = 0; i < n; ++i) swap[i] = i;
    std::swap(swap[0], swap[k]);
    Matrix u = kron(Matrix(Matrix::Identity(ext.d_aprime(), ext.d_aprime())),
                    permutation_operator(swap, db).matrix());
    EXPECT_LT((u * v - v).norm(), 1e-9);
  }
}

TEST(PurifyTest, RejectsNonSymmetricInput) {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  EXPECT_THROW(purify_extension(kron(a, b), 1, 2, 2), NotSymmetricError);
}

TEST(PurifyTest, SymmetricWeight) {
  Matrix omega = Matrix::Identity(4, 4) / 4.0;
  // Sym^2(C^2) has dimension 3 out of 4.
  EXPECT_NEAR(symmetric_weight(omega, 1, 2, 2), 0.75, 1e-12);
}

TEST(MixtureExtensionTest, ReducedStateIsTheMixture) {
  Rng rng(4);
  Matrix m0 = wishart(2, rng), m1 = wishart(2, rng);
  double t = (m0 + m1).trace().real();
  m0 /= t;
  m1 /= t;
  Vector s0 = random_state(2, rng), s1 = random_state(2, rng);
  SymmetricExtension ext = mixture_extension({m0, m1}, {s0, s1}, 3);
  Matrix expect = kron(m0, kron_power(Matrix(s0 * s0.adjoint()), 3)) +
                  kron(m1, kron_power(Matrix(s1 * s1.adjoint()), 3));
  EXPECT_LT((ext.reduced_state() - expect).norm(), 1e-12);
}

TEST(GridSpecTest, Parse) {
  GridSpec d = GridSpec::parse("design");
  EXPECT_EQ(d.mode, GridMode::kDesign);
  GridSpec h = GridSpec::parse("haar:17:500");
  EXPECT_EQ(h.mode, GridMode::kHaar);
  EXPECT_EQ(h.seed, 17u);
  EXPECT_EQ(h.count, 500);
  EXPECT_EQ(GridSpec::parse(h.to_string()).count, 500);
  EXPECT_THROW(GridSpec::parse("haar:1"), ConfigError);
  EXPECT_THROW(GridSpec::parse("sobol"), ConfigError);
  EXPECT_THROW(GridSpec::parse("haar:x:10"), ConfigError);
}

TEST(GridTest, OctahedronResolvesIdentity) {
  Matrix pts;
  RealVector w;
  octahedron(&pts, &w);
  ASSERT_EQ(pts.cols(), 6);
  Matrix acc = Matrix::Zero(2, 2);
  for (Index g = 0; g < 6; ++g) acc += w(g) * 2.0 * pts.col(g) * pts.col(g).adjoint();
  EXPECT_LT((acc - Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_NEAR(w.sum(), 1.0, 1e-14);
}

TEST(GridTest, DesignGridsAreExact) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 5}, {3, 2}, {4, 2}}) {
    MeasureGrid g = build_grid(d, n, GridSpec::parse("design"));
    EXPECT_NEAR(g.weights.sum(), 1.0, 1e-12);
    EXPECT_TRUE(g.residual_exact);
    EXPECT_LT(g.residual, 1e-9) << "d=" << d << " n=" << n;
  }
}

TEST(GridTest, DesignMatchesHaarMoment) {
  // sum_g w_g (phi phi^dagger)^{(x)2} = P_sym / dim_sym.
  Matrix pts;
  RealVector w;
  design_points(3, 2, &pts, &w);
  Matrix acc = Matrix::Zero(9, 9);
  for (Index g = 0; g < pts.cols(); ++g) {
    Matrix p = pts.col(g) * pts.col(g).adjoint();
    acc += w(g) * kron(p, p);
  }
  Matrix expect = symmetric_projector(2, 3).matrix() / 6.0;
  EXPECT_LT((acc - expect).norm(), 1e-12);
}

TEST(GridTest, HaarResidualShrinksWithCount) {
  MeasureGrid small = build_grid(2, 2, GridSpec::parse("haar:9:500"));
  MeasureGrid large = build_grid(2, 2, GridSpec::parse("haar:9:5000"));
  EXPECT_NEAR(large.weights.sum(), 1.0, 1e-12);
  EXPECT_GT(small.residual, large.residual);
}

TEST(GridTest, HaarIsDeterministic) {
  MeasureGrid a = build_grid(3, 2, GridSpec::parse("haar:4:50"));
  MeasureGrid b = build_grid(3, 2, GridSpec::parse("haar:4:50"));
  EXPECT_EQ((a.points - b.points).norm(), 0.0);
  EXPECT_EQ(a.residual, b.residual);
}

TEST(GridTest, ResidualAgreesWithDirectSum) {
  MeasureGrid g = build_grid(2, 3, GridSpec::parse("haar:5:40"));
  const double D = static_cast<double>(dim_sym(3, 2));
  Matrix acc = Matrix::Zero(8, 8);
  for (Index k = 0; k < g.size(); ++k) {
    Vector v = kron_power(Vector(g.points.col(k)), 3);
    acc += g.weights(k) * D * v * v.adjoint();
  }
  double direct = trace_norm(acc - symmetric_projector(3, 2).matrix());
  EXPECT_NEAR(g.residual, direct, 1e-9);
}

TEST(GaussJacobiTest, IntegratesPolynomialsExactly) {
  for (double a : {0.0, 1.0, 3.0}) {
    const int m = 4;
    RealVector u, w;
    gauss_jacobi01(m, a, &u, &w);
    EXPECT_NEAR(w.sum(), 1.0, 1e-13);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double quad = 0.0;
      for (int i = 0; i < m; ++i) quad += w(i) * std::pow(u(i), k);
      // (a + 1) B(k + 1, a + 1)
      double exact = (a + 1.0) * std::exp(std::lgamma(k + 1.0) + std::lgamma(a + 1.0) -
                                          std::lgamma(k + a + 2.0));
      EXPECT_NEAR(quad, exact, 1e-12) << "a=" << a << " k=" << k;
    }
  }
}

TEST(ExtractMeasureTest, PureProductMatchesOverlapWeights) {
  Rng rng(6);
  const int n = 4;
  Matrix sigma = random_density(2, rng);
  Vector zero = testing::basis(2, 0);
  SymmetricExtension ext = mixture_extension({sigma}, {zero}, n);
  MeasureGrid g = build_grid(2, n, GridSpec::parse("design"));
  DeFinettiApprox approx = extract_measure(ext, g);
  ASSERT_EQ(approx.size(), static_cast<std::size_t>(g.size()));
  const double D = static_cast<double>(dim_sym(n, 2));
  for (Index k = 0; k < g.size(); ++k) {
    double overlap = std::pow(std::norm(g.points(0, k)), n);
    EXPECT_LT((approx.m[k] - g.weights(k) * D * overlap * sigma).norm(), 1e-12);
  }
  EXPECT_LT(trace_norm(approx.m_sum() - sigma), g.residual + 1e-12);
}

TEST(ExtractMeasureTest, NoTrainingRegisterGivesProbabilities) {
  Rng rng(7);
  Matrix omega = symmetrize_b(random_density(4, rng), 1, 2, 2);
  SymmetricExtension ext = purify_extension(omega, 1, 2, 2);
  MeasureGrid g = build_grid(ext.d_eff(), 2, GridSpec::parse("design"));
  DeFinettiApprox approx = extract_measure(ext, g);
  double total = 0.0;
  for (const auto& m : approx.m) {
    ASSERT_EQ(m.rows(), 1);
    EXPECT_GE(m(0, 0).real(), -1e-12);
    total += m(0, 0).real();
  }
  EXPECT_NEAR(total, 1.0, g.residual + 1e-9);
  for (const auto& phi : approx.phi)
    EXPECT_NEAR(phi.trace().real(), 1.0, 1e-10);
}

TEST(ExtractMeasureTest, ZeroInstanceIdentity) {
  ChoiChannel q = random_nonsignalling_choi(ChannelDims{2, 2, 2, 2}, 8);
  SymmetricExtension ext = purify_extension(symmetrize_channel(q));
  MeasureGrid g = build_grid(ext.d_eff(), 2, GridSpec::parse("haar:3:2000"));
  DeFinettiApprox approx = extract_measure(ext, g);
  Matrix marg = marginal_channel(q, 0).channel.matrix();
  EXPECT_LE(trace_norm(approx.m_sum() - marg), g.residual + 1e-8);
  EXPECT_LE(approx_error(marg, approx, 0), g.residual + 1e-8);
}

TEST(ExtractMeasureTest, RejectsGridOfWrongShape) {
  SymmetricExtension ext = mixture_extension({Matrix(Matrix::Identity(1, 1))},
                                             {testing::basis(2, 0)}, 2);
  MeasureGrid g = build_grid(2, 3, GridSpec::parse("design"));
  EXPECT_THROW(extract_measure(ext, g), DimensionError);
}

// For a pure product psi^{(x)n} on C^d and an exact design of strength n + 1,
// the single-instance reconstruction is (1 + n psi psi^dagger) / (n + d).
TEST(ApproxErrorTest, DesignSmearingClosedForm) {
  Rng rng(9);
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 2}}) {
    Vector psi = random_state(d, rng);
    Matrix p = psi * psi.adjoint();
    SymmetricExtension ext =
        mixture_extension({Matrix(Matrix::Identity(1, 1))}, {psi}, n);
    MeasureGrid g = build_grid(d, n, GridSpec::parse("design"));
    DeFinettiApprox approx = extract_measure(ext, g);
    Matrix expect = (Matrix::Identity(d, d) + n * p) / static_cast<double>(n + d);
    EXPECT_LT((approx.reconstruct(1) - expect).norm(), 1e-9);
    EXPECT_NEAR(approx_error(p, approx, 1), 2.0 * (d - 1) / (n + d), 1e-9);
  }
}

TEST(ApproxErrorTest, BoundedByTwoPlusDeficit) {
  Rng rng(10);
  Matrix omega = symmetrize_b(random_density(8, rng), 2, 2, 2);
  SymmetricExtension ext = purify_extension(omega, 2, 2, 2);
  MeasureGrid g = build_grid(ext.d_eff(), 2, GridSpec::parse("haar:1:300"));
  DeFinettiApprox approx = extract_measure(ext, g);
  Matrix reduced =
      partial_trace(Operator(omega, Factorization{{"A", 2}, {"B1", 2}, {"B2", 2}}),
                    {"A", "B1"})
          .matrix();
  double err = approx_error(reduced, approx, 1);
  EXPECT_LE(err, 2.0 + trace_norm(approx.m_sum()) - 1.0 + 1e-9);
}

TEST(DeFinettiBoundTest, Values) {
  EXPECT_DOUBLE_EQ(definetti_bound(2, 1, 64), 0.25);
  EXPECT_DOUBLE_EQ(definetti_bound(4, 2, 16), 8.0);
}

}  // namespace
}  // namespace qinductive
