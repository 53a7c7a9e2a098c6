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


#ifndef QINDUCTIVE_CLASSICAL_H_
#define QINDUCTIVE_CLASSICAL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qinductive {

inline constexpr int kMaxClassicalAlphabet = 8;
inline constexpr int kMaxClassicalN = 4;
inline constexpr double kMaxClassifierCount = 1e6;

// Conditional pmf P(y_1..y_n | a, x_1..x_n). probs is flat row-major in
// (a, x_1..x_n, y_1..y_n) with x_1 and y_1 most significant.
struct ClassicalProtocol {
  int nx = 2;
  int ny = 2;
  int na = 1;
  int n = 1;
  std::vector<double> probs;

  static ClassicalProtocol zeros(int nx, int ny, int na, int n);

  std::int64_t contexts() const;  // nx^n
  std::int64_t outcomes() const;  // ny^n
  std::int64_t index(int a, std::int64_t x, std::int64_t y) const {
    return (a * contexts() + x) * outcomes() + y;
  }
  double at(int a, std::int64_t x, std::int64_t y) const {
    return probs[index(a, x, y)];
  }
  double& at(int a, std::int64_t x, std::int64_t y) {
    return probs[index(a, x, y)];
  }
  // Throws DimensionError unless every slice is a pmf within tol.
  void validate(double tol = 1e-12) const;
};

// Mixed-radix digits of v, most significant first.
std::vector<int> digits(std::int64_t v, int base, int n);
std::int64_t from_digits(const std::vector<int>& d, int base);

// q_i(y | a, x_1..x_n) as an ny x nx^n table (column = context).
Eigen::MatrixXd marginal_classical(const ClassicalProtocol& p, int a, int i);
// q_i(y | a, x) for a non-signalling protocol, read at x_j = 0 for j != i.
Eigen::MatrixXd local_marginal(const ClassicalProtocol& p, int a, int i);

struct ClassicalNsReport {
  std::vector<double> per_i_deviation;
  double max_deviation() const;
  bool ok(double tol) const { return max_deviation() <= tol; }
};
ClassicalNsReport is_nonsignalling_classical(const ClassicalProtocol& p);

ClassicalProtocol symmetrize_classical(const ClassicalProtocol& p);

struct ClassifierMixture {
  int nx = 0;
  int ny = 0;
  std::vector<std::vector<int>> functions;  // functions[k][x] = f_k(x)
  std::vector<double> weights;
  // Sum_f mu(f) delta_{y, f(x)} as an ny x nx table.
  Eigen::MatrixXd stochastic_map() const;
};

// mu(f) = prod_x q(f(x) | x) over all ny^nx functions. q is ny x nx and
// column-stochastic.
ClassifierMixture decompose_classifier_mixture(const Eigen::MatrixXd& q);

ClassicalProtocol reconstruct_protocol(
    const std::vector<ClassifierMixture>& mix_per_a, int n);

// Zero-one loss on ny labels.
Eigen::MatrixXd zero_one_loss(int ny);

// (1/n) sum_i s(y_i, y'_i) averaged over P and the i.i.d. pmf dist(x, y'),
// an nx x ny table. The three-argument form uses zero_one_loss.
double classical_expected_risk(const ClassicalProtocol& p,
                               const Eigen::MatrixXd& dist, int a);
double classical_expected_risk(const ClassicalProtocol& p,
                               const Eigen::MatrixXd& dist, int a,
                               const Eigen::MatrixXd& loss);

// Symmetrize, take the single-instance marginal per a, decompose, rebuild.
struct MixtureReduction {
  ClassicalProtocol symmetrized;
  std::vector<ClassifierMixture> mixtures;
  ClassicalProtocol reconstructed;
};
MixtureReduction reduce_to_classifiers(const ClassicalProtocol& p);

// Per a, a random convex mixture of product protocols and relabeled
// generalized PR boxes (y_1 - y_2 = x_1 x_2 mod ny on a random pair).
ClassicalProtocol random_nonsignalling_protocol(int nx, int ny, int na, int n,
                                                std::uint64_t seed);
ClassicalProtocol product_protocol(const std::vector<Eigen::MatrixXd>& q_per_a,
                                   int n);

}  // namespace qinductive

#endif  // QINDUCTIVE_CLASSICAL_H_
