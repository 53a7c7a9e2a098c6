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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qinductive/definetti.h"
#include "qinductive/errors.h"

namespace qinductive {
namespace {

Vector bloch_state(double x, double y, double z) {
  double r = std::sqrt(x * x + y * y + z * z);
  double theta = std::acos(std::clamp(z / r, -1.0, 1.0));
  double phi = std::atan2(y, x);
  Vector v(2);
  v(0) = std::cos(theta / 2);
  v(1) = std::polar(std::sin(theta / 2), phi);
  return v;
}

void bloch_design(const std::vector<std::array<double, 3>>& vertices,
                  Matrix* points, RealVector* weights) {
  const Index count = static_cast<Index>(vertices.size());
  points->resize(2, count);
  *weights = RealVector::Constant(count, 1.0 / static_cast<double>(count));
  for (Index g = 0; g < count; ++g) {
    const auto& v = vertices[g];
    points->col(g) = bloch_state(v[0], v[1], v[2]);
  }
}

}  // namespace

void gauss_jacobi01(int m, double a, RealVector* nodes, RealVector* weights) {
  // Golub-Welsch for the Jacobi weight (1 - x)^a on [-1, 1], mapped to
  // u = (1 + x) / 2.
  const double alpha = a, beta = 0.0;
  RealVector diag(m), off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    double s = 2.0 * k + alpha + beta;
    diag(k) = (k == 0 && s == 0.0)
                  ? (beta - alpha) / (alpha + beta + 2.0)
                  : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    double s = 2.0 * k + alpha + beta;
    off(k - 1) = 2.0 / s *
                 std::sqrt(k * (k + alpha) * (k + beta) * (k + alpha + beta) /
                           ((s - 1.0) * (s + 1.0)));
  }
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) jac(k, k) = diag(k);
  for (int k = 0; k + 1 < m; ++k) jac(k, k + 1) = jac(k + 1, k) = off(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  *nodes = (es.eigenvalues().array() + 1.0) / 2.0;
  *weights = es.eigenvectors().row(0).array().square().transpose();
  *weights /= weights->sum();
}

void design_points(int d, int t, Matrix* points, RealVector* weights) {
  if (d == 1) {
    *points = Matrix::Ones(1, 1);
    *weights = RealVector::Ones(1);
    return;
  }
  const int m = (t + 2) / 2;
  const int phases = t + 1;
  long long count = 1;
  for (int j = 1; j < d; ++j) {
    count *= static_cast<long long>(m) * phases;
    if (count > kMaxDesignPoints)
      throw DesignUnavailable("design for d=" + std::to_string(d) +
                              ", t=" + std::to_string(t) +
                              " exceeds the point budget");
  }
  // Stick-breaking coordinate u_j has density proportional to
  // (1 - u)^(d - j - 1) under the uniform measure on the simplex.
  std::vector<RealVector> u_nodes(d - 1), u_weights(d - 1);
  for (int j = 1; j < d; ++j)
    gauss_jacobi01(m, d - j - 1, &u_nodes[j - 1], &u_weights[j - 1]);
  points->resize(d, count);
  weights->resize(count);
  std::vector<int> digit(2 * (d - 1), 0);
  for (long long g = 0; g < count; ++g) {
    long long rem = g;
    for (int j = 2 * (d - 1) - 1; j >= 0; --j) {
      int base = j < d - 1 ? m : phases;
      digit[j] = static_cast<int>(rem % base);
      rem /= base;
    }
    double w = 1.0, stick = 1.0;
    for (int j = 0; j < d - 1; ++j) {
      double u = u_nodes[j](digit[j]);
      w *= u_weights[j](digit[j]) / phases;
      double x = stick * u;
      stick *= 1.0 - u;
      double theta =
          j == 0 ? 0.0 : 2.0 * std::numbers::pi * digit[d - 1 + j - 1] / phases;
      (*points)(j, g) = std::polar(std::sqrt(std::max(x, 0.0)), theta);
    }
    double theta_last = 2.0 * std::numbers::pi * digit[2 * (d - 1) - 1] / phases;
    (*points)(d - 1, g) = std::polar(std::sqrt(std::max(stick, 0.0)), theta_last);
    (*weights)(g) = w;
  }
}

void octahedron(Matrix* points, RealVector* weights) {
  bloch_design({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1},
                {0, 0, -1}},
               points, weights);
}

void icosahedron(Matrix* points, RealVector* weights) {
  const double p = std::numbers::phi;
  std::vector<std::array<double, 3>> v;
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      v.push_back({0, s1, s2 * p});
      v.push_back({s1, s2 * p, 0});
      v.push_back({s2 * p, 0, s1});
    }
  bloch_design(v, points, weights);
}

}  // namespace qinductive
