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

#include "qinductive/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qinductive {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

int Rng::uniform_int(int n) {
  return static_cast<int>(uniform() * n) % n;
}

Vector random_state(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = rng.complex_normal();
  return g;
}

Matrix wishart(int d, Rng& rng, int rank) {
  Matrix g = gaussian_matrix(d, rank <= 0 ? d : rank, rng);
  return g * g.adjoint();
}

Matrix random_density(int d, Rng& rng, int rank) {
  Matrix w = wishart(d, rng, rank);
  return w / w.trace().real();
}

Matrix random_hermitian(int d, Rng& rng) {
  Matrix g = gaussian_matrix(d, d, rng);
  return (g + g.adjoint()) * 0.5;
}

Matrix haar_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, d, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex diag = r(j, j);
    double a = std::abs(diag);
    if (a > 0) q.col(j) *= diag / a;
  }
  return q;
}

std::vector<Matrix> random_kraus(int d_in, int d_out, int count, Rng& rng) {
  // An isometry needs d_out * count >= d_in.
  count = std::max(count, (d_in + d_out - 1) / d_out);
  Matrix u = haar_unitary(d_out * count, rng);
  Matrix iso = u.leftCols(d_in);
  std::vector<Matrix> kraus;
  for (int k = 0; k < count; ++k) kraus.push_back(iso.middleRows(k * d_out, d_out));
  return kraus;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.uniform_int(i + 1)]);
  return p;
}

}  // namespace qinductive
