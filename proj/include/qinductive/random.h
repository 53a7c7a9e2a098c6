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

#ifndef QINDUCTIVE_RANDOM_H_
#define QINDUCTIVE_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include "qinductive/tensor_core.h"

namespace qinductive {

// Seedable generator with a fixed, implementation-independent output stream:
// mt19937_64 words mapped to 53-bit uniforms, Box-Muller normals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();
  // Standard complex normal, E|z|^2 = 1.
  Complex complex_normal();
  int uniform_int(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Vector random_state(int d, Rng& rng);
Matrix gaussian_matrix(int rows, int cols, Rng& rng);
// Wishart matrix G G^dagger with G of size d x rank (rank <= 0 means d).
Matrix wishart(int d, Rng& rng, int rank = 0);
Matrix random_density(int d, Rng& rng, int rank = 0);
Matrix random_hermitian(int d, Rng& rng);
Matrix haar_unitary(int d, Rng& rng);
// Kraus operators d_in -> d_out obtained by splitting a random isometry.
// count is raised to ceil(d_in / d_out) when smaller.
std::vector<Matrix> random_kraus(int d_in, int d_out, int count, Rng& rng);
std::vector<int> random_permutation(int n, Rng& rng);

}  // namespace qinductive

#endif  // QINDUCTIVE_RANDOM_H_
