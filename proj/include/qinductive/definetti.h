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

#ifndef QINDUCTIVE_DEFINETTI_H_
#define QINDUCTIVE_DEFINETTI_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qinductive/channels.h"
#include "qinductive/tensor_core.h"

namespace qinductive {

// A state on A' (x) B'^{(x)n} that is symmetric under permutations of the B'
// factors. A' = A (x) a_aux and B' = B (x) b_aux; both auxiliary factors are
// traced out when the approximation is reported on A (x) B.
//
// The vector is held either densely (A' most significant) or as a product
// sum sum_t a_t (x) b_t^{(x)n}.
struct SymmetricExtension {
  int n = 0;
  int d_A = 1;
  int a_aux = 1;
  int d_B = 1;
  int b_aux = 1;
  bool purified = false;
  bool product_sum = false;
  Vector psi;
  Matrix a_terms;  // (d_A * a_aux) x T
  Matrix b_terms;  // (d_B * b_aux) x T

  Index d_aprime() const { return static_cast<Index>(d_A) * a_aux; }
  int d_eff() const { return d_B * b_aux; }
  Vector dense() const;
  double norm() const;
  // Reduced state on A (x) B^{(x)n}; small cases only.
  Matrix reduced_state() const;
};

// Purifies a trace-one state on A (x) B^{(x)n} that is invariant under
// permutations of the B factors. States supported on A (x) Sym^n(B) keep
// d_eff = d_B with the purifying register placed on A'. All others use the
// pairwise purification with B' = B (x) B-bar and d_eff = d_B^2.
SymmetricExtension purify_extension(const Matrix& omega, int d_A, int d_B,
                                    int n);
SymmetricExtension purify_extension(const ChoiChannel& omega);

// Extension of sum_j m_j (x) (psi_j psi_j^dagger)^{(x)n} with PSD m_j on A
// and unit vectors psi_j on B.
SymmetricExtension mixture_extension(const std::vector<Matrix>& weights,
                                     const std::vector<Vector>& states, int n);

// Weight of omega on A (x) Sym^n(B).
double symmetric_weight(const Matrix& omega, int d_A, int d_B, int n);

enum class GridMode { kHaar, kDesign };

struct GridSpec {
  GridMode mode = GridMode::kDesign;
  std::uint64_t seed = 0;
  int count = 0;

  // "design" or "haar:SEED:COUNT".
  static GridSpec parse(const std::string& text);
  std::string to_string() const;
};

struct MeasureGrid {
  GridSpec spec;
  int d = 0;
  int n = 0;
  Matrix points;       // d x count, unit columns
  RealVector weights;  // sums to 1
  double residual = 0.0;
  // False when `residual` is the Frobenius upper bound rather than the exact
  // trace norm.
  bool residual_exact = true;

  Index size() const { return points.cols(); }
};

inline constexpr long long kMaxDesignPoints = 250000;
inline constexpr long long kExactResidualDim = 1024;

MeasureGrid build_grid(int d_eff, int n, const GridSpec& spec);
// || sum_g w_g dim_sym phi_g^{(x)n} - P_sym ||_1, exact or bounded.
double resolution_residual(const Matrix& points, const RealVector& weights,
                           int n, bool* exact);
// Positive-weight cubature on the unit sphere of C^d integrating every
// polynomial of bidegree (t, t) exactly.
void design_points(int d, int t, Matrix* points, RealVector* weights);
// Qubit projective designs from the octahedron (t = 3) and icosahedron
// (t = 5) Bloch vertices.
void octahedron(Matrix* points, RealVector* weights);
void icosahedron(Matrix* points, RealVector* weights);
// Gauss nodes and weights (summing to 1) for the weight (1 - u)^a on [0, 1].
void gauss_jacobi01(int m, double a, RealVector* nodes, RealVector* weights);

struct DeFinettiApprox {
  int source_n = 0;
  int d_A = 1;
  int d_B = 1;
  double grid_residual = 0.0;
  std::vector<Matrix> m;    // PSD on A
  std::vector<Matrix> phi;  // trace-one states on B

  Matrix m_sum() const;
  std::size_t size() const { return m.size(); }
  // sum_j M_j (x) phi_j^{(x)k}.
  Matrix reconstruct(int k) const;
};

DeFinettiApprox extract_measure(const SymmetricExtension& ext,
                                const MeasureGrid& grid);
// ||omega_k - sum_j M_j (x) phi_j^{(x)k}||_1 with omega_k on A (x) B^{(x)k}.
double approx_error(const Matrix& omega_k, const DeFinettiApprox& approx,
                    int k);
double definetti_bound(int d, int k, int n);

}  // namespace qinductive

#endif  // QINDUCTIVE_DEFINETTI_H_
