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

#ifndef QINDUCTIVE_TENSOR_CORE_H_
#define QINDUCTIVE_TENSOR_CORE_H_

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qinductive {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-8;
inline constexpr Index kMaxDenseDim = 4096;

struct Factor {
  std::string label;
  int dim = 1;

  bool operator==(const Factor&) const = default;
};

class Factorization {
 public:
  Factorization() = default;
  Factorization(std::initializer_list<Factor> factors);
  explicit Factorization(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  Index total_dim() const;
  std::vector<int> dims() const;
  std::vector<std::string> labels() const;
  // Position of `label`, or -1.
  int find(const std::string& label) const;
  // Position of `label`; throws LabelError when absent.
  int position(const std::string& label) const;
  int dim(const std::string& label) const;
  bool contains(const std::string& label) const { return find(label) >= 0; }

  Factorization concat(const Factorization& other) const;
  Factorization select(const std::vector<bool>& mask) const;

  bool operator==(const Factorization&) const = default;

 private:
  std::vector<Factor> factors_;
};

class Operator {
 public:
  Operator() = default;
  Operator(Matrix matrix, Factorization shape);

  static Operator identity(const Factorization& shape);
  static Operator zero(const Factorization& shape);

  const Matrix& matrix() const { return matrix_; }
  const Factorization& shape() const { return shape_; }
  Index dim() const { return matrix_.rows(); }
  Complex trace() const { return matrix_.trace(); }

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(Complex s) const;

 private:
  Matrix matrix_;
  Factorization shape_;
};

struct Eigh {
  RealVector values;  // ascending
  Matrix vectors;
};

// Returns (M + M^dagger)/2, or throws NotHermitianError if the
// anti-Hermitian part has an entry above kHermitianTol (scaled by max(1,|M|)).
Matrix hermitize(const Matrix& m);
Eigh eigh(const Matrix& m);
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);
// Clips eigenvalues in [-kPsdTol, 0) to 0; throws NotPsdError below.
Matrix clip_psd(const Matrix& m);
Matrix sqrt_psd(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_power(const Matrix& a, int n);
Vector kron(const Vector& a, const Vector& b);
Vector kron_power(const Vector& a, int n);

Operator tensor(const Operator& a, const Operator& b);
// Keeps the listed factors in their original order and traces the rest.
Operator partial_trace(const Operator& op, const std::vector<std::string>& keep);
Operator trace_out(const Operator& op, const std::vector<std::string>& drop);
Operator partial_transpose(const Operator& op,
                           const std::vector<std::string>& subset);
// Reorders factors so that the result's factor k is `order[k]`.
Operator reorder(const Operator& op, const std::vector<std::string>& order);
Operator relabel(const Operator& op, const std::vector<std::string>& labels);
// op (x) 1 on the factors of `full` that op lacks, in the order of `full`.
Operator embed(const Operator& op, const Factorization& full);

double trace_norm(const Matrix& m);
double trace_norm(const Operator& op);
double op_norm(const Matrix& m);
double op_norm(const Operator& op);
double fidelity(const Matrix& rho, const Matrix& sigma);
double fidelity(const Operator& rho, const Operator& sigma);

// Applies f to the eigenvalues of a Hermitian operator. Eigenvalues with
// |lambda| <= cutoff are mapped to 0.
Matrix herm_fn(const Matrix& m, const std::function<double(double)>& f,
               double cutoff);
Operator herm_fn(const Operator& op, const std::function<double(double)>& f,
                 double cutoff);

// Unitary on (C^d)^{(x)n} sending the factor at position k to position
// perm[k]. Factors are labelled "B1".."Bn".
Operator permutation_operator(const std::vector<int>& perm, int d);
Operator symmetric_projector(int n, int d);

// binom(n + d - 1, n), exact in 64-bit for the sizes used here.
long long dim_sym(int n, int d);
// Occupation vectors (k_0..k_{d-1}) with sum n, in lexicographic order.
std::vector<std::vector<int>> occupation_vectors(int n, int d);
double log_factorial(int n);

std::vector<std::vector<int>> all_permutations(int n);
std::vector<int> compose(const std::vector<int>& sigma,
                         const std::vector<int>& tau);
std::vector<int> inverse(const std::vector<int>& sigma);

}  // namespace qinductive

#endif  // QINDUCTIVE_TENSOR_CORE_H_
