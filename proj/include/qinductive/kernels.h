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

#ifndef QINDUCTIVE_KERNELS_H_
#define QINDUCTIVE_KERNELS_H_

#include <vector>

#include <Eigen/Dense>

// Index kernels on dense operators over a tensor product of factors with
// dimensions `dims`. Composite indices put the first factor in the most
// significant position, matching Kronecker order.
//
// `serial` is the reference implementation. `parallel` has the same
// contract and uses OpenMP when it is available.

namespace qinductive::kernels {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace serial {

// Traces out every factor whose keep flag is false.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<bool>& keep);
// Output factor k is input factor order[k].
Matrix permute(const Matrix& m, const std::vector<int>& dims,
               const std::vector<int>& order);
Vector permute_vector(const Vector& v, const std::vector<int>& dims,
                      const std::vector<int>& order);
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& mask);
Matrix kron(const Matrix& a, const Matrix& b);
// (1 (x) <phi|^{(x)n}) psi for psi on C^{d_left} (x) (C^d)^{(x)n}.
Vector contract_sites(const Vector& psi, Eigen::Index d_left, int n,
                      const Vector& phi);
// Column g is contract_sites(psi, d_left, n, phis.col(g)).
Matrix contract_sites_batch(const Vector& psi, Eigen::Index d_left, int n,
                            const Matrix& phis);

}  // namespace serial

namespace parallel {

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<bool>& keep);
Matrix permute(const Matrix& m, const std::vector<int>& dims,
               const std::vector<int>& order);
Vector permute_vector(const Vector& v, const std::vector<int>& dims,
                      const std::vector<int>& order);
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& mask);
Matrix kron(const Matrix& a, const Matrix& b);
Vector contract_sites(const Vector& psi, Eigen::Index d_left, int n,
                      const Vector& phi);
Matrix contract_sites_batch(const Vector& psi, Eigen::Index d_left, int n,
                            const Matrix& phis);
int max_threads();

}  // namespace parallel

std::vector<long long> strides(const std::vector<int>& dims);
long long product(const std::vector<int>& dims);
// Enumerates the selected factors (first most significant) and returns, for
// each such multi-index, its offset in the full composite index.
std::vector<long long> subset_offsets(const std::vector<int>& dims,
                                      const std::vector<bool>& select);
// For each output composite index (output factor k = input factor order[k]),
// the matching input composite index.
std::vector<long long> permuted_offsets(const std::vector<int>& dims,
                                        const std::vector<int>& order);
// Permutation matrix P with P |x> = |x reordered by `order`>.
Matrix permutation_matrix(const std::vector<int>& dims,
                          const std::vector<int>& order);

}  // namespace qinductive::kernels

#endif  // QINDUCTIVE_KERNELS_H_
