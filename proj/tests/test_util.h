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


#ifndef QINDUCTIVE_TESTS_TEST_UTIL_H_
#define QINDUCTIVE_TESTS_TEST_UTIL_H_

#include <vector>

#include "qinductive/kernels.h"
#include "qinductive/tensor_core.h"

namespace qinductive::testing {

// Reference computations written directly from index definitions. They
// deliberately avoid the library kernels.

inline std::vector<int> multi_index(Index v, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = static_cast<int>(v % dims[k]);
    v /= dims[k];
  }
  return out;
}

inline Index flat_index(const std::vector<int>& idx,
                        const std::vector<int>& dims) {
  Index v = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) v = v * dims[k] + idx[k];
  return v;
}

inline Matrix naive_partial_trace(const Matrix& m, const std::vector<int>& dims,
                                  const std::vector<bool>& keep) {
  std::vector<int> kept;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept.push_back(dims[k]);
  Index dk = 1;
  for (int d : kept) dk *= d;
  Matrix out = Matrix::Zero(dk, dk);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      auto ri = multi_index(r, dims), ci = multi_index(c, dims);
      bool diag = true;
      std::vector<int> rk, ck;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          rk.push_back(ri[k]);
          ck.push_back(ci[k]);
        } else if (ri[k] != ci[k]) {
          diag = false;
        }
      }
      if (diag) out(flat_index(rk, kept), flat_index(ck, kept)) += m(r, c);
    }
  return out;
}

inline Matrix naive_permute(const Matrix& m, const std::vector<int>& dims,
                            const std::vector<int>& order) {
  std::vector<int> out_dims;
  for (int k : order) out_dims.push_back(dims[k]);
  Matrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      auto ri = multi_index(r, out_dims), ci = multi_index(c, out_dims);
      std::vector<int> rs(dims.size()), cs(dims.size());
      for (std::size_t k = 0; k < order.size(); ++k) {
        rs[order[k]] = ri[k];
        cs[order[k]] = ci[k];
      }
      out(r, c) = m(flat_index(rs, dims), flat_index(cs, dims));
    }
  return out;
}

inline Matrix naive_partial_transpose(const Matrix& m,
                                      const std::vector<int>& dims,
                                      const std::vector<bool>& mask) {
  Matrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      auto ri = multi_index(r, dims), ci = multi_index(c, dims);
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (mask[k]) std::swap(ri[k], ci[k]);
      out(r, c) = m(flat_index(ri, dims), flat_index(ci, dims));
    }
  return out;
}

inline Matrix kraus_apply(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

inline Matrix ket_bra(const Vector& a, const Vector& b) {
  return a * b.adjoint();
}

inline Vector basis(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

inline Matrix max_entangled(int d) {
  Vector omega = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) omega(k * d + k) = 1.0;
  omega /= std::sqrt(static_cast<double>(d));
  return omega * omega.adjoint();
}

}  // namespace qinductive::testing

#endif  // QINDUCTIVE_TESTS_TEST_UTIL_H_
