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

#include <stdexcept>

#include "kernels_internal.h"
#include "qinductive/kernels.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qinductive::kernels::parallel {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<bool>& keep) {
  internal::check_square(m, dims);
  std::vector<bool> traced(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) traced[k] = !keep[k];
  const auto ko = subset_offsets(dims, keep);
  const auto to = subset_offsets(dims, traced);
  const long long dk = static_cast<long long>(ko.size());
  const long long nt = static_cast<long long>(to.size());
  Matrix out(dk, dk);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < dk; ++c) {
    for (long long r = 0; r < dk; ++r) {
      std::complex<double> acc = 0;
      for (long long t = 0; t < nt; ++t) acc += m(ko[r] + to[t], ko[c] + to[t]);
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix permute(const Matrix& m, const std::vector<int>& dims,
               const std::vector<int>& order) {
  internal::check_square(m, dims);
  const auto off = permuted_offsets(dims, order);
  const long long n = static_cast<long long>(off.size());
  Matrix out(n, n);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < n; ++c) {
    const auto* src = m.data() + off[c] * n;
    auto* dst = out.data() + c * n;
    for (long long r = 0; r < n; ++r) dst[r] = src[off[r]];
  }
  return out;
}

Vector permute_vector(const Vector& v, const std::vector<int>& dims,
                      const std::vector<int>& order) {
  if (v.size() != product(dims))
    throw std::invalid_argument("permute_vector: size mismatch");
  const auto off = permuted_offsets(dims, order);
  const long long n = v.size();
  Vector out(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) out(i) = v(off[i]);
  return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& mask) {
  internal::check_square(m, dims);
  std::vector<long long> sel, uns;
  internal::split_offsets(dims, mask, &sel, &uns);
  const long long n = m.rows();
  Matrix out(n, n);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < n; ++c)
    for (long long r = 0; r < n; ++r)
      out(r, c) = m(sel[c] + uns[r], sel[r] + uns[c]);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index br = b.rows(), bc = b.cols();
  Matrix out(a.rows() * br, a.cols() * bc);
  const long long cols = a.cols();
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Vector contract_sites(const Vector& psi, Eigen::Index d_left, int n,
                      const Vector& phi) {
  const int d = internal::site_dim(psi.size(), d_left, n, phi.size());
  const Vector phic = phi.conjugate();
  Vector v = psi;
  for (int step = 0; step < n; ++step) {
    const long long rest = v.size() / d;
    Vector w(rest);
#pragma omp parallel for schedule(static) if (rest > 4096)
    for (long long r = 0; r < rest; ++r) {
      std::complex<double> acc = 0;
      for (int l = 0; l < d; ++l) acc += v(r * d + l) * phic(l);
      w(r) = acc;
    }
    v.swap(w);
  }
  return v;
}

Matrix contract_sites_batch(const Vector& psi, Eigen::Index d_left, int n,
                            const Matrix& phis) {
  const int d = internal::site_dim(psi.size(), d_left, n, phis.rows());
  const long long count = phis.cols();
  Matrix out(d_left, count);
  if (n == 0) {
    for (long long g = 0; g < count; ++g) out.col(g) = psi;
    return out;
  }
  constexpr long long kBlock = 16;
  const long long blocks = (count + kBlock - 1) / kBlock;
  Eigen::Map<const Matrix> view(psi.data(), d, psi.size() / d);
#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < blocks; ++b) {
    const long long g0 = b * kBlock;
    const long long width = std::min(kBlock, count - g0);
    Matrix first = view.transpose() * phis.middleCols(g0, width).conjugate();
    for (long long j = 0; j < width; ++j) {
      Vector v = first.col(j);
      const Vector phic = phis.col(g0 + j).conjugate();
      for (int step = 1; step < n; ++step) {
        Eigen::Map<const Matrix> cur(v.data(), d, v.size() / d);
        Vector w = cur.transpose() * phic;
        v.swap(w);
      }
      out.col(g0 + j) = v;
    }
  }
  return out;
}

}  // namespace qinductive::kernels::parallel
