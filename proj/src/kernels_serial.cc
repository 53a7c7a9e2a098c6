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

#include "qinductive/kernels.h"

#include <stdexcept>

#include "kernels_internal.h"

namespace qinductive::kernels {

std::vector<long long> strides(const std::vector<int>& dims) {
  std::vector<long long> s(dims.size());
  long long acc = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

long long product(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return p;
}

namespace {

// Enumerates multi-indices over `dims` (first most significant) and maps
// each one to sum_k digit_k * step[k].
std::vector<long long> mapped_offsets(const std::vector<int>& dims,
                                      const std::vector<long long>& step) {
  std::vector<long long> out{0};
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<long long> next;
    next.reserve(out.size() * dims[k]);
    for (long long base : out)
      for (int j = 0; j < dims[k]; ++j) next.push_back(base + j * step[k]);
    out.swap(next);
  }
  return out;
}

}  // namespace

std::vector<long long> subset_offsets(const std::vector<int>& dims,
                                      const std::vector<bool>& select) {
  if (select.size() != dims.size())
    throw std::invalid_argument("subset_offsets: mask size mismatch");
  auto s = strides(dims);
  std::vector<int> sub_dims;
  std::vector<long long> sub_step;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (select[k]) {
      sub_dims.push_back(dims[k]);
      sub_step.push_back(s[k]);
    }
  }
  return mapped_offsets(sub_dims, sub_step);
}

std::vector<long long> permuted_offsets(const std::vector<int>& dims,
                                        const std::vector<int>& order) {
  if (order.size() != dims.size())
    throw std::invalid_argument("permute: order size mismatch");
  auto s = strides(dims);
  std::vector<int> out_dims(order.size());
  std::vector<long long> step(order.size());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int src = order[k];
    if (src < 0 || src >= static_cast<int>(dims.size()) || seen[src])
      throw std::invalid_argument("permute: order is not a permutation");
    seen[src] = true;
    out_dims[k] = dims[src];
    step[k] = s[src];
  }
  return mapped_offsets(out_dims, step);
}

Matrix permutation_matrix(const std::vector<int>& dims,
                          const std::vector<int>& order) {
  auto off = permuted_offsets(dims, order);
  const long long n = static_cast<long long>(off.size());
  Matrix p = Matrix::Zero(n, n);
  for (long long y = 0; y < n; ++y) p(y, off[y]) = 1.0;
  return p;
}

namespace internal {

void split_offsets(const std::vector<int>& dims, const std::vector<bool>& mask,
                   std::vector<long long>* sel_part,
                   std::vector<long long>* uns_part) {
  std::vector<bool> inv(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) inv[k] = !mask[k];
  auto sel = subset_offsets(dims, mask);
  auto uns = subset_offsets(dims, inv);
  long long total = product(dims);
  sel_part->assign(total, 0);
  uns_part->assign(total, 0);
  for (long long a : sel)
    for (long long b : uns) {
      (*sel_part)[a + b] = a;
      (*uns_part)[a + b] = b;
    }
}

void check_square(const Matrix& m, const std::vector<int>& dims) {
  if (m.rows() != m.cols() || m.rows() != product(dims))
    throw std::invalid_argument("kernel: matrix does not match dims");
}

int site_dim(Eigen::Index total, Eigen::Index d_left, int n, Eigen::Index d) {
  Eigen::Index expect = d_left;
  for (int i = 0; i < n; ++i) expect *= d;
  if (expect != total)
    throw std::invalid_argument("contract_sites: size mismatch");
  return static_cast<int>(d);
}

}  // namespace internal

namespace serial {

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<bool>& keep) {
  internal::check_square(m, dims);
  std::vector<bool> traced(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) traced[k] = !keep[k];
  auto ko = subset_offsets(dims, keep);
  auto to = subset_offsets(dims, traced);
  const long long dk = static_cast<long long>(ko.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long long c = 0; c < dk; ++c)
    for (long long r = 0; r < dk; ++r) {
      std::complex<double> acc = 0;
      for (long long t : to) acc += m(ko[r] + t, ko[c] + t);
      out(r, c) = acc;
    }
  return out;
}

Matrix permute(const Matrix& m, const std::vector<int>& dims,
               const std::vector<int>& order) {
  internal::check_square(m, dims);
  auto off = permuted_offsets(dims, order);
  const long long n = static_cast<long long>(off.size());
  Matrix out(n, n);
  for (long long c = 0; c < n; ++c)
    for (long long r = 0; r < n; ++r) out(r, c) = m(off[r], off[c]);
  return out;
}

Vector permute_vector(const Vector& v, const std::vector<int>& dims,
                      const std::vector<int>& order) {
  if (v.size() != product(dims))
    throw std::invalid_argument("permute_vector: size mismatch");
  auto off = permuted_offsets(dims, order);
  Vector out(v.size());
  for (long long i = 0; i < v.size(); ++i) out(i) = v(off[i]);
  return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& mask) {
  internal::check_square(m, dims);
  std::vector<long long> sel, uns;
  internal::split_offsets(dims, mask, &sel, &uns);
  const long long n = m.rows();
  Matrix out(n, n);
  for (long long c = 0; c < n; ++c)
    for (long long r = 0; r < n; ++r)
      out(r, c) = m(sel[c] + uns[r], sel[r] + uns[c]);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector contract_sites(const Vector& psi, Eigen::Index d_left, int n,
                      const Vector& phi) {
  const int d = internal::site_dim(psi.size(), d_left, n, phi.size());
  Vector v = psi;
  const Vector phic = phi.conjugate();
  for (int step = 0; step < n; ++step) {
    Eigen::Index rest = v.size() / d;
    Eigen::Map<const Matrix> view(v.data(), d, rest);
    Vector w = view.transpose() * phic;
    v.swap(w);
  }
  return v;
}

Matrix contract_sites_batch(const Vector& psi, Eigen::Index d_left, int n,
                            const Matrix& phis) {
  Matrix out(d_left, phis.cols());
  for (Eigen::Index g = 0; g < phis.cols(); ++g)
    out.col(g) = contract_sites(psi, d_left, n, phis.col(g));
  return out;
}

}  // namespace serial
}  // namespace qinductive::kernels
