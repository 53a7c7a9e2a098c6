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

#include "qinductive/definetti.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "qinductive/errors.h"
#include "qinductive/kernels.h"

namespace qinductive {
namespace {

constexpr Index kMaxExtensionSize = Index{1} << 26;

Index ipow(Index base, int n) {
  Index r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

Complex cpow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

// Row-major vectorization: v[r * cols + c] = m(r, c).
Vector row_major(const Matrix& m) {
  Matrix t = m.transpose();
  return Eigen::Map<const Vector>(t.data(), t.size());
}

// Reduced density of a unit vector on (kept (x) aux), tracing aux.
Matrix reduce_vector(const Vector& v, Index kept, Index aux) {
  Eigen::Map<const Matrix> view(v.data(), aux, kept);
  Matrix x = view.transpose();
  return x * x.adjoint();
}

// Groups the indices of (C^d)^{(x)n} by occupation vector.
std::vector<std::vector<Index>> occupation_classes(int d, int n) {
  std::map<std::vector<int>, std::vector<Index>> classes;
  const Index total = ipow(d, n);
  std::vector<int> occ(d);
  for (Index i = 0; i < total; ++i) {
    std::fill(occ.begin(), occ.end(), 0);
    Index x = i;
    for (int s = 0; s < n; ++s) {
      ++occ[x % d];
      x /= d;
    }
    classes[occ].push_back(i);
  }
  std::vector<std::vector<Index>> out;
  for (auto& [key, idx] : classes) out.push_back(std::move(idx));
  return out;
}

void check_symmetric(const Matrix& omega, int d_A, int d_B, int n) {
  std::vector<int> dims{d_A};
  for (int i = 0; i < n; ++i) dims.push_back(d_B);
  for (int k = 2; k <= n; ++k) {
    std::vector<int> order(n + 1);
    for (int j = 0; j <= n; ++j) order[j] = j;
    std::swap(order[1], order[k]);
    Matrix moved = kernels::parallel::permute(omega, dims, order);
    double dev = (moved - omega).cwiseAbs().maxCoeff();
    if (dev > 1e-8)
      throw NotSymmetricError("state is not symmetric under swapping sites 1 and " +
                              std::to_string(k) + " (" + std::to_string(dev) +
                              ")");
  }
}

}  // namespace

Vector SymmetricExtension::dense() const {
  if (!product_sum) return psi;
  const Index total = d_aprime() * ipow(d_eff(), n);
  if (total > kMaxExtensionSize)
    throw TooLargeError("extension too large to materialize");
  Vector out = Vector::Zero(total);
  for (Index t = 0; t < a_terms.cols(); ++t)
    out += kron(Vector(a_terms.col(t)), kron_power(Vector(b_terms.col(t)), n));
  return out;
}

double SymmetricExtension::norm() const {
  if (!product_sum) return psi.norm();
  Matrix ga = a_terms.adjoint() * a_terms;
  Matrix gb = b_terms.adjoint() * b_terms;
  Complex acc = 0.0;
  for (Index t = 0; t < ga.cols(); ++t)
    for (Index s = 0; s < ga.rows(); ++s) acc += ga(s, t) * cpow(gb(s, t), n);
  return std::sqrt(std::max(0.0, acc.real()));
}

Matrix SymmetricExtension::reduced_state() const {
  Vector v = dense();
  std::vector<int> dims{d_A, a_aux};
  for (int i = 0; i < n; ++i) {
    dims.push_back(d_B);
    dims.push_back(b_aux);
  }
  // Kept factors first, auxiliaries last.
  std::vector<int> order{0};
  for (int i = 0; i < n; ++i) order.push_back(2 + 2 * i);
  order.push_back(1);
  for (int i = 0; i < n; ++i) order.push_back(3 + 2 * i);
  Vector moved = kernels::parallel::permute_vector(v, dims, order);
  Index kept = d_A * ipow(d_B, n);
  if (kept > kMaxDenseDim)
    throw TooLargeError("reduced_state: dimension too large");
  return reduce_vector(moved, kept, moved.size() / kept);
}

double symmetric_weight(const Matrix& omega, int d_A, int d_B, int n) {
  const Index site_total = ipow(d_B, n);
  if (omega.rows() != d_A * site_total)
    throw DimensionError("symmetric_weight: dimension mismatch");
  auto classes = occupation_classes(d_B, n);
  double acc = 0.0;
  for (Index a = 0; a < d_A; ++a) {
    const Index base = a * site_total;
    for (const auto& cls : classes) {
      Complex s = 0.0;
      for (Index r : cls)
        for (Index c : cls) s += omega(base + r, base + c);
      acc += s.real() / static_cast<double>(cls.size());
    }
  }
  return acc;
}

SymmetricExtension purify_extension(const Matrix& omega, int d_A, int d_B,
                                    int n) {
  const Index side = d_A * ipow(d_B, n);
  if (omega.rows() != side || omega.cols() != side)
    throw DimensionError("purify_extension: dimension mismatch");
  Matrix rho = clip_psd(omega);
  double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw DimensionError("purify_extension: trace is " + std::to_string(tr));
  check_symmetric(rho, d_A, d_B, n);

  SymmetricExtension ext;
  ext.n = n;
  ext.d_A = d_A;
  ext.d_B = d_B;
  if (symmetric_weight(rho, d_A, d_B, n) >= 1.0 - 1e-10) {
    Eigh e = eigh(rho);
    const double top = e.values.maxCoeff();
    std::vector<Index> support;
    for (Index i = 0; i < e.values.size(); ++i)
      if (e.values(i) > 1e-13 * top) support.push_back(i);
    const Index r = static_cast<Index>(support.size());
    // sum_i sqrt(lambda_i) e_i (x) |i>, regrouped as (a, i, b_1..b_n).
    Matrix cols(side, r);
    for (Index j = 0; j < r; ++j)
      cols.col(j) = e.vectors.col(support[j]) * std::sqrt(e.values(support[j]));
    Vector v = row_major(cols);
    ext.psi = kernels::parallel::permute_vector(
        v, {d_A, static_cast<int>(ipow(d_B, n)), static_cast<int>(r)},
        {0, 2, 1});
    ext.a_aux = static_cast<int>(r);
    ext.b_aux = 1;
    ext.purified = false;
    return ext;
  }
  if (side * side > kMaxExtensionSize)
    throw TooLargeError("purify_extension: purification too large");
  // (sqrt(omega) (x) 1)|Phi>, with factors (a, b_1..b_n, a', b'_1..b'_n)
  // regrouped into (a, a', b_1, b'_1, ...).
  Vector v = row_major(sqrt_psd(rho));
  std::vector<int> dims{d_A};
  for (int i = 0; i < n; ++i) dims.push_back(d_B);
  dims.push_back(d_A);
  for (int i = 0; i < n; ++i) dims.push_back(d_B);
  std::vector<int> order{0, n + 1};
  for (int i = 1; i <= n; ++i) {
    order.push_back(i);
    order.push_back(n + 1 + i);
  }
  ext.psi = kernels::parallel::permute_vector(v, dims, order);
  ext.a_aux = d_A;
  ext.b_aux = d_B;
  ext.purified = true;
  return ext;
}

SymmetricExtension purify_extension(const ChoiChannel& omega) {
  return purify_extension(omega.matrix(), omega.d_A(),
                          omega.d_X() * omega.d_Y(), omega.n());
}

SymmetricExtension mixture_extension(const std::vector<Matrix>& weights,
                                     const std::vector<Vector>& states, int n) {
  if (weights.empty() || weights.size() != states.size())
    throw DimensionError("mixture_extension: list sizes differ");
  const int d_A = static_cast<int>(weights.front().rows());
  const int d_B = static_cast<int>(states.front().size());
  const Index terms = static_cast<Index>(weights.size());
  SymmetricExtension ext;
  ext.n = n;
  ext.d_A = d_A;
  ext.d_B = d_B;
  ext.a_aux = d_A * static_cast<int>(terms);
  ext.b_aux = 1;
  ext.product_sum = true;
  ext.a_terms = Matrix::Zero(static_cast<Index>(d_A) * ext.a_aux, terms);
  ext.b_terms.resize(d_B, terms);
  for (Index t = 0; t < terms; ++t) {
    // vec(sqrt m_t) (x) e_t on A (x) (A-bar (x) J).
    Vector label = Vector::Zero(terms);
    label(t) = 1.0;
    ext.a_terms.col(t) = kron(row_major(sqrt_psd(weights[t])), label);
    ext.b_terms.col(t) = states[t] / states[t].norm();
  }
  return ext;
}

Matrix DeFinettiApprox::m_sum() const {
  Matrix s = Matrix::Zero(d_A, d_A);
  for (const auto& mj : m) s += mj;
  return s;
}

Matrix DeFinettiApprox::reconstruct(int k) const {
  const Index side = d_A * ipow(d_B, k);
  if (side > kMaxDenseDim)
    throw TooLargeError("reconstruct: dimension too large");
  Matrix out = Matrix::Zero(side, side);
  for (std::size_t j = 0; j < m.size(); ++j)
    out += kron(m[j], kron_power(phi[j], k));
  return out;
}

DeFinettiApprox extract_measure(const SymmetricExtension& ext,
                                const MeasureGrid& grid) {
  if (grid.d != ext.d_eff() || grid.n != ext.n)
    throw DimensionError("grid built for (d=" + std::to_string(grid.d) +
                         ", n=" + std::to_string(grid.n) +
                         ") but extension has (d=" +
                         std::to_string(ext.d_eff()) +
                         ", n=" + std::to_string(ext.n) + ")");
  const double D = static_cast<double>(dim_sym(ext.n, ext.d_eff()));
  const Index count = grid.size();
  Matrix v;
  if (ext.product_sum) {
    Matrix overlaps = grid.points.adjoint() * ext.b_terms;
    for (Index t = 0; t < overlaps.cols(); ++t)
      for (Index g = 0; g < count; ++g)
        overlaps(g, t) = cpow(overlaps(g, t), ext.n);
    v = ext.a_terms * overlaps.transpose();
  } else {
    v = kernels::parallel::contract_sites_batch(ext.psi, ext.d_aprime(), ext.n,
                                                grid.points);
  }
  DeFinettiApprox approx;
  approx.source_n = ext.n;
  approx.d_A = ext.d_A;
  approx.d_B = ext.d_B;
  approx.grid_residual = grid.residual;
  approx.m.resize(count);
  approx.phi.resize(count);
#pragma omp parallel for schedule(static)
  for (Index g = 0; g < count; ++g) {
    approx.m[g] = reduce_vector(v.col(g), ext.d_A, ext.a_aux) *
                  (grid.weights(g) * D);
    approx.phi[g] = reduce_vector(grid.points.col(g), ext.d_B, ext.b_aux);
  }
  return approx;
}

double approx_error(const Matrix& omega_k, const DeFinettiApprox& approx,
                    int k) {
  if (k > approx.source_n)
    throw DimensionError("approx_error: k exceeds the extension size");
  Matrix diff = omega_k - approx.reconstruct(k);
  return trace_norm(Matrix((diff + diff.adjoint()) * 0.5));
}

double definetti_bound(int d, int k, int n) {
  return 4.0 * d * d * static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace qinductive
