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

#include "qinductive/tensor_core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qinductive/errors.h"
#include "qinductive/kernels.h"

namespace qinductive {

Factorization::Factorization(std::initializer_list<Factor> factors)
    : Factorization(std::vector<Factor>(factors)) {}

Factorization::Factorization(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw DimensionError("factor '" + f.label + "' has dim < 1");
    if (!seen.insert(f.label).second)
      throw LabelError("duplicate factor label '" + f.label + "'");
  }
}

Index Factorization::total_dim() const {
  Index total = 1;
  for (const auto& f : factors_) total *= f.dim;
  return total;
}

std::vector<int> Factorization::dims() const {
  std::vector<int> d;
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

std::vector<std::string> Factorization::labels() const {
  std::vector<std::string> l;
  for (const auto& f : factors_) l.push_back(f.label);
  return l;
}

int Factorization::find(const std::string& label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k].label == label) return static_cast<int>(k);
  return -1;
}

int Factorization::position(const std::string& label) const {
  int k = find(label);
  if (k < 0) throw LabelError("unknown factor label '" + label + "'");
  return k;
}

int Factorization::dim(const std::string& label) const {
  return factors_[position(label)].dim;
}

Factorization Factorization::concat(const Factorization& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return Factorization(std::move(all));
}

Factorization Factorization::select(const std::vector<bool>& mask) const {
  std::vector<Factor> kept;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (mask[k]) kept.push_back(factors_[k]);
  return Factorization(std::move(kept));
}

Operator::Operator(Matrix matrix, Factorization shape)
    : matrix_(std::move(matrix)), shape_(std::move(shape)) {
  if (matrix_.rows() != matrix_.cols())
    throw DimensionError("operator matrix is not square");
  if (matrix_.rows() != shape_.total_dim())
    throw DimensionError("operator side " + std::to_string(matrix_.rows()) +
                         " does not match factorization dim " +
                         std::to_string(shape_.total_dim()));
}

Operator Operator::identity(const Factorization& shape) {
  Index n = shape.total_dim();
  return Operator(Matrix::Identity(n, n), shape);
}

Operator Operator::zero(const Factorization& shape) {
  Index n = shape.total_dim();
  return Operator(Matrix::Zero(n, n), shape);
}

Operator Operator::operator+(const Operator& other) const {
  if (!(shape_ == other.shape_)) throw LabelError("operator shapes differ");
  return Operator(matrix_ + other.matrix_, shape_);
}

Operator Operator::operator-(const Operator& other) const {
  if (!(shape_ == other.shape_)) throw LabelError("operator shapes differ");
  return Operator(matrix_ - other.matrix_, shape_);
}

Operator Operator::operator*(Complex s) const {
  return Operator(matrix_ * s, shape_);
}

Matrix hermitize(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitize: not square");
  Matrix anti = (m - m.adjoint()) * 0.5;
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.size() > 0 && anti.cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw NotHermitianError("operator is not Hermitian (anti-Hermitian part " +
                            std::to_string(anti.cwiseAbs().maxCoeff()) + ")");
  return (m + m.adjoint()) * 0.5;
}

Eigh eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Matrix clip_psd(const Matrix& m) {
  Eigh e = eigh(m);
  if (e.values.size() > 0 && e.values(0) < -kPsdTol)
    throw NotPsdError("operator has eigenvalue " +
                      std::to_string(e.values(0)));
  RealVector v = e.values.cwiseMax(0.0);
  return e.vectors * v.asDiagonal() * e.vectors.adjoint();
}

Matrix sqrt_psd(const Matrix& m) {
  Eigh e = eigh(m);
  if (e.values.size() > 0 && e.values(0) < -kPsdTol)
    throw NotPsdError("operator has eigenvalue " +
                      std::to_string(e.values(0)));
  RealVector v = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * v.asDiagonal() * e.vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return kernels::parallel::kron(a, b);
}

Matrix kron_power(const Matrix& a, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector kron_power(const Vector& a, int n) {
  Vector out = Vector::Ones(1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  Factorization shape = a.shape().concat(b.shape());
  return Operator(kron(a.matrix(), b.matrix()), std::move(shape));
}

namespace {

std::vector<bool> label_mask(const Factorization& shape,
                             const std::vector<std::string>& labels) {
  std::vector<bool> mask(shape.size(), false);
  for (const auto& l : labels) mask[shape.position(l)] = true;
  return mask;
}

}  // namespace

Operator partial_trace(const Operator& op,
                       const std::vector<std::string>& keep) {
  auto mask = label_mask(op.shape(), keep);
  Matrix out = kernels::parallel::partial_trace(op.matrix(), op.shape().dims(),
                                                mask);
  return Operator(std::move(out), op.shape().select(mask));
}

Operator trace_out(const Operator& op, const std::vector<std::string>& drop) {
  auto mask = label_mask(op.shape(), drop);
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = !mask[k];
  Matrix out = kernels::parallel::partial_trace(op.matrix(), op.shape().dims(),
                                                mask);
  return Operator(std::move(out), op.shape().select(mask));
}

Operator partial_transpose(const Operator& op,
                           const std::vector<std::string>& subset) {
  auto mask = label_mask(op.shape(), subset);
  return Operator(kernels::parallel::partial_transpose(
                      op.matrix(), op.shape().dims(), mask),
                  op.shape());
}

Operator reorder(const Operator& op, const std::vector<std::string>& order) {
  if (order.size() != op.shape().size())
    throw LabelError("reorder: label count mismatch");
  std::vector<int> idx;
  std::vector<Factor> factors;
  for (const auto& l : order) {
    int k = op.shape().position(l);
    idx.push_back(k);
    factors.push_back(op.shape().factors()[k]);
  }
  Factorization shape(std::move(factors));
  return Operator(
      kernels::parallel::permute(op.matrix(), op.shape().dims(), idx),
      std::move(shape));
}

Operator relabel(const Operator& op, const std::vector<std::string>& labels) {
  if (labels.size() != op.shape().size())
    throw LabelError("relabel: label count mismatch");
  std::vector<Factor> factors = op.shape().factors();
  for (std::size_t k = 0; k < labels.size(); ++k) factors[k].label = labels[k];
  return Operator(op.matrix(), Factorization(std::move(factors)));
}

Operator embed(const Operator& op, const Factorization& full) {
  std::vector<Factor> missing;
  for (const auto& f : full.factors()) {
    int k = op.shape().find(f.label);
    if (k < 0) {
      missing.push_back(f);
    } else if (op.shape().factors()[k].dim != f.dim) {
      throw DimensionError("embed: factor '" + f.label + "' changes dim");
    }
  }
  if (op.shape().size() + missing.size() != full.size())
    throw LabelError("embed: operator has factors outside the target");
  Operator ext = tensor(op, Operator::identity(Factorization(std::move(missing))));
  return reorder(ext, full.labels());
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5,
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const Operator& op) { return trace_norm(op.matrix()); }

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5,
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double op_norm(const Operator& op) { return op_norm(op.matrix()); }

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionError("fidelity: dimension mismatch");
  Matrix sr = sqrt_psd(rho);
  Matrix s = clip_psd(sigma);
  Matrix inner = sr * s * sr;
  Eigen::SelfAdjointEigenSolver<Matrix> es((inner + inner.adjoint()) * 0.5,
                                           Eigen::EigenvaluesOnly);
  double root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root * root;
}

double fidelity(const Operator& rho, const Operator& sigma) {
  return fidelity(rho.matrix(), sigma.matrix());
}

Matrix herm_fn(const Matrix& m, const std::function<double(double)>& f,
               double cutoff) {
  Eigh e = eigh(m);
  RealVector v(e.values.size());
  for (Index i = 0; i < v.size(); ++i)
    v(i) = std::abs(e.values(i)) <= cutoff ? 0.0 : f(e.values(i));
  return e.vectors * v.asDiagonal() * e.vectors.adjoint();
}

Operator herm_fn(const Operator& op, const std::function<double(double)>& f,
                 double cutoff) {
  return Operator(herm_fn(op.matrix(), f, cutoff), op.shape());
}

namespace {

Factorization site_factorization(int n, int d) {
  std::vector<Factor> f;
  for (int i = 0; i < n; ++i) f.push_back({"B" + std::to_string(i + 1), d});
  return Factorization(std::move(f));
}

Index checked_power(int d, int n) {
  Index total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > kMaxDenseDim)
      throw TooLargeError("dense dimension " + std::to_string(d) + "^" +
                          std::to_string(n) + " exceeds budget");
  }
  return total;
}

}  // namespace

Operator permutation_operator(const std::vector<int>& perm, int d) {
  const int n = static_cast<int>(perm.size());
  checked_power(d, n);
  std::vector<int> dims(n, d);
  // Output factor m is input factor perm^{-1}(m).
  Matrix p = kernels::permutation_matrix(dims, inverse(perm));
  return Operator(std::move(p), site_factorization(n, d));
}

long long dim_sym(int n, int d) {
  if (n < 0 || d < 1) return 0;
  long long r = 1;
  int k = std::min(n, d - 1);
  for (int i = 1; i <= k; ++i) r = r * (n + d - 1 - k + i) / i;
  return r;
}

std::vector<std::vector<int>> occupation_vectors(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(d, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d - 1) {
      k[pos] = left;
      out.push_back(k);
      return;
    }
    for (int c = left; c >= 0; --c) {
      k[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  if (d == 1) return {{n}};
  rec(0, n);
  return out;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

Operator symmetric_projector(int n, int d) {
  const Index total = checked_power(d, n);
  // Basis states sharing an occupation vector span one symmetric basis vector
  // with uniform amplitude.
  std::vector<long long> cls(total);
  std::vector<long long> base(d + 1, 1);
  for (int j = 1; j <= d; ++j) base[j] = base[j - 1] * (n + 1);
  for (Index i = 0; i < total; ++i) {
    Index x = i;
    long long key = 0;
    for (int s = 0; s < n; ++s) {
      key += base[x % d];
      x /= d;
    }
    cls[i] = key;
  }
  std::vector<long long> sorted = cls;
  std::sort(sorted.begin(), sorted.end());
  Matrix p = Matrix::Zero(total, total);
  for (Index c = 0; c < total; ++c) {
    auto range = std::equal_range(sorted.begin(), sorted.end(), cls[c]);
    double w = 1.0 / static_cast<double>(range.second - range.first);
    for (Index r = 0; r < total; ++r)
      if (cls[r] == cls[c]) p(r, c) = w;
  }
  return Operator(std::move(p), site_factorization(n, d));
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> compose(const std::vector<int>& sigma,
                         const std::vector<int>& tau) {
  std::vector<int> out(tau.size());
  for (std::size_t k = 0; k < tau.size(); ++k) out[k] = sigma[tau[k]];
  return out;
}

std::vector<int> inverse(const std::vector<int>& sigma) {
  std::vector<int> out(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) out[sigma[k]] = static_cast<int>(k);
  return out;
}

}  // namespace qinductive
