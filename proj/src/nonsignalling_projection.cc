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

#include <algorithm>
#include <cmath>

#include "qinductive/channels.h"
#include "qinductive/errors.h"
#include "qinductive/random.h"

namespace qinductive {
namespace {

class ConstraintSets {
 public:
  explicit ConstraintSets(const ChannelDims& dims)
      : dims_(dims), shape_(choi_shape(dims)) {
    for (int i = 1; i <= dims.n; ++i) all_y_.push_back(y_label(i));
  }

  int count() const { return dims_.n + 2; }

  Matrix project(int k, const Matrix& y) const {
    if (k == 0) return project_psd(y);
    if (k == 1) return project_tp(y);
    return project_ns(k - 1, y);
  }

  double psd_violation(const Matrix& x) const {
    return std::max(0.0, -min_eigenvalue(x));
  }

  double tp_violation(const Matrix& x) const {
    Operator m = trace_out(Operator(x, shape_), all_y_);
    Matrix target = Matrix::Identity(m.dim(), m.dim()) /
                    static_cast<double>(dims_.input_dim());
    return trace_norm(Matrix(m.matrix() - target));
  }

  double ns_violation(int i, const Matrix& x) const {
    Operator mi = trace_out(Operator(x, shape_), others(i, true));
    return trace_norm(signalling_part(i, mi).matrix());
  }

 private:
  std::vector<std::string> others(int i, bool outputs) const {
    std::vector<std::string> l;
    for (int j = 1; j <= dims_.n; ++j)
      if (j != i) l.push_back(outputs ? y_label(j) : x_label(j));
    return l;
  }

  // (1 - Pi_i) M_i with Pi_i(M) = tr_{X_j, j != i} M (x) 1 / d_X^{n-1}.
  Operator signalling_part(int i, const Operator& mi) const {
    Operator reduced = trace_out(mi, others(i, false));
    double scale = std::pow(static_cast<double>(dims_.d_X), -(dims_.n - 1));
    return mi - embed(reduced, mi.shape()) * Complex(scale);
  }

  Matrix project_psd(const Matrix& y) const {
    Eigh e = eigh(y);
    RealVector v = e.values.cwiseMax(0.0);
    return e.vectors * v.asDiagonal() * e.vectors.adjoint();
  }

  Matrix project_tp(const Matrix& y) const {
    Operator m = trace_out(Operator(y, shape_), all_y_);
    Matrix dev = m.matrix() - Matrix::Identity(m.dim(), m.dim()) /
                                  static_cast<double>(dims_.input_dim());
    Operator correction = embed(Operator(dev, m.shape()), shape_);
    double scale = std::pow(static_cast<double>(dims_.d_Y), -dims_.n);
    return y - correction.matrix() * scale;
  }

  Matrix project_ns(int i, const Matrix& y) const {
    Operator mi = trace_out(Operator(y, shape_), others(i, true));
    Operator correction = embed(signalling_part(i, mi), shape_);
    double scale = std::pow(static_cast<double>(dims_.d_Y), -(dims_.n - 1));
    return y - correction.matrix() * scale;
  }

  ChannelDims dims_;
  Factorization shape_;
  std::vector<std::string> all_y_;
};

}  // namespace

DykstraResult project_nonsignalling(const Matrix& start,
                                    const ChannelDims& dims,
                                    const DykstraOptions& options) {
  ConstraintSets sets(dims);
  const int count = sets.count();
  Matrix x = hermitize(start);
  std::vector<Matrix> corr(count, Matrix::Zero(x.rows(), x.cols()));
  DykstraResult res;
  for (int it = 1; it <= options.max_iters; ++it) {
    for (int k = 0; k < count; ++k) {
      Matrix y = x + corr[k];
      x = sets.project(k, y);
      corr[k] = y - x;
    }
    res.iterations = it;
    res.psd_violation = sets.psd_violation(x);
    res.tp_violation = sets.tp_violation(x);
    res.ns_violation.assign(dims.n, 0.0);
    double worst = std::max(res.psd_violation, res.tp_violation);
    for (int i = 1; i <= dims.n; ++i) {
      res.ns_violation[i - 1] = sets.ns_violation(i, x);
      worst = std::max(worst, res.ns_violation[i - 1]);
    }
    if (worst <= options.tol) {
      res.converged = true;
      break;
    }
  }
  res.channel = ChoiChannel(hermitize(x), dims);
  return res;
}

ChoiChannel random_nonsignalling_choi(const ChannelDims& dims,
                                      std::uint64_t seed,
                                      const DykstraOptions& options) {
  Rng rng(seed);
  Index side = choi_shape(dims).total_dim();
  if (side > kMaxDenseDim)
    throw TooLargeError("random_nonsignalling_choi: dimension too large");
  Matrix start = random_density(static_cast<int>(side), rng);
  DykstraResult res = project_nonsignalling(start, dims, options);
  if (!res.converged) {
    std::vector<double> residuals{res.psd_violation, res.tp_violation};
    residuals.insert(residuals.end(), res.ns_violation.begin(),
                     res.ns_violation.end());
    throw ConvergenceError("Dykstra projection did not converge in " +
                               std::to_string(res.iterations) + " iterations",
                           std::move(residuals));
  }
  return res.channel;
}

}  // namespace qinductive
