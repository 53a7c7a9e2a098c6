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

#include "qinductive/channels.h"

#include <algorithm>
#include <cmath>

#include "qinductive/errors.h"
#include "qinductive/kernels.h"

namespace qinductive {

Index ChannelDims::input_dim() const {
  Index d = d_A;
  for (int i = 0; i < n; ++i) d *= d_X;
  return d;
}

Index ChannelDims::output_dim() const {
  Index d = 1;
  for (int i = 0; i < n; ++i) d *= d_Y;
  return d;
}

std::string x_label(int i) { return "X" + std::to_string(i); }
std::string y_label(int i) { return "Y" + std::to_string(i); }
std::string yp_label(int i) { return "Yp" + std::to_string(i); }

Factorization choi_shape(const ChannelDims& dims) {
  std::vector<Factor> f{{"A", dims.d_A}};
  for (int i = 1; i <= dims.n; ++i) {
    f.push_back({x_label(i), dims.d_X});
    f.push_back({y_label(i), dims.d_Y});
  }
  return Factorization(std::move(f));
}

namespace {

std::vector<std::string> input_output_labels(const ChannelDims& dims) {
  std::vector<std::string> labels{"A"};
  for (int i = 1; i <= dims.n; ++i) labels.push_back(x_label(i));
  for (int i = 1; i <= dims.n; ++i) labels.push_back(y_label(i));
  return labels;
}

Factorization input_output_shape(const ChannelDims& dims) {
  std::vector<Factor> f{{"A", dims.d_A}};
  for (int i = 1; i <= dims.n; ++i) f.push_back({x_label(i), dims.d_X});
  for (int i = 1; i <= dims.n; ++i) f.push_back({y_label(i), dims.d_Y});
  return Factorization(std::move(f));
}

std::vector<std::string> y_labels(int n) {
  std::vector<std::string> l;
  for (int i = 1; i <= n; ++i) l.push_back(y_label(i));
  return l;
}

ChoiChannel from_input_output(Matrix w, const ChannelDims& dims) {
  Operator io(std::move(w), input_output_shape(dims));
  return ChoiChannel(reorder(io, choi_shape(dims).labels()), dims);
}

}  // namespace

ChoiChannel::ChoiChannel(Operator omega, const ChannelDims& dims)
    : omega_(std::move(omega)), dims_(dims) {
  if (!(omega_.shape() == choi_shape(dims)))
    throw LabelError("Choi operator shape does not match channel dims");
}

ChoiChannel::ChoiChannel(Matrix omega, const ChannelDims& dims)
    : ChoiChannel(Operator(std::move(omega), choi_shape(dims)), dims) {}

Matrix ChoiChannel::input_output_matrix() const {
  return reorder(omega_, input_output_labels(dims_)).matrix();
}

ChoiChannel choi_of_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw DimensionError("empty Kraus set");
  ChannelDims dims;
  dims.d_X = static_cast<int>(kraus.front().cols());
  dims.d_Y = static_cast<int>(kraus.front().rows());
  return choi_of_kraus(kraus, dims);
}

ChoiChannel choi_of_kraus(const std::vector<Matrix>& kraus,
                          const ChannelDims& dims) {
  const Index d_in = dims.input_dim();
  const Index d_out = dims.output_dim();
  Matrix completeness = Matrix::Zero(d_in, d_in);
  for (const auto& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("Kraus operator has the wrong shape");
    completeness += k.adjoint() * k;
  }
  double dev = (completeness - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff();
  if (dev > 1e-10)
    throw NotTracePreservingError("Kraus set is not trace preserving (" +
                                  std::to_string(dev) + ")");
  Matrix w = Matrix::Zero(d_in * d_out, d_in * d_out);
  Vector v(d_in * d_out);
  for (const auto& k : kraus) {
    for (Index i = 0; i < d_in; ++i)
      for (Index o = 0; o < d_out; ++o) v(i * d_out + o) = k(o, i);
    w.noalias() += v * v.adjoint();
  }
  w /= static_cast<double>(d_in);
  return from_input_output(std::move(w), dims);
}

ChoiChannel choi_of_unitary(const Matrix& u) { return choi_of_kraus({u}); }

ChoiChannel depolarizing_channel(int d_X, int d_Y) {
  ChannelDims dims{1, d_X, d_Y, 1};
  Index total = static_cast<Index>(d_X) * d_Y;
  return ChoiChannel(Matrix::Identity(total, total) / static_cast<double>(total),
                     dims);
}

ChoiChannel identity_channel(int d) {
  return choi_of_unitary(Matrix::Identity(d, d));
}

Matrix apply_choi(const Matrix& w, Index d_in, Index d_out, const Matrix& input,
                  Index d_anc) {
  if (w.rows() != d_in * d_out)
    throw DimensionError("apply_choi: Choi size mismatch");
  if (input.rows() != d_anc * d_in || input.cols() != input.rows())
    throw DimensionError("apply_choi: input size mismatch");
  const int r = static_cast<int>(d_anc), i = static_cast<int>(d_in),
            o = static_cast<int>(d_out);
  // Column-major storage of input is (r', j, r, i); regroup to (r, r', i, j).
  Vector zv = Eigen::Map<const Vector>(input.data(), input.size());
  Vector zt = kernels::parallel::permute_vector(zv, {r, i, r, i}, {2, 0, 3, 1});
  // Storage of w is (j, o', i, o); regroup to (i, j, o, o').
  Vector wv = Eigen::Map<const Vector>(w.data(), w.size());
  Vector wt = kernels::parallel::permute_vector(wv, {i, o, i, o}, {2, 0, 3, 1});
  Eigen::Map<const Matrix> zmap(zt.data(), d_in * d_in, d_anc * d_anc);
  Eigen::Map<const Matrix> wmap(wt.data(), d_out * d_out, d_in * d_in);
  Matrix prod = wmap * zmap;
  // prod storage is (r, r', o, o'); the output matrix storage is (r', o', r, o).
  Vector pv = Eigen::Map<const Vector>(prod.data(), prod.size());
  Vector ov = kernels::parallel::permute_vector(pv, {r, r, o, o}, {1, 3, 0, 2});
  Matrix out = Eigen::Map<const Matrix>(ov.data(), d_anc * d_out, d_anc * d_out);
  return out * static_cast<double>(d_in);
}

Matrix apply_channel(const ChoiChannel& phi, const Matrix& input) {
  return apply_channel_with_ancilla(phi, input, 1);
}

Matrix apply_channel_with_ancilla(const ChoiChannel& phi, const Matrix& input,
                                  Index d_anc) {
  const Index d_in = phi.dims().input_dim();
  if (input.rows() != d_anc * d_in)
    throw DimensionError("apply_channel: input has dim " +
                         std::to_string(input.rows()) + ", expected " +
                         std::to_string(d_anc * d_in));
  return apply_choi(phi.input_output_matrix(), d_in, phi.dims().output_dim(),
                    input, d_anc);
}

Matrix adjoint_apply(const ChoiChannel& phi, const Matrix& output_op) {
  const Index d_in = phi.dims().input_dim();
  const Index d_out = phi.dims().output_dim();
  if (output_op.rows() != d_out || output_op.cols() != d_out)
    throw DimensionError("adjoint_apply: operator dim mismatch");
  Matrix w = phi.input_output_matrix();
  Matrix prod = w * kron(Matrix::Identity(d_in, d_in), output_op);
  Matrix reduced = kernels::parallel::partial_trace(
      prod, {static_cast<int>(d_in), static_cast<int>(d_out)}, {true, false});
  return reduced.transpose() * static_cast<double>(d_in);
}

CptpReport is_cptp(const ChoiChannel& phi) {
  CptpReport rep;
  rep.psd_violation = std::max(0.0, -min_eigenvalue(phi.matrix()));
  Operator marg = trace_out(phi.omega(), y_labels(phi.n()));
  Matrix target = Matrix::Identity(marg.dim(), marg.dim()) /
                  static_cast<double>(phi.dims().input_dim());
  rep.tp_violation = trace_norm(marg.matrix() - target);
  return rep;
}

double NonsignallingReport::max_violation() const {
  double m = 0.0;
  for (double v : per_i_violation) m = std::max(m, v);
  return m;
}

namespace {

double site_signalling(const Operator& omega, const ChannelDims& dims, int i) {
  std::vector<std::string> other_y, other_x;
  for (int j = 1; j <= dims.n; ++j) {
    if (j == i) continue;
    other_y.push_back(y_label(j));
    other_x.push_back(x_label(j));
  }
  Operator mi = trace_out(omega, other_y);
  Operator reduced = trace_out(mi, other_x);
  Operator predicted = embed(reduced, mi.shape()) *
                       Complex(std::pow(static_cast<double>(dims.d_X),
                                        -(dims.n - 1)));
  return trace_norm(mi.matrix() - predicted.matrix());
}

}  // namespace

NonsignallingReport is_nonsignalling(const ChoiChannel& q) {
  NonsignallingReport rep;
  for (int i = 1; i <= q.n(); ++i)
    rep.per_i_violation.push_back(site_signalling(q.omega(), q.dims(), i));
  return rep;
}

MarginalResult marginal_channel(const ChoiChannel& q, int k) {
  if (k < 0 || k > q.n())
    throw DimensionError("marginal_channel: k out of range");
  MarginalResult res;
  res.nonsignalling_residual = is_nonsignalling(q).max_violation();
  if (res.nonsignalling_residual > kSignallingThreshold)
    throw SignallingError("marginal_channel: input is signalling",
                          res.nonsignalling_residual);
  std::vector<std::string> drop, drop_y;
  for (int j = k + 1; j <= q.n(); ++j) {
    drop.push_back(x_label(j));
    drop.push_back(y_label(j));
    drop_y.push_back(y_label(j));
  }
  Operator omega_k = trace_out(q.omega(), drop);
  ChannelDims dk = q.dims();
  dk.n = k;
  if (k < q.n()) {
    Operator partial = trace_out(q.omega(), drop_y);
    Operator predicted =
        embed(omega_k, partial.shape()) *
        Complex(std::pow(static_cast<double>(q.d_X()), -(q.n() - k)));
    res.chain_residual = trace_norm(partial.matrix() - predicted.matrix());
    if (res.chain_residual > kSignallingThreshold)
      throw SignallingError("marginal_channel: chain identity fails",
                            res.chain_residual);
  }
  res.channel = ChoiChannel(std::move(omega_k), dk);
  return res;
}

ChoiChannel permute_pairs(const ChoiChannel& q, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != q.n())
    throw DimensionError("permute_pairs: order size mismatch");
  std::vector<std::string> labels{"A"};
  for (int src : order) {
    labels.push_back(x_label(src + 1));
    labels.push_back(y_label(src + 1));
  }
  Operator moved = reorder(q.omega(), labels);
  return ChoiChannel(moved.matrix(), q.dims());
}

ChoiChannel symmetrize_channel(const ChoiChannel& q) {
  if (q.n() > 6) throw TooLargeError("symmetrize_channel: n > 6");
  auto perms = all_permutations(q.n());
  Matrix acc = Matrix::Zero(q.matrix().rows(), q.matrix().cols());
  for (const auto& p : perms) acc += permute_pairs(q, p).matrix();
  acc /= static_cast<double>(perms.size());
  return ChoiChannel(std::move(acc), q.dims());
}

ChoiChannel measure_and_prepare_choi(const std::vector<Matrix>& povm,
                                     const std::vector<ChoiChannel>& channels,
                                     int n) {
  if (povm.empty() || povm.size() != channels.size())
    throw PovmError("POVM and channel lists differ in length");
  const Index d_A = povm.front().rows();
  Matrix total = Matrix::Zero(d_A, d_A);
  for (const auto& m : povm) {
    if (m.rows() != d_A || m.cols() != d_A)
      throw DimensionError("POVM elements differ in size");
    total += m;
  }
  double dev = op_norm(Matrix(total - Matrix::Identity(d_A, d_A)));
  if (dev > 1e-8)
    throw PovmError("POVM incomplete (deviation " + std::to_string(dev) + ")");
  const ChannelDims single = channels.front().dims();
  ChannelDims dims{static_cast<int>(d_A), single.d_X, single.d_Y, n};
  const Index side = d_A * static_cast<Index>(std::pow(single.d_X * single.d_Y, n));
  if (side > kMaxDenseDim)
    throw TooLargeError("measure_and_prepare_choi: dimension too large");
  Matrix omega = Matrix::Zero(side, side);
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const auto& ch = channels[j];
    if (ch.n() != 1 || ch.d_A() != 1 || ch.d_X() != single.d_X ||
        ch.d_Y() != single.d_Y)
      throw DimensionError("preparation channels must share X -> Y dims");
    if (is_cptp(ch).tp_violation > 1e-8)
      throw NotTracePreservingError("preparation channel is not TP");
    Matrix a = povm[j].transpose() / static_cast<double>(d_A);
    omega += kron(a, kron_power(ch.matrix(), n));
  }
  return ChoiChannel(std::move(omega), dims);
}

ChoiChannel output_crossing_channel(int d, int n) {
  if (n < 2) throw DimensionError("output_crossing_channel needs n >= 2");
  std::vector<int> dims(n, d);
  // Output factor i is input factor i+1 (cyclically).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = (i + 1) % n;
  Matrix p = kernels::permutation_matrix(dims, order);
  return choi_of_kraus({p}, ChannelDims{1, d, d, n});
}

ChoiChannel tensor_power(const ChoiChannel& phi, int n) {
  return tensor_product(std::vector<ChoiChannel>(n, phi));
}

ChoiChannel tensor_product(const std::vector<ChoiChannel>& parts) {
  if (parts.empty()) throw DimensionError("tensor_product: no factors");
  const ChannelDims first = parts.front().dims();
  Matrix acc = Matrix::Identity(1, 1);
  for (const auto& p : parts) {
    if (p.n() != 1 || p.d_A() != 1 || p.d_X() != first.d_X ||
        p.d_Y() != first.d_Y)
      throw DimensionError("tensor_product: factors must be X -> Y channels");
    acc = kron(acc, p.matrix());
  }
  return ChoiChannel(std::move(acc),
                     ChannelDims{1, first.d_X, first.d_Y,
                                 static_cast<int>(parts.size())});
}

}  // namespace qinductive
