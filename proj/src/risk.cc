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

#include "qinductive/risk.h"

#include <cmath>

#include "qinductive/errors.h"
#include "qinductive/kernels.h"

namespace qinductive {
namespace {

void check_state(const Matrix& rho, const char* what) {
  if (rho.rows() != rho.cols()) throw DimensionError(std::string(what) + " not square");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9)
    throw DimensionError(std::string(what) + " does not have unit trace");
  if (min_eigenvalue(rho) < -1e-9)
    throw NotPsdError(std::string(what) + " is not PSD");
}

void check_priors(const std::vector<double>& priors, std::size_t count) {
  if (priors.size() != count)
    throw DimensionError("priors and states differ in length");
  double total = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw DimensionError("negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DimensionError("priors do not sum to 1");
}

Matrix training_state(const std::vector<Matrix>& states, int m) {
  Matrix rho = Matrix::Identity(1, 1);
  for (const auto& s : states)
    for (int c = 0; c < m; ++c) {
      rho = kron(rho, s);
      if (rho.rows() > kMaxDenseDim)
        throw TooLargeError("training state exceeds the dense budget");
    }
  return rho;
}

Matrix projector(int d, int k) {
  Matrix p = Matrix::Zero(d, d);
  p(k, k) = 1.0;
  return p;
}

Index ipow(Index b, int n) {
  Index r = 1;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

LearningTask classification_task(const std::vector<double>& priors,
                                 const std::vector<Matrix>& states, int n,
                                 int m) {
  if (states.empty()) throw DimensionError("no class states");
  check_priors(priors, states.size());
  const int d_X = static_cast<int>(states.front().rows());
  const int labels = static_cast<int>(states.size());
  LearningTask t;
  t.n = n;
  t.d_X = d_X;
  t.d_Y = t.d_Yp = labels;
  t.rho_xy = Matrix::Zero(d_X * labels, d_X * labels);
  Matrix agree = Matrix::Zero(labels * labels, labels * labels);
  for (int y = 0; y < labels; ++y) {
    if (states[y].rows() != d_X) throw DimensionError("class states differ in dim");
    check_state(states[y], "class state");
    t.rho_xy += priors[y] * kron(states[y], projector(labels, y));
    agree += kron(projector(labels, y), projector(labels, y));
  }
  t.s = Matrix::Identity(labels * labels, labels * labels) - agree;
  t.rho_a = training_state(states, m);
  t.d_A = static_cast<int>(t.rho_a.rows());
  return t;
}

LearningTask tomography_task(const std::vector<double>& priors,
                             const std::vector<Matrix>& states, int n, int m) {
  if (states.empty()) throw DimensionError("no target states");
  check_priors(priors, states.size());
  const int d_Y = static_cast<int>(states.front().rows());
  const int d_X = static_cast<int>(states.size());
  LearningTask t;
  t.n = n;
  t.d_X = d_X;
  t.d_Y = t.d_Yp = d_Y;
  t.rho_xy = Matrix::Zero(d_X * d_Y, d_X * d_Y);
  for (int x = 0; x < d_X; ++x) {
    if (states[x].rows() != d_Y) throw DimensionError("target states differ in dim");
    check_state(states[x], "target state");
    t.rho_xy += priors[x] * kron(projector(d_X, x), states[x]);
  }
  Matrix swap = kernels::permutation_matrix({d_Y, d_Y}, {1, 0});
  t.s = Matrix::Identity(d_Y * d_Y, d_Y * d_Y) - swap;
  t.rho_a = training_state(states, m);
  t.d_A = static_cast<int>(t.rho_a.rows());
  return t;
}

LearningTask overlap_classification_task(double overlap, int n, int m) {
  if (overlap < 0.0 || overlap > 1.0)
    throw DimensionError("overlap must lie in [0, 1]");
  Vector psi0(2), psi1(2);
  psi0 << 1.0, 0.0;
  psi1 << overlap, std::sqrt(1.0 - overlap * overlap);
  return classification_task({0.5, 0.5},
                             {psi0 * psi0.adjoint(), psi1 * psi1.adjoint()}, n,
                             m);
}

Operator symmetrized_risk_observable(const Matrix& s, int d_Y, int d_Yp, int n,
                                     SBarNormalization norm) {
  std::vector<Factor> f;
  for (int i = 1; i <= n; ++i) {
    f.push_back({y_label(i), d_Y});
    f.push_back({yp_label(i), d_Yp});
  }
  Factorization full(std::move(f));
  Operator acc = Operator::zero(full);
  for (int i = 1; i <= n; ++i) {
    Operator si(s, Factorization{{y_label(i), d_Y}, {yp_label(i), d_Yp}});
    acc = acc + embed(si, full);
  }
  return norm == SBarNormalization::kAverage
             ? acc * Complex(1.0 / static_cast<double>(n))
             : acc;
}

Matrix r_operator(const LearningTask& t) {
  Factorization full{{"A", t.d_A}, {"X", t.d_X}, {"Y", t.d_Y}, {"Yp", t.d_Yp}};
  Operator rho = tensor(Operator(t.rho_a, Factorization{{"A", t.d_A}}),
                        Operator(t.rho_xy, Factorization{{"X", t.d_X},
                                                         {"Yp", t.d_Yp}}));
  Operator transposed = partial_transpose(embed(rho, full), {"A", "X"});
  Operator s = embed(Operator(t.s, Factorization{{"Y", t.d_Y}, {"Yp", t.d_Yp}}),
                     full);
  Operator prod(transposed.matrix() * s.matrix(), full);
  return trace_out(prod, {"Yp"}).matrix();
}

double expected_risk_direct(const ChoiChannel& q, const LearningTask& t,
                            SBarNormalization norm) {
  if (!(q.dims() == t.channel_dims()))
    throw DimensionError("channel dims do not match the task");
  const int n = t.n;
  std::vector<Factor> f{{"A", t.d_A}};
  for (int i = 1; i <= n; ++i) {
    f.push_back({x_label(i), t.d_X});
    f.push_back({yp_label(i), t.d_Yp});
  }
  Operator input(kron(t.rho_a, kron_power(t.rho_xy, n)), Factorization(f));
  std::vector<std::string> order;
  for (int i = 1; i <= n; ++i) order.push_back(yp_label(i));
  order.push_back("A");
  for (int i = 1; i <= n; ++i) order.push_back(x_label(i));
  Operator grouped = reorder(input, order);
  Matrix out = apply_channel_with_ancilla(q, grouped.matrix(),
                                          ipow(t.d_Yp, n));
  std::vector<std::string> out_labels;
  for (int i = 1; i <= n; ++i) out_labels.push_back(yp_label(i));
  for (int i = 1; i <= n; ++i) out_labels.push_back(y_label(i));
  Operator sbar = reorder(
      symmetrized_risk_observable(t.s, t.d_Y, t.d_Yp, n, norm), out_labels);
  return (out * sbar.matrix()).trace().real();
}

double expected_risk_marginal(const ChoiChannel& q, const LearningTask& t,
                              SBarNormalization norm) {
  if (!(q.dims() == t.channel_dims()))
    throw DimensionError("channel dims do not match the task");
  ChoiChannel sym = symmetrize_channel(q);
  Matrix omega1 = marginal_channel(sym, 1).channel.matrix();
  double value = static_cast<double>(t.d_A) * t.d_X *
                 (omega1 * r_operator(t)).trace().real();
  return norm == SBarNormalization::kAverage ? value : value * t.n;
}

double expected_risk(const ChoiChannel& q, const LearningTask& t,
                     SBarNormalization norm) {
  return expected_risk_direct(q, t, norm);
}

double protocol_risk(const LoccProtocol& p, const LearningTask& t,
                     SBarNormalization norm) {
  Matrix eta = p.single_instance_choi();
  double value = static_cast<double>(t.d_A) * t.d_X *
                 (eta * r_operator(t)).trace().real();
  return norm == SBarNormalization::kAverage ? value : value * t.n;
}

RiskReport risk_gap_experiment(const LearningTask& task, const ChoiChannel& q,
                               const LoccOptions& options,
                               SBarNormalization norm) {
  LoccBuild build = build_locc_protocol_detailed(q, options);
  const double scale = norm == SBarNormalization::kSum ? task.n : 1.0;
  RiskReport r;
  r.n = task.n;
  r.risk_collective = expected_risk(q, task, norm);
  r.risk_locc = protocol_risk(build.protocol, task, norm);
  r.gap = std::abs(r.risk_collective - r.risk_locc);
  Matrix rop = r_operator(task);
  r.r_infnorm = op_norm(rop);
  r.s_infnorm = scale * op_norm(task.s);
  r.bound = scale *
            theorem1_bound(task.d_A, task.d_X, task.d_Y, task.n, r.r_infnorm);
  r.grid_residual = build.protocol.provenance.grid_residual;
  r.provenance = build.protocol.provenance;
  return r;
}

ChoiChannel collective_classifier(const LearningTask& task) {
  const int d_X = task.d_X;
  const int d_A = task.d_A;
  const int n = task.n;
  if (task.d_Y != 2 || d_A != d_X * d_X)
    throw DimensionError(
        "collective_classifier needs a binary task with one training copy per "
        "label");
  // Swap-test score E_0 = (1 + (S_{A0 X} - S_{A1 X}) / 2) / 2 on A0 A1 X.
  const int local = d_A * d_X;
  Matrix s0 = kernels::permutation_matrix({d_X, d_X, d_X}, {2, 1, 0});
  Matrix s1 = kernels::permutation_matrix({d_X, d_X, d_X}, {0, 2, 1});
  Matrix e0 = (Matrix::Identity(local, local) + (s0 - s1) * 0.5) * 0.5;
  Matrix e[2] = {e0, Matrix::Identity(local, local) - e0};

  // b(u, s) = <p, x'| E_y |q, x> with u = (x, x', y) and s = (p, q).
  const Index ucount = static_cast<Index>(d_X) * d_X * 2;
  const Index scount = static_cast<Index>(d_A) * d_A;
  Matrix b(ucount, scount);
  for (int x = 0; x < d_X; ++x)
    for (int xp = 0; xp < d_X; ++xp)
      for (int y = 0; y < 2; ++y)
        for (int p = 0; p < d_A; ++p)
          for (int q = 0; q < d_A; ++q)
            b((x * d_X + xp) * 2 + y, p * d_A + q) =
                e[y](p * d_X + xp, q * d_X + x);

  const Index sites = ipow(d_A, n);
  const Index rest = sites / d_A;
  const double dsym = static_cast<double>(dim_sym(n, d_A));
  Matrix proj = symmetric_projector(n, d_A).matrix();
  const Index in_x = ipow(d_X, n);
  const Index out_y = ipow(2, n);
  const Index d_in = d_A * in_x;
  Matrix w = Matrix::Zero(d_in * out_y, d_in * out_y);
  std::vector<int> site_dims(n, d_A);
  auto site_strides = kernels::strides(site_dims);

  for (int a = 0; a < d_A; ++a)
    for (int ap = 0; ap < d_A; ++ap) {
      // Cloner output on |a><a'|.
      Matrix c = proj.middleCols(a * rest, rest) *
                 proj.middleRows(ap * rest, rest) * (d_A / dsym);
      // tensor[s_1..s_n] = c(q, p) with s_i = (p_i, q_i).
      Vector tens(ipow(scount, n));
      for (Index p = 0; p < sites; ++p)
        for (Index q = 0; q < sites; ++q) {
          Index s = 0;
          for (int i = 0; i < n; ++i) {
            Index pi = (p / site_strides[i]) % d_A;
            Index qi = (q / site_strides[i]) % d_A;
            s = s * scount + pi * d_A + qi;
          }
          tens(s) = c(q, p);
        }
      // Apply b on every site.
      Index left = 1;
      Index right = ipow(scount, n - 1);
      for (int i = 0; i < n; ++i) {
        Vector next(left * ucount * right);
        for (Index l = 0; l < left; ++l)
          for (Index u = 0; u < ucount; ++u)
            for (Index r = 0; r < right; ++r) {
              Complex acc = 0.0;
              for (Index s = 0; s < scount; ++s)
                acc += b(u, s) * tens((l * scount + s) * right + r);
              next((l * ucount + u) * right + r) = acc;
            }
        tens.swap(next);
        left *= ucount;
        if (i + 1 < n) right /= scount;
      }
      // tens[u_1..u_n] with u_i = (x_i, x'_i, y_i).
      for (Index x = 0; x < in_x; ++x)
        for (Index xp = 0; xp < in_x; ++xp)
          for (Index y = 0; y < out_y; ++y) {
            Index u = 0;
            Index stride = in_x / d_X, ystride = out_y / 2;
            for (int i = 0; i < n; ++i) {
              Index xi = (x / stride) % d_X, xpi = (xp / stride) % d_X;
              Index yi = (y / ystride) % 2;
              u = u * ucount + (xi * d_X + xpi) * 2 + yi;
              stride /= std::max<Index>(d_X, 1);
              ystride /= 2;
            }
            Index row = (a * in_x + x) * out_y + y;
            Index col = (ap * in_x + xp) * out_y + y;
            w(row, col) = tens(u) / static_cast<double>(d_in);
          }
    }
  std::vector<Factor> f{{"A", d_A}};
  for (int i = 1; i <= n; ++i) f.push_back({x_label(i), d_X});
  for (int i = 1; i <= n; ++i) f.push_back({y_label(i), 2});
  Operator io(std::move(w), Factorization(std::move(f)));
  ChannelDims dims{d_A, d_X, 2, n};
  return ChoiChannel(reorder(io, choi_shape(dims).labels()), dims);
}

}  // namespace qinductive
