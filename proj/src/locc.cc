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

#include "qinductive/locc.h"

#include <algorithm>
#include <cmath>

#include "qinductive/errors.h"
#include "qinductive/kernels.h"

namespace qinductive {

Matrix marginal_input(const Matrix& phi, int d_X, int d_Y) {
  return kernels::parallel::partial_trace(phi, {d_X, d_Y}, {true, false});
}

namespace {

Matrix inverse_sqrt(const Matrix& tau, double cutoff) {
  return herm_fn(tau, [](double x) { return 1.0 / std::sqrt(x); }, cutoff);
}

}  // namespace

Matrix tp_repair(const Matrix& phi, int d_X, int d_Y, double cutoff) {
  Matrix tau = hermitize(marginal_input(phi, d_X, d_Y));
  double lo = min_eigenvalue(tau);
  if (lo <= cutoff)
    throw SingularMarginalError("tp_repair: marginal eigenvalue " +
                                std::to_string(lo) + " below cutoff");
  Matrix k = kron(inverse_sqrt(tau, cutoff), Matrix::Identity(d_Y, d_Y));
  Matrix out = k * phi * k / static_cast<double>(d_X);
  return (out + out.adjoint()) * 0.5;
}

RepairBound repair_distance_bound(const Matrix& phi, int d_X, int d_Y,
                                  double cutoff) {
  Matrix repaired = tp_repair(phi, d_X, d_Y, cutoff);
  Matrix tau = marginal_input(phi, d_X, d_Y);
  double root_trace = sqrt_psd(tau).trace().real();
  RepairBound b;
  b.lhs = trace_norm(Matrix(phi - repaired));
  b.fidelity_formula = root_trace * root_trace / d_X;
  b.rhs = std::sqrt(std::max(0.0, 1.0 - b.fidelity_formula));
  b.fidelity = fidelity(phi, repaired);
  return b;
}

ChebyshevResult operator_chebyshev(const std::vector<Matrix>& samples,
                                   const std::vector<double>& probs,
                                   double epsilon) {
  if (samples.empty() || samples.size() != probs.size())
    throw DimensionError("operator_chebyshev: sample/probability mismatch");
  const Index d = samples.front().rows();
  Matrix mu = Matrix::Zero(d, d);
  Matrix second = Matrix::Zero(d * d, d * d);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    mu += probs[s] * samples[s];
    second += probs[s] * kron(samples[s], samples[s]);
  }
  ChebyshevResult r;
  for (std::size_t s = 0; s < samples.size(); ++s)
    if (op_norm(Matrix(samples[s] - mu)) >= epsilon) r.empirical_prob += probs[s];
  double spread = op_norm(Matrix(second - kron(mu, mu)));
  r.bound = static_cast<double>(d * d) / (epsilon * epsilon) * spread;
  return r;
}

bool ConcentrationReport::statement1_ok() const {
  for (std::size_t i = 0; i < ek_residuals.size(); ++i)
    if (ek_residuals[i].second > ek_bounds[i] + 1e-9) return false;
  return true;
}

double approximation_rate(int d_X, int d_Y, int n) {
  double d = static_cast<double>(d_X) * d_Y;
  return 4.0 * d * d / static_cast<double>(n);
}

ConcentrationReport concentration_report(const DeFinettiApprox& approx,
                                         int d_X, int d_Y, double epsilon,
                                         double delta) {
  ConcentrationReport rep;
  rep.epsilon = epsilon;
  rep.delta = delta;
  rep.grid_residual = approx.grid_residual;
  const std::size_t count = approx.size();
  std::vector<Matrix> tau(count);
  std::vector<double> mass(count);
  for (std::size_t j = 0; j < count; ++j) {
    tau[j] = marginal_input(approx.phi[j], d_X, d_Y);
    mass[j] = approx.m[j].trace().real();
  }
  const int kmax = std::min(2, std::max(1, approx.source_n));
  for (int k = 1; k <= kmax; ++k) {
    const Index side = static_cast<Index>(std::pow(d_X, k));
    Matrix ek = Matrix::Zero(side, side);
    for (std::size_t j = 0; j < count; ++j)
      ek += mass[j] * (k == 1 ? tau[j] : kron(tau[j], tau[j]));
    if (k == 1) rep.e1 = ek;
    Matrix target = Matrix::Identity(side, side) / static_cast<double>(side);
    Matrix diff = ek - target;
    rep.ek_residuals.emplace_back(k, trace_norm(Matrix((diff + diff.adjoint()) * 0.5)));
    rep.ek_bounds.push_back(k * delta + approx.grid_residual);
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (op_norm(Matrix(tau[j] - rep.e1)) < epsilon)
      rep.r_eps_mass += mass[j];
    else
      rep.complement_mass += mass[j];
  }
  const double dx = d_X;
  rep.bound_rhs = dx * dx / (epsilon * epsilon) *
                      (2.0 * delta * (1.0 + 1.0 / dx) + delta * delta) +
                  approx.grid_residual;
  return rep;
}

double EpsilonRule::choose(double delta) const {
  return cube_root ? std::cbrt(delta) : fixed;
}

ChoiChannel LoccProtocol::rebuild(int n) const {
  std::vector<Matrix> m;
  std::vector<ChoiChannel> ch;
  Matrix pooled = Matrix::Zero(d_A(), d_A());
  bool any_fallback = false;
  for (std::size_t j = 0; j < povm.size(); ++j) {
    if (fallback[j]) {
      pooled += povm[j];
      any_fallback = true;
    } else {
      m.push_back(povm[j]);
      ch.push_back(channels[j]);
    }
  }
  if (any_fallback) {
    const ChoiChannel& c = channels.front();
    m.push_back(pooled);
    ch.push_back(depolarizing_channel(c.d_X(), c.d_Y()));
  }
  return measure_and_prepare_choi(m, ch, n);
}

Matrix LoccProtocol::single_instance_choi() const {
  const Index d_a = d_A();
  const Index side = d_a * channels.front().matrix().rows();
  Matrix out = Matrix::Zero(side, side);
  for (std::size_t j = 0; j < povm.size(); ++j)
    out += kron(Matrix(povm[j].transpose() / static_cast<double>(d_a)),
                channels[j].matrix());
  return out;
}

LoccBuild protocol_from_approx(const DeFinettiApprox& approx, int d_X, int d_Y,
                               const LoccOptions& options) {
  if (approx.d_B != d_X * d_Y)
    throw DimensionError("protocol_from_approx: site dimension mismatch");
  const int n = approx.source_n;
  const double delta = approximation_rate(d_X, d_Y, n);
  const double epsilon = options.epsilon.choose(delta);
  LoccBuild out;
  out.concentration = concentration_report(approx, d_X, d_Y, epsilon, delta);
  const Matrix& e1 = out.concentration.e1;

  const std::size_t count = approx.size();
  const int d_A = approx.d_A;
  const ChannelDims single{1, d_X, d_Y, 1};
  const ChoiChannel fallback = depolarizing_channel(d_X, d_Y);
  LoccProtocol& p = out.protocol;
  p.povm.resize(count);
  p.channels.resize(count);
  p.fallback.assign(count, true);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < count; ++j) {
    p.povm[j] = approx.m[j].transpose() * static_cast<double>(d_A);
    Matrix tau = hermitize(marginal_input(approx.phi[j], d_X, d_Y));
    bool usable = min_eigenvalue(tau) > options.cutoff &&
                  op_norm(Matrix(tau - e1)) < epsilon;
    if (usable) {
      p.channels[j] = ChoiChannel(tp_repair(approx.phi[j], d_X, d_Y,
                                            options.cutoff),
                                  single);
      p.fallback[j] = false;
    } else {
      p.channels[j] = fallback;
    }
  }
  for (bool f : p.fallback) (f ? p.provenance.fallback_count
                               : p.provenance.repaired_count)++;

  Matrix total = Matrix::Zero(d_A, d_A);
  for (const auto& m : p.povm) total += m;
  double top = max_eigenvalue(total);
  if (top > 1.0 + 1e-8) {
    p.provenance.povm_scale = 1.0 / top;
    for (auto& m : p.povm) m *= p.provenance.povm_scale;
    total *= p.provenance.povm_scale;
  }
  Matrix slack = Matrix::Identity(d_A, d_A) - total;
  if (min_eigenvalue(slack) < -1e-8)
    throw PovmError("slack POVM element is not PSD");
  slack = clip_psd(slack);
  p.provenance.slack_mass = slack.trace().real() / d_A;
  p.povm.push_back(slack);
  p.channels.push_back(fallback);
  p.fallback.push_back(true);

  p.provenance.epsilon = epsilon;
  p.provenance.delta = delta;
  p.provenance.grid_size = static_cast<int>(count);
  p.provenance.grid_residual = approx.grid_residual;
  return out;
}

LoccBuild build_locc_protocol_detailed(const ChoiChannel& q,
                                       const LoccOptions& options) {
  double ns = is_nonsignalling(q).max_violation();
  if (ns > kSignallingThreshold)
    throw SignallingError("build_locc_protocol: input is signalling", ns);
  ChoiChannel sym = symmetrize_channel(q);
  SymmetricExtension ext = purify_extension(sym);
  MeasureGrid grid = build_grid(ext.d_eff(), q.n(), options.grid);
  DeFinettiApprox approx = extract_measure(ext, grid);
  LoccBuild out = protocol_from_approx(approx, q.d_X(), q.d_Y(), options);
  out.protocol.provenance.grid_spec = options.grid.to_string();
  out.protocol.provenance.grid_residual_exact = grid.residual_exact;
  out.protocol.provenance.d_eff = ext.d_eff();
  out.protocol.provenance.purified = ext.purified;
  return out;
}

LoccProtocol build_locc_protocol(const ChoiChannel& q,
                                 const LoccOptions& options) {
  return build_locc_protocol_detailed(q, options).protocol;
}

double theorem1_bound(int d_A, int d_X, int d_Y, int n, double r_infnorm) {
  return std::pow(4.0, 1.0 / 6.0) * d_A * std::pow(d_X, 11.0 / 6.0) *
         std::pow(d_Y, 1.0 / 3.0) * std::pow(n, -1.0 / 6.0) * r_infnorm;
}

}  // namespace qinductive
