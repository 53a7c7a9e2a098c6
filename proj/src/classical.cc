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

#include "qinductive/classical.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qinductive/errors.h"
#include "qinductive/random.h"
#include "qinductive/tensor_core.h"

namespace qinductive {
namespace {

std::int64_t ipow(std::int64_t b, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

void check_shape(int nx, int ny, int na, int n) {
  if (nx < 1 || ny < 1 || na < 1 || n < 1)
    throw DimensionError("alphabet sizes and n must be positive");
  if (nx > kMaxClassicalAlphabet || ny > kMaxClassicalAlphabet)
    throw TooLargeError("classical alphabets are capped at 8");
  if (n > kMaxClassicalN) throw TooLargeError("classical n is capped at 4");
}

void check_stochastic(const Eigen::MatrixXd& q, double tol) {
  for (Eigen::Index x = 0; x < q.cols(); ++x) {
    if (q.col(x).minCoeff() < -tol)
      throw DimensionError("stochastic map has a negative entry");
    if (std::abs(q.col(x).sum() - 1.0) > tol)
      throw DimensionError("stochastic map column does not sum to 1");
  }
}

}  // namespace

ClassicalProtocol ClassicalProtocol::zeros(int nx, int ny, int na, int n) {
  check_shape(nx, ny, na, n);
  ClassicalProtocol p;
  p.nx = nx;
  p.ny = ny;
  p.na = na;
  p.n = n;
  p.probs.assign(na * ipow(nx, n) * ipow(ny, n), 0.0);
  return p;
}

std::int64_t ClassicalProtocol::contexts() const { return ipow(nx, n); }
std::int64_t ClassicalProtocol::outcomes() const { return ipow(ny, n); }

void ClassicalProtocol::validate(double tol) const {
  check_shape(nx, ny, na, n);
  if (static_cast<std::int64_t>(probs.size()) != na * contexts() * outcomes())
    throw DimensionError("protocol table has the wrong size");
  for (int a = 0; a < na; ++a)
    for (std::int64_t x = 0; x < contexts(); ++x) {
      double total = 0.0;
      for (std::int64_t y = 0; y < outcomes(); ++y) {
        double v = at(a, x, y);
        if (v < -tol) throw DimensionError("protocol has a negative entry");
        total += v;
      }
      if (std::abs(total - 1.0) > tol)
        throw DimensionError("protocol slice does not sum to 1");
    }
}

std::vector<int> digits(std::int64_t v, int base, int n) {
  std::vector<int> d(n);
  for (int i = n - 1; i >= 0; --i) {
    d[i] = static_cast<int>(v % base);
    v /= base;
  }
  return d;
}

std::int64_t from_digits(const std::vector<int>& d, int base) {
  std::int64_t v = 0;
  for (int x : d) v = v * base + x;
  return v;
}

Eigen::MatrixXd marginal_classical(const ClassicalProtocol& p, int a, int i) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(p.ny, p.contexts());
  for (std::int64_t x = 0; x < p.contexts(); ++x)
    for (std::int64_t y = 0; y < p.outcomes(); ++y)
      q(digits(y, p.ny, p.n)[i], x) += p.at(a, x, y);
  return q;
}

Eigen::MatrixXd local_marginal(const ClassicalProtocol& p, int a, int i) {
  Eigen::MatrixXd full = marginal_classical(p, a, i);
  Eigen::MatrixXd q(p.ny, p.nx);
  std::vector<int> ctx(p.n, 0);
  for (int x = 0; x < p.nx; ++x) {
    ctx[i] = x;
    q.col(x) = full.col(from_digits(ctx, p.nx));
  }
  return q;
}

double ClassicalNsReport::max_deviation() const {
  double m = 0.0;
  for (double v : per_i_deviation) m = std::max(m, v);
  return m;
}

ClassicalNsReport is_nonsignalling_classical(const ClassicalProtocol& p) {
  ClassicalNsReport r;
  r.per_i_deviation.assign(p.n, 0.0);
  for (int i = 0; i < p.n; ++i)
    for (int a = 0; a < p.na; ++a) {
      Eigen::MatrixXd full = marginal_classical(p, a, i);
      Eigen::MatrixXd local = local_marginal(p, a, i);
      for (std::int64_t x = 0; x < p.contexts(); ++x) {
        int xi = digits(x, p.nx, p.n)[i];
        double dev = (full.col(x) - local.col(xi)).cwiseAbs().maxCoeff();
        r.per_i_deviation[i] = std::max(r.per_i_deviation[i], dev);
      }
    }
  return r;
}

ClassicalProtocol symmetrize_classical(const ClassicalProtocol& p) {
  if (p.n > 6) throw TooLargeError("symmetrization is capped at n = 6");
  ClassicalProtocol out = ClassicalProtocol::zeros(p.nx, p.ny, p.na, p.n);
  auto perms = all_permutations(p.n);
  const double w = 1.0 / static_cast<double>(perms.size());
  std::vector<int> xs(p.n), ys(p.n);
  for (const auto& sigma : perms)
    for (std::int64_t x = 0; x < p.contexts(); ++x) {
      auto xd = digits(x, p.nx, p.n);
      for (int k = 0; k < p.n; ++k) xs[sigma[k]] = xd[k];
      std::int64_t xp = from_digits(xs, p.nx);
      for (std::int64_t y = 0; y < p.outcomes(); ++y) {
        auto yd = digits(y, p.ny, p.n);
        for (int k = 0; k < p.n; ++k) ys[sigma[k]] = yd[k];
        std::int64_t yp = from_digits(ys, p.ny);
        for (int a = 0; a < p.na; ++a) out.at(a, xp, yp) += w * p.at(a, x, y);
      }
    }
  return out;
}

Eigen::MatrixXd ClassifierMixture::stochastic_map() const {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(ny, nx);
  for (std::size_t k = 0; k < functions.size(); ++k)
    for (int x = 0; x < nx; ++x) q(functions[k][x], x) += weights[k];
  return q;
}

ClassifierMixture decompose_classifier_mixture(const Eigen::MatrixXd& q) {
  check_stochastic(q, 1e-12);
  const int ny = static_cast<int>(q.rows());
  const int nx = static_cast<int>(q.cols());
  if (std::pow(static_cast<double>(ny), nx) > kMaxClassifierCount)
    throw TooLargeError("more than 1e6 classifying functions");
  ClassifierMixture mix;
  mix.nx = nx;
  mix.ny = ny;
  const std::int64_t count = ipow(ny, nx);
  for (std::int64_t k = 0; k < count; ++k) {
    auto f = digits(k, ny, nx);
    double mu = 1.0;
    for (int x = 0; x < nx; ++x) mu *= q(f[x], x);
    if (mu == 0.0) continue;
    mix.functions.push_back(std::move(f));
    mix.weights.push_back(mu);
  }
  return mix;
}

ClassicalProtocol reconstruct_protocol(
    const std::vector<ClassifierMixture>& mix_per_a, int n) {
  if (mix_per_a.empty()) throw DimensionError("no mixtures");
  const int nx = mix_per_a.front().nx;
  const int ny = mix_per_a.front().ny;
  ClassicalProtocol p =
      ClassicalProtocol::zeros(nx, ny, static_cast<int>(mix_per_a.size()), n);
  std::vector<int> ys(n);
  for (int a = 0; a < p.na; ++a) {
    const auto& mix = mix_per_a[a];
    if (mix.nx != nx || mix.ny != ny)
      throw DimensionError("mixtures disagree on alphabet sizes");
    for (std::int64_t x = 0; x < p.contexts(); ++x) {
      auto xd = digits(x, nx, n);
      for (std::size_t k = 0; k < mix.functions.size(); ++k) {
        for (int i = 0; i < n; ++i) ys[i] = mix.functions[k][xd[i]];
        p.at(a, x, from_digits(ys, ny)) += mix.weights[k];
      }
    }
  }
  return p;
}

Eigen::MatrixXd zero_one_loss(int ny) {
  return Eigen::MatrixXd::Ones(ny, ny) - Eigen::MatrixXd::Identity(ny, ny);
}

double classical_expected_risk(const ClassicalProtocol& p,
                               const Eigen::MatrixXd& dist, int a) {
  return classical_expected_risk(p, dist, a, zero_one_loss(p.ny));
}

double classical_expected_risk(const ClassicalProtocol& p,
                               const Eigen::MatrixXd& dist, int a,
                               const Eigen::MatrixXd& loss) {
  if (dist.rows() != p.nx || dist.cols() != p.ny)
    throw DimensionError("dist must be nx x ny");
  if (loss.rows() != p.ny || loss.cols() != p.ny)
    throw DimensionError("loss must be ny x ny");
  if (dist.minCoeff() < 0.0 || std::abs(dist.sum() - 1.0) > 1e-12)
    throw DimensionError("dist is not a pmf");
  if (a < 0 || a >= p.na) throw DimensionError("training index out of range");
  Eigen::VectorXd px = dist.rowwise().sum();
  // expected loss of predicting y on input x: (dist * loss^T)(x, y)
  Eigen::MatrixXd score = dist * loss.transpose();
  double total = 0.0;
  for (std::int64_t x = 0; x < p.contexts(); ++x) {
    auto xd = digits(x, p.nx, p.n);
    for (std::int64_t y = 0; y < p.outcomes(); ++y) {
      double w = p.at(a, x, y);
      if (w == 0.0) continue;
      auto yd = digits(y, p.ny, p.n);
      double acc = 0.0;
      for (int i = 0; i < p.n; ++i) {
        double term = score(xd[i], yd[i]);
        for (int j = 0; j < p.n; ++j)
          if (j != i) term *= px(xd[j]);
        acc += term;
      }
      total += w * acc;
    }
  }
  return total / p.n;
}

MixtureReduction reduce_to_classifiers(const ClassicalProtocol& p) {
  p.validate(1e-10);
  MixtureReduction r;
  r.symmetrized = symmetrize_classical(p);
  for (int a = 0; a < p.na; ++a) {
    Eigen::MatrixXd q = local_marginal(r.symmetrized, a, 0);
    // Renormalize away rounding so the decomposition precondition holds.
    for (Eigen::Index x = 0; x < q.cols(); ++x) {
      q.col(x) = q.col(x).cwiseMax(0.0);
      q.col(x) /= q.col(x).sum();
    }
    r.mixtures.push_back(decompose_classifier_mixture(q));
  }
  r.reconstructed = reconstruct_protocol(r.mixtures, p.n);
  return r;
}

ClassicalProtocol product_protocol(const std::vector<Eigen::MatrixXd>& q_per_a,
                                   int n) {
  if (q_per_a.empty()) throw DimensionError("no local maps");
  const int ny = static_cast<int>(q_per_a.front().rows());
  const int nx = static_cast<int>(q_per_a.front().cols());
  ClassicalProtocol p =
      ClassicalProtocol::zeros(nx, ny, static_cast<int>(q_per_a.size()), n);
  for (int a = 0; a < p.na; ++a) {
    const auto& q = q_per_a[a];
    if (q.rows() != ny || q.cols() != nx)
      throw DimensionError("local maps differ in shape");
    check_stochastic(q, 1e-12);
    for (std::int64_t x = 0; x < p.contexts(); ++x) {
      auto xd = digits(x, nx, n);
      for (std::int64_t y = 0; y < p.outcomes(); ++y) {
        auto yd = digits(y, ny, n);
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= q(yd[i], xd[i]);
        p.at(a, x, y) = v;
      }
    }
  }
  return p;
}

ClassicalProtocol random_nonsignalling_protocol(int nx, int ny, int na, int n,
                                                std::uint64_t seed) {
  Rng rng(seed);
  ClassicalProtocol p = ClassicalProtocol::zeros(nx, ny, na, n);
  const int components = 4;
  auto random_map = [&] {
    Eigen::MatrixXd q(ny, nx);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) q(y, x) = -std::log(1.0 - rng.uniform());
      q.col(x) /= q.col(x).sum();
    }
    return q;
  };
  for (int a = 0; a < na; ++a) {
    std::vector<double> w(components);
    for (auto& v : w) v = -std::log(1.0 - rng.uniform());
    double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    for (int c = 0; c < components; ++c) {
      std::vector<Eigen::MatrixXd> maps;
      for (int i = 0; i < n; ++i) maps.push_back(random_map());
      bool box = n >= 2 && (c % 2 == 1);
      int i0 = 0, i1 = 1;
      std::vector<int> xshift(n), yshift(n);
      if (box) {
        i0 = rng.uniform_int(n);
        i1 = (i0 + 1 + rng.uniform_int(n - 1)) % n;
        for (int i = 0; i < n; ++i) {
          xshift[i] = rng.uniform_int(nx);
          yshift[i] = rng.uniform_int(ny);
        }
      }
      const double wc = w[c] / wsum;
      for (std::int64_t x = 0; x < p.contexts(); ++x) {
        auto xd = digits(x, nx, n);
        for (std::int64_t y = 0; y < p.outcomes(); ++y) {
          auto yd = digits(y, ny, n);
          double v = 1.0;
          for (int i = 0; i < n; ++i) {
            if (box && (i == i0 || i == i1)) continue;
            v *= maps[i](yd[i], xd[i]);
          }
          if (box) {
            int u0 = (xd[i0] + xshift[i0]) % nx;
            int u1 = (xd[i1] + xshift[i1]) % nx;
            int v0 = (yd[i0] + yshift[i0]) % ny;
            int v1 = (yd[i1] + yshift[i1]) % ny;
            bool hit = ((v0 - v1 - u0 * u1) % ny + ny) % ny == 0;
            v *= hit ? 1.0 / ny : 0.0;
          }
          p.at(a, x, y) += wc * v;
        }
      }
    }
  }
  return p;
}

}  // namespace qinductive
