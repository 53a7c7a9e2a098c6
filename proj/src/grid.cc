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
#include <sstream>

#include "qinductive/definetti.h"
#include "qinductive/errors.h"
#include "qinductive/random.h"

namespace qinductive {

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec spec;
  if (text == "design") return spec;
  std::stringstream ss(text);
  std::string head, seed, count;
  if (std::getline(ss, head, ':') && head == "haar" &&
      std::getline(ss, seed, ':') && std::getline(ss, count) && ss.eof()) {
    try {
      std::size_t used_seed = 0, used_count = 0;
      spec.mode = GridMode::kHaar;
      spec.seed = std::stoull(seed, &used_seed);
      spec.count = std::stoi(count, &used_count);
      if (used_seed == seed.size() && used_count == count.size() &&
          spec.count > 0)
        return spec;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("grid spec must be 'design' or 'haar:SEED:COUNT', got '" +
                    text + "'");
}

std::string GridSpec::to_string() const {
  if (mode == GridMode::kDesign) return "design";
  return "haar:" + std::to_string(seed) + ":" + std::to_string(count);
}

namespace {

// Amplitudes of phi^{(x)n} on the normalized occupation basis of Sym^n.
Matrix occupation_amplitudes(const Matrix& points, int n) {
  const int d = static_cast<int>(points.rows());
  auto occ = occupation_vectors(n, d);
  Matrix c(occ.size(), points.cols());
  std::vector<double> log_multinomial(occ.size());
  for (std::size_t s = 0; s < occ.size(); ++s) {
    double lm = log_factorial(n);
    for (int k : occ[s]) lm -= log_factorial(k);
    log_multinomial[s] = lm;
  }
  for (Index g = 0; g < points.cols(); ++g)
    for (std::size_t s = 0; s < occ.size(); ++s) {
      Complex amp = std::exp(0.5 * log_multinomial[s]);
      for (int i = 0; i < d; ++i)
        for (int r = 0; r < occ[s][i]; ++r) amp *= points(i, g);
      c(s, g) = amp;
    }
  return c;
}

Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

double resolution_residual(const Matrix& points, const RealVector& weights,
                           int n, bool* exact) {
  const int d = static_cast<int>(points.rows());
  const long long dsym = dim_sym(n, d);
  const long long count = points.cols();
  const double D = static_cast<double>(dsym);
  if (std::min(count, dsym) <= kExactResidualDim) {
    if (exact) *exact = true;
    if (dsym <= count) {
      Matrix c = occupation_amplitudes(points, n);
      for (Index g = 0; g < count; ++g) c.col(g) *= std::sqrt(weights(g) * D);
      Matrix f = c * c.adjoint();
      f -= Matrix::Identity(dsym, dsym);
      return trace_norm(Matrix((f + f.adjoint()) * 0.5));
    }
    Matrix gram = points.adjoint() * points;
    for (Index h = 0; h < count; ++h)
      for (Index g = 0; g < count; ++g)
        gram(g, h) = ipow(gram(g, h), n) * D * std::sqrt(weights(g) * weights(h));
    Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) * 0.5,
                                             Eigen::EigenvaluesOnly);
    double r = static_cast<double>(dsym - count);
    for (Index i = 0; i < count; ++i) r += std::abs(es.eigenvalues()(i) - 1.0);
    return r;
  }
  if (exact) *exact = false;
  // ||F - P||_1 <= sqrt(D) ||F - P||_2 with ||F - P||_2^2 = tr F^2 - 2 tr F + D.
  constexpr Index kBlock = 256;
  double tr_f2 = 0.0, tr_f = 0.0;
  for (Index g = 0; g < count; ++g)
    tr_f += weights(g) * D * std::pow(points.col(g).squaredNorm(), n);
  for (Index g0 = 0; g0 < count; g0 += kBlock) {
    Index rows = std::min<Index>(kBlock, count - g0);
    Matrix block = points.middleCols(g0, rows).adjoint() * points;
    double part = 0.0;
    for (Index h = 0; h < count; ++h)
      for (Index g = 0; g < rows; ++g)
        part += weights(g0 + g) * weights(h) *
                std::pow(std::norm(block(g, h)), n);
    tr_f2 += part * D * D;
  }
  return std::sqrt(D) * std::sqrt(std::max(0.0, tr_f2 - 2.0 * tr_f + D));
}

MeasureGrid build_grid(int d_eff, int n, const GridSpec& spec) {
  MeasureGrid grid;
  grid.spec = spec;
  grid.d = d_eff;
  grid.n = n;
  if (spec.mode == GridMode::kHaar) {
    if (spec.count <= 0) throw ConfigError("haar grid needs a positive count");
    Rng rng(spec.seed);
    grid.points.resize(d_eff, spec.count);
    for (int g = 0; g < spec.count; ++g)
      grid.points.col(g) = random_state(d_eff, rng);
    grid.weights =
        RealVector::Constant(spec.count, 1.0 / static_cast<double>(spec.count));
  } else if (d_eff == 2 && n == 1) {
    octahedron(&grid.points, &grid.weights);
  } else if (d_eff == 2 && n == 2) {
    icosahedron(&grid.points, &grid.weights);
  } else {
    design_points(d_eff, 2 * n, &grid.points, &grid.weights);
  }
  grid.residual = resolution_residual(grid.points, grid.weights, n,
                                      &grid.residual_exact);
  return grid;
}

}  // namespace qinductive
