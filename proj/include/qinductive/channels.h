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

#ifndef QINDUCTIVE_CHANNELS_H_
#define QINDUCTIVE_CHANNELS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qinductive/tensor_core.h"

namespace qinductive {

struct ChannelDims {
  int d_A = 1;
  int d_X = 2;
  int d_Y = 2;
  int n = 1;

  bool operator==(const ChannelDims&) const = default;
  Index input_dim() const;
  Index output_dim() const;
};

std::string x_label(int i);   // "X1", ...
std::string y_label(int i);   // "Y1", ...
std::string yp_label(int i);  // "Yp1", ...

// Factorization A, X1, Y1, ..., Xn, Yn. The A factor is present even when
// d_A = 1.
Factorization choi_shape(const ChannelDims& dims);

// Trace-one Choi matrix of a channel A (x) X^{(x)n} -> Y^{(x)n}.
class ChoiChannel {
 public:
  ChoiChannel() = default;
  ChoiChannel(Operator omega, const ChannelDims& dims);
  ChoiChannel(Matrix omega, const ChannelDims& dims);

  const Operator& omega() const { return omega_; }
  const Matrix& matrix() const { return omega_.matrix(); }
  const ChannelDims& dims() const { return dims_; }
  int d_A() const { return dims_.d_A; }
  int d_X() const { return dims_.d_X; }
  int d_Y() const { return dims_.d_Y; }
  int n() const { return dims_.n; }

  // The Choi matrix regrouped as (A X1..Xn) (x) (Y1..Yn).
  Matrix input_output_matrix() const;

 private:
  Operator omega_;
  ChannelDims dims_;
};

// Kraus operators map A (x) X^{(x)n} to Y^{(x)n} with inputs and outputs
// ordered as listed. With default dims a single-instance channel X -> Y is
// inferred from the Kraus shapes.
ChoiChannel choi_of_kraus(const std::vector<Matrix>& kraus);
ChoiChannel choi_of_kraus(const std::vector<Matrix>& kraus,
                          const ChannelDims& dims);
ChoiChannel choi_of_unitary(const Matrix& u);
ChoiChannel depolarizing_channel(int d_X, int d_Y);
ChoiChannel identity_channel(int d);

// Applies the channel to an operator on A (x) X^{(x)n}.
Matrix apply_channel(const ChoiChannel& phi, const Matrix& input);
// Applies id_R (x) channel to an operator on R (x) A (x) X^{(x)n}; the
// output lives on R (x) Y^{(x)n}.
Matrix apply_channel_with_ancilla(const ChoiChannel& phi, const Matrix& input,
                                  Index d_anc);
// Same, on an (in) (x) (out) regrouped Choi matrix W.
Matrix apply_choi(const Matrix& w, Index d_in, Index d_out, const Matrix& input,
                  Index d_anc);
Matrix adjoint_apply(const ChoiChannel& phi, const Matrix& output_op);

struct CptpReport {
  double psd_violation = 0.0;
  double tp_violation = 0.0;
  bool ok(double tol) const {
    return psd_violation <= tol && tp_violation <= tol;
  }
};
CptpReport is_cptp(const ChoiChannel& phi);

struct NonsignallingReport {
  std::vector<double> per_i_violation;
  double max_violation() const;
  bool ok(double tol) const { return max_violation() <= tol; }
};
NonsignallingReport is_nonsignalling(const ChoiChannel& q);

struct MarginalResult {
  ChoiChannel channel;
  double nonsignalling_residual = 0.0;
  double chain_residual = 0.0;
};
inline constexpr double kSignallingThreshold = 1e-6;
// Reduced channel on the first k instances. Throws SignallingError when the
// input is signalling or the chain identity fails above the threshold.
MarginalResult marginal_channel(const ChoiChannel& q, int k);

// Average of the Choi matrix over simultaneous permutations of the (X_i, Y_i)
// pairs. Requires n <= 6.
ChoiChannel symmetrize_channel(const ChoiChannel& q);
// Choi matrix with its pairs reordered so that new pair k is old pair
// order[k].
ChoiChannel permute_pairs(const ChoiChannel& q, const std::vector<int>& order);

struct DykstraOptions {
  int max_iters = 5000;
  double tol = 1e-8;
};
struct DykstraResult {
  ChoiChannel channel;
  int iterations = 0;
  bool converged = false;
  double psd_violation = 0.0;
  double tp_violation = 0.0;
  std::vector<double> ns_violation;
};
// Dykstra projection of `start` onto PSD, trace-preserving and per-site
// non-signalling Choi matrices.
DykstraResult project_nonsignalling(const Matrix& start,
                                    const ChannelDims& dims,
                                    const DykstraOptions& options = {});
// Random instance started from a seeded Wishart matrix. Throws
// ConvergenceError with the final residuals when the projection stalls.
ChoiChannel random_nonsignalling_choi(const ChannelDims& dims,
                                      std::uint64_t seed,
                                      const DykstraOptions& options = {});

// Sum_j (M_j^T / d_A) (x) phi_j^{(x)n}. Each phi_j is a single-instance
// channel X -> Y.
ChoiChannel measure_and_prepare_choi(const std::vector<Matrix>& povm,
                                     const std::vector<ChoiChannel>& channels,
                                     int n);

// Choi matrix of the channel that sends Y_i <- X_{i+1 mod n}.
ChoiChannel output_crossing_channel(int d, int n);
ChoiChannel tensor_power(const ChoiChannel& phi, int n);
// phi_1 (x) ... (x) phi_n for single-instance channels with no A.
ChoiChannel tensor_product(const std::vector<ChoiChannel>& parts);

}  // namespace qinductive

#endif  // QINDUCTIVE_CHANNELS_H_
