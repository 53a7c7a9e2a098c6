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

#include "commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <tuple>

#include "qinductive/classical.h"
#include "qinductive/errors.h"
#include "qinductive/locc.h"
#include "qinductive/random.h"
#include "qinductive/serialize.h"

namespace qinductive::cli {
namespace {

std::vector<int> n_or(const ExperimentConfig& cfg, std::vector<int> fallback) {
  return cfg.n_values.empty() ? fallback : cfg.n_values;
}

// Runs body(i) for i in [0, count) across the OpenMP pool and rethrows the
// first exception (by index) on the calling thread.
template <typename F>
void parallel_jobs(int count, F body) {
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct CheckList {
  Json checks = Json::array();
  bool all_pass = true;

  // Records lhs <= rhs.
  Json& add(const std::string& name, double lhs, double rhs) {
    bool pass = lhs <= rhs;
    all_pass = all_pass && pass;
    checks.push_back(
        {{"name", name}, {"pass", pass}, {"lhs", lhs}, {"rhs", rhs},
         {"relation", "<="}});
    return checks.back();
  }
};

Matrix kraus_apply(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

void verify_channels(Rng& rng, CheckList* out) {
  double dev = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const int dx = 2 + trial % 2, dy = 2 + (trial / 2) % 2;
    std::vector<Matrix> kraus = random_kraus(dx, dy, 3, rng);
    ChoiChannel phi = choi_of_kraus(kraus);
    for (int s = 0; s < 4; ++s) {
      Matrix rho = random_density(dx, rng);
      dev = std::max(dev, (apply_channel(phi, rho) - kraus_apply(kraus, rho))
                              .cwiseAbs()
                              .maxCoeff());
    }
  }
  out->add("choi_kraus_roundtrip", dev, 1e-10);

  ChoiChannel single = choi_of_kraus(random_kraus(2, 2, 2, rng));
  out->add("nonsignalling_product",
           is_nonsignalling(tensor_power(single, 3)).max_violation(), 1e-10);

  LoccFamily fam = LoccFamily::make(rng.next());
  out->add("nonsignalling_measure_prepare",
           is_nonsignalling(fam.choi(3)).max_violation(), 1e-10);
  out->add("signalling_detected", 0.5,
           is_nonsignalling(output_crossing_channel(2, 2)).max_violation());

  ChoiChannel q = random_nonsignalling_choi(ChannelDims{2, 2, 2, 2}, rng.next());
  CptpReport cptp = is_cptp(q);
  // The Dykstra projection stops at residual 1e-8 per constraint.
  out->add("random_nonsignalling_is_cptp",
           std::max(cptp.psd_violation, cptp.tp_violation), 1e-7);
  out->add("random_nonsignalling_is_nonsignalling",
           is_nonsignalling(q).max_violation(), kPsdTol);
}

void verify_definetti(Rng& rng, CheckList* out) {
  LoccFamily fam = LoccFamily::make(rng.next());
  const int n = 4;
  SymmetricExtension ext = fam.extension(n);
  MeasureGrid grid = build_grid(ext.d_eff(), n, GridSpec::parse("design"));
  DeFinettiApprox approx = extract_measure(ext, grid);

  const Matrix target =
      Matrix::Identity(fam.d_A(), fam.d_A()) / static_cast<double>(fam.d_A());
  out->add("definetti_k0_identity", trace_norm(Matrix(approx.m_sum() - target)),
           grid.residual + 1e-8)["grid_residual"] = grid.residual;

  ConcentrationReport rep = concentration_report(
      approx, 2, 2, 0.5, approximation_rate(2, 2, n));
  for (std::size_t i = 0; i < rep.ek_residuals.size(); ++i)
    out->add("definetti_statement1_k" +
                 std::to_string(rep.ek_residuals[i].first),
             rep.ek_residuals[i].second, rep.ek_bounds[i] + 1e-9);
  out->add("definetti_statement2", rep.complement_mass, rep.bound_rhs + 1e-9);

  const int np = 16;
  SymmetricExtension prod = mixture_extension(
      {Matrix(Matrix::Identity(1, 1))}, {Vector(Vector::Unit(2, 0))}, np);
  MeasureGrid pg = build_grid(2, np, GridSpec::parse("design"));
  DeFinettiApprox pa = extract_measure(prod, pg);
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  out->add("definetti_product_k1", approx_error(zero, pa, 1),
           definetti_bound(2, 1, np) + pg.residual);
}

void verify_repair(Rng& rng, CheckList* out) {
  double fvdg_excess = -1.0, tp_dev = 0.0, fid_dev = 0.0;
  int literal_violations = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const int dx = 2 + t % 2, dy = 2 + (t / 2) % 2;
    Matrix phi = random_density(dx * dy, rng);
    RepairBound b = repair_distance_bound(phi, dx, dy);
    fvdg_excess = std::max(fvdg_excess, b.lhs - b.rhs_fvdg());
    if (b.lhs > b.rhs + 1e-9) ++literal_violations;
    fid_dev = std::max(fid_dev, std::abs(b.fidelity - b.fidelity_formula));
    Matrix tau = marginal_input(tp_repair(phi, dx, dy), dx, dy);
    tp_dev = std::max(tp_dev, (tau - Matrix::Identity(dx, dx) / double(dx))
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  // The bound without the Fuchs-van de Graaf factor 2 is reported, not gated.
  Json& c = out->add("repair_distance_fvdg", fvdg_excess, 1e-9);
  c["literal_bound_violations"] = literal_violations;
  c["trials"] = trials;
  out->add("repair_trace_preserving", tp_dev, 1e-9);
  out->add("repair_fidelity_identity", fid_dev, 1e-8);
}

void verify_chebyshev(Rng& rng, CheckList* out) {
  double excess = -1.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + rng.uniform_int(3);
    const int count = 2 + rng.uniform_int(5);
    std::vector<Matrix> xs;
    std::vector<double> ps;
    double total = 0.0;
    for (int k = 0; k < count; ++k) {
      xs.push_back(random_hermitian(d, rng) * 0.5);
      ps.push_back(rng.uniform() + 1e-3);
      total += ps.back();
    }
    for (double& p : ps) p /= total;
    for (double eps : {0.1, 0.3, 0.5}) {
      ChebyshevResult r = operator_chebyshev(xs, ps, eps);
      excess = std::max(excess, r.empirical_prob - r.bound);
    }
  }
  out->add("operator_chebyshev", excess, 1e-9);
}

void verify_classical(Rng& rng, CheckList* out) {
  double risk_dev = 0.0, ns_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ClassicalProtocol p =
        random_nonsignalling_protocol(2, 2, 2, 2, rng.next());
    MixtureReduction red = reduce_to_classifiers(p);
    ns_dev = std::max(ns_dev,
                      is_nonsignalling_classical(red.reconstructed).max_deviation());
    Eigen::MatrixXd dist(2, 2);
    for (int i = 0; i < 4; ++i) dist(i / 2, i % 2) = rng.uniform();
    dist /= dist.sum();
    for (int a = 0; a < p.na; ++a)
      risk_dev = std::max(
          risk_dev, std::abs(classical_expected_risk(p, dist, a) -
                             classical_expected_risk(red.reconstructed, dist, a)));
  }
  out->add("classical_reduction_risk", risk_dev, 1e-12);
  out->add("classical_reduction_nonsignalling", ns_dev, 1e-12);
}

void verify_risk(Rng& rng, CheckList* out) {
  double dev = 0.0;
  for (int n = 1; n <= 2; ++n) {
    LearningTask task = overlap_classification_task(rng.uniform(), n);
    ChoiChannel q = random_nonsignalling_choi(task.channel_dims(), rng.next());
    dev = std::max(dev, std::abs(expected_risk_direct(q, task) -
                                 expected_risk_marginal(q, task)));
  }
  out->add("dual_path_risk", dev, 1e-8);
}

void verify_fixture(const ExperimentConfig& cfg, CheckList* out) {
  ChoiChannel q = choi_from_json(read_json_file(cfg.fixture));
  CptpReport cptp = is_cptp(q);
  out->add("fixture_cptp", std::max(cptp.psd_violation, cptp.tp_violation),
           cfg.tol);
  out->add("fixture_nonsignalling", is_nonsignalling(q).max_violation(), cfg.tol);
}

Eigen::MatrixXd random_pmf_table(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd t(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t(r, c) = rng.uniform() + 1e-3;
  return t / t.sum();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

LoccFamily LoccFamily::make(std::uint64_t seed) {
  Rng rng(seed);
  LoccFamily f;
  for (int j = 0; j < 2; ++j) {
    Matrix m = Matrix::Zero(2, 2);
    m(j, j) = 1.0;
    f.povm.push_back(m);
    f.weights.push_back(m.transpose() / 2.0);
    f.unitaries.push_back(haar_unitary(2, rng));
    Eigh e = eigh(choi_of_unitary(f.unitaries.back()).matrix());
    f.states.push_back(e.vectors.col(e.values.size() - 1));
  }
  return f;
}

ChoiChannel LoccFamily::choi(int n) const {
  std::vector<ChoiChannel> ch;
  for (const auto& u : unitaries) ch.push_back(choi_of_unitary(u));
  return measure_and_prepare_choi(povm, ch, n);
}

SymmetricExtension LoccFamily::extension(int n) const {
  return mixture_extension(weights, states, n);
}

Matrix LoccFamily::omega(int k) const {
  Matrix out;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    Matrix term = kron(weights[j],
                       kron_power(Matrix(states[j] * states[j].adjoint()), k));
    out = j == 0 ? term : Matrix(out + term);
  }
  return out;
}

std::vector<DefinettiRow> definetti_rows(const ExperimentConfig& cfg) {
  const std::vector<int> ns = n_or(cfg, {4, 8, 16, 32});
  std::vector<DefinettiRow> rows(ns.size() * cfg.k_values.size());
  const LoccFamily fam = LoccFamily::make(cfg.seed);
  parallel_jobs(static_cast<int>(ns.size()), [&](int i) {
    const int n = ns[i];
    SymmetricExtension ext =
        cfg.family == "product"
            ? mixture_extension({Matrix(Matrix::Identity(1, 1))},
                                {Vector(Vector::Unit(2, 0))}, n)
            : fam.extension(n);
    MeasureGrid grid = build_grid(ext.d_eff(), n, cfg.grid_spec());
    DeFinettiApprox approx = extract_measure(ext, grid);
    for (std::size_t kk = 0; kk < cfg.k_values.size(); ++kk) {
      const int k = cfg.k_values[kk];
      if (k > n) throw ConfigError("k must not exceed n");
      Matrix omega_k;
      if (cfg.family == "product") {
        Matrix zero = Matrix::Zero(2, 2);
        zero(0, 0) = 1.0;
        omega_k = kron_power(zero, k);
      } else {
        omega_k = fam.omega(k);
      }
      DefinettiRow& r = rows[i * cfg.k_values.size() + kk];
      r.n = n;
      r.k = k;
      r.d_eff = ext.d_eff();
      r.delta = approx_error(omega_k, approx, k);
      r.bound = definetti_bound(ext.d_eff(), k, n);
      r.grid_residual = grid.residual;
      r.grid_residual_exact = grid.residual_exact;
    }
  });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.k) < std::tie(b.n, b.k);
  });
  return rows;
}

std::vector<RiskReport> risk_gap_reports(const ExperimentConfig& cfg) {
  const std::vector<int> ns = n_or(cfg, {1, 2, 3});
  std::vector<RiskReport> rows(ns.size());
  const LoccOptions options = cfg.locc_options();
  parallel_jobs(static_cast<int>(ns.size()), [&](int i) {
    LearningTask task = overlap_classification_task(cfg.overlap, ns[i]);
    if (cfg.loss == "unit")
      task.s = Matrix::Identity(task.s.rows(), task.s.cols());
    rows[i] = risk_gap_experiment(task, collective_classifier(task), options,
                                  cfg.normalization());
  });
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  return rows;
}

std::string risk_gap_csv(const std::vector<RiskReport>& rows,
                         std::uint64_t seed) {
  std::ostringstream os;
  os << "n,risk_collective,risk_locc,gap,bound,trivial_bound,grid_residual,"
        "grid_residual_exact,seed\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_double(r.risk_collective) << ','
       << format_double(r.risk_locc) << ',' << format_double(r.gap) << ','
       << format_double(r.bound) << ',' << format_double(r.trivial_bound())
       << ',' << format_double(r.grid_residual) << ','
       << (r.provenance.grid_residual_exact ? 1 : 0) << ',' << seed << '\n';
  return os.str();
}

CommandOutput cmd_verify(const ExperimentConfig& cfg) {
  Rng rng(cfg.seed);
  CheckList checks;
  verify_channels(rng, &checks);
  verify_definetti(rng, &checks);
  verify_repair(rng, &checks);
  verify_chebyshev(rng, &checks);
  verify_classical(rng, &checks);
  verify_risk(rng, &checks);
  if (!cfg.fixture.empty()) verify_fixture(cfg, &checks);
  Json report{{"command", "verify"},
              {"seed", cfg.seed},
              {"pass", checks.all_pass},
              {"checks", checks.checks}};
  return {checks.all_pass ? kExitPass : kExitCheckFailure, report.dump(2) + "\n"};
}

CommandOutput cmd_risk_gap(const ExperimentConfig& cfg) {
  std::vector<RiskReport> rows = risk_gap_reports(cfg);
  bool ok = std::all_of(rows.begin(), rows.end(),
                        [](const RiskReport& r) { return r.within_bound(); });
  return {ok ? kExitPass : kExitCheckFailure, risk_gap_csv(rows, cfg.seed)};
}

CommandOutput cmd_definetti(const ExperimentConfig& cfg) {
  std::vector<DefinettiRow> rows = definetti_rows(cfg);
  std::ostringstream os;
  os << "n,k,delta_k,bound_4d2k_over_n,grid_residual,grid_residual_exact,"
        "d_eff\n";
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.ok();
    os << r.n << ',' << r.k << ',' << format_double(r.delta) << ','
       << format_double(r.bound) << ',' << format_double(r.grid_residual) << ','
       << (r.grid_residual_exact ? 1 : 0) << ',' << r.d_eff << '\n';
  }
  return {ok ? kExitPass : kExitCheckFailure, os.str()};
}

CommandOutput cmd_classical_demo(const ExperimentConfig& cfg) {
  const int n = cfg.n_values.empty() ? 2 : cfg.n_values.front();
  ClassicalProtocol p;
  try {
    p = cfg.protocol.empty()
            ? random_nonsignalling_protocol(cfg.nx, cfg.ny, cfg.na, n, cfg.seed)
            : classical_from_json(read_json_file(cfg.protocol));
    p.validate();
  } catch (const DimensionError& e) {
    throw ConfigError(std::string("protocol: ") + e.what());
  }
  Rng rng(cfg.seed ^ 0x5bd1e995u);
  Eigen::MatrixXd dist = random_pmf_table(p.nx, p.ny, rng);
  const double input_ns = is_nonsignalling_classical(p).max_deviation();
  MixtureReduction red = reduce_to_classifiers(p);
  const double output_ns =
      is_nonsignalling_classical(red.reconstructed).max_deviation();

  Json per_a = Json::array();
  double max_diff = 0.0;
  for (int a = 0; a < p.na; ++a) {
    double r0 = classical_expected_risk(p, dist, a);
    double r1 = classical_expected_risk(red.reconstructed, dist, a);
    max_diff = std::max(max_diff, std::abs(r0 - r1));
    const ClassifierMixture& mix = red.mixtures[a];
    per_a.push_back({{"a", a},
                     {"risk_original", r0},
                     {"risk_reconstructed", r1},
                     {"functions", mix.functions},
                     {"weights", mix.weights}});
  }
  Json dist_rows = Json::array();
  for (int x = 0; x < dist.rows(); ++x) {
    std::vector<double> row(dist.cols());
    for (int y = 0; y < dist.cols(); ++y) row[y] = dist(x, y);
    dist_rows.push_back(row);
  }
  const bool pass = input_ns <= cfg.tol && output_ns <= cfg.tol &&
                    max_diff <= cfg.tol;
  Json report{{"command", "classical-demo"},
              {"seed", cfg.seed},
              {"nx", p.nx},
              {"ny", p.ny},
              {"na", p.na},
              {"n", p.n},
              {"distribution", dist_rows},
              {"input_ns_deviation", input_ns},
              {"reconstructed_ns_deviation", output_ns},
              {"max_risk_difference", max_diff},
              {"tol", cfg.tol},
              {"pass", pass},
              {"per_a", per_a}};
  return {pass ? kExitPass : kExitCheckFailure, report.dump(2) + "\n"};
}

CommandOutput cmd_gen_channel(const ExperimentConfig& cfg) {
  const int n = cfg.n_values.empty() ? 2 : cfg.n_values.front();
  const ChannelDims dims{cfg.dims.d_A, cfg.dims.d_X, cfg.dims.d_Y, n};
  auto need_square = [&] {
    if (dims.d_X != dims.d_Y)
      throw ConfigError("kind '" + cfg.kind + "' needs d_X == d_Y");
  };
  ChoiChannel q;
  if (cfg.kind == "random-ns") {
    q = random_nonsignalling_choi(dims, cfg.seed);
  } else if (cfg.kind == "crossing") {
    need_square();
    q = output_crossing_channel(dims.d_X, n);
  } else if (cfg.kind == "locc") {
    Rng rng(cfg.seed);
    std::vector<Matrix> povm;
    std::vector<ChoiChannel> ch;
    for (int j = 0; j < dims.d_A; ++j) {
      Matrix m = Matrix::Zero(dims.d_A, dims.d_A);
      m(j, j) = 1.0;
      povm.push_back(m);
      ch.push_back(choi_of_kraus(random_kraus(dims.d_X, dims.d_Y, 2, rng)));
    }
    q = measure_and_prepare_choi(povm, ch, n);
  } else if (cfg.kind == "identity") {
    need_square();
    q = tensor_power(identity_channel(dims.d_X), n);
  } else {
    q = tensor_power(depolarizing_channel(dims.d_X, dims.d_Y), n);
  }
  Json j = to_json(q);
  j["kind"] = cfg.kind;
  j["seed"] = cfg.seed;
  return {kExitPass, j.dump(2) + "\n"};
}

CommandOutput run_command(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "risk-gap") return cmd_risk_gap(cfg);
  if (cfg.command == "definetti") return cmd_definetti(cfg);
  if (cfg.command == "classical-demo") return cmd_classical_demo(cfg);
  if (cfg.command == "gen-channel") return cmd_gen_channel(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace qinductive::cli
