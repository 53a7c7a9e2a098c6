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

#include "qinductive/serialize.h"

#include <fstream>

#include "qinductive/errors.h"

namespace qinductive {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

Factorization shape_from_json(const Json& j) {
  auto labels = field<std::vector<std::string>>(j, "labels");
  auto dims = field<std::vector<int>>(j, "dims");
  if (labels.size() != dims.size())
    throw ConfigError("labels and dims differ in length");
  std::vector<Factor> f;
  for (std::size_t k = 0; k < labels.size(); ++k) f.push_back({labels[k], dims[k]});
  return Factorization(std::move(f));
}

}  // namespace

Json to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const Json& j) {
  auto rows = field<Index>(j, "rows");
  auto cols = field<Index>(j, "cols");
  auto re = field<std::vector<std::vector<double>>>(j, "re");
  auto im = field<std::vector<std::vector<double>>>(j, "im");
  if (rows < 0 || cols < 0 || static_cast<Index>(re.size()) != rows ||
      static_cast<Index>(im.size()) != rows)
    throw ConfigError("matrix row count mismatch");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    if (static_cast<Index>(re[r].size()) != cols ||
        static_cast<Index>(im[r].size()) != cols)
      throw ConfigError("matrix column count mismatch");
    for (Index c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return m;
}

Json to_json(const Operator& op) {
  Json j = to_json(op.matrix());
  j["labels"] = op.shape().labels();
  j["dims"] = op.shape().dims();
  return j;
}

Operator operator_from_json(const Json& j) {
  Factorization shape = shape_from_json(j);
  Matrix m = matrix_from_json(j);
  try {
    return Operator(std::move(m), std::move(shape));
  } catch (const Error& e) {
    throw ConfigError(std::string("operator: ") + e.what());
  }
}

Json to_json(const ChoiChannel& q) {
  Json j = to_json(q.omega());
  j["d_A"] = q.d_A();
  j["d_X"] = q.d_X();
  j["d_Y"] = q.d_Y();
  j["n"] = q.n();
  return j;
}

ChoiChannel choi_from_json(const Json& j) {
  ChannelDims dims{field<int>(j, "d_A"), field<int>(j, "d_X"),
                   field<int>(j, "d_Y"), field<int>(j, "n")};
  Operator op = operator_from_json(j);
  try {
    return ChoiChannel(std::move(op), dims);
  } catch (const Error& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

Json to_json(const MeasureGrid& g) {
  Json weights = Json::array();
  for (Index k = 0; k < g.weights.size(); ++k) weights.push_back(g.weights(k));
  return Json{{"mode", g.spec.mode == GridMode::kDesign ? "design" : "haar"},
              {"seed", g.spec.seed},
              {"count", g.size()},
              {"d", g.d},
              {"n", g.n},
              {"vectors", to_json(g.points)},
              {"weights", weights},
              {"residual", g.residual},
              {"residual_exact", g.residual_exact}};
}

MeasureGrid grid_from_json(const Json& j) {
  MeasureGrid g;
  auto mode = field<std::string>(j, "mode");
  if (mode == "design") {
    g.spec.mode = GridMode::kDesign;
  } else if (mode == "haar") {
    g.spec.mode = GridMode::kHaar;
  } else {
    throw ConfigError("unknown grid mode '" + mode + "'");
  }
  g.spec.seed = field<std::uint64_t>(j, "seed");
  g.d = field<int>(j, "d");
  g.n = field<int>(j, "n");
  g.points = matrix_from_json(field<Json>(j, "vectors"));
  auto w = field<std::vector<double>>(j, "weights");
  if (static_cast<Index>(w.size()) != g.points.cols() || g.points.rows() != g.d)
    throw ConfigError("grid vectors and weights disagree");
  g.spec.count = static_cast<int>(w.size());
  g.weights = Eigen::Map<RealVector>(w.data(), w.size());
  g.residual = field<double>(j, "residual");
  g.residual_exact = j.value("residual_exact", true);
  return g;
}

Json to_json(const LoccProvenance& p) {
  return Json{{"epsilon", p.epsilon},
              {"delta", p.delta},
              {"repaired_count", p.repaired_count},
              {"fallback_count", p.fallback_count},
              {"grid_size", p.grid_size},
              {"grid_residual", p.grid_residual},
              {"grid_residual_exact", p.grid_residual_exact},
              {"grid_spec", p.grid_spec},
              {"slack_mass", p.slack_mass},
              {"povm_scale", p.povm_scale},
              {"d_eff", p.d_eff},
              {"purified", p.purified}};
}

Json to_json(const LoccProtocol& p) {
  Json povm = Json::array(), channels = Json::array();
  for (const auto& m : p.povm) povm.push_back(to_json(m));
  for (const auto& c : p.channels) channels.push_back(to_json(c));
  Json fallback = Json::array();
  for (bool b : p.fallback) fallback.push_back(b);
  return Json{{"povm", povm},
              {"channels", channels},
              {"fallback", fallback},
              {"provenance", to_json(p.provenance)}};
}

LoccProtocol locc_from_json(const Json& j) {
  LoccProtocol p;
  for (const auto& m : field<Json>(j, "povm")) p.povm.push_back(matrix_from_json(m));
  for (const auto& c : field<Json>(j, "channels"))
    p.channels.push_back(choi_from_json(c));
  if (p.povm.empty() || p.povm.size() != p.channels.size())
    throw ConfigError("povm and channels differ in length");
  p.fallback = j.value("fallback", std::vector<bool>(p.povm.size(), false));
  if (j.contains("provenance")) {
    const Json& v = j.at("provenance");
    auto& pr = p.provenance;
    pr.epsilon = v.value("epsilon", 0.0);
    pr.delta = v.value("delta", 0.0);
    pr.repaired_count = v.value("repaired_count", 0);
    pr.fallback_count = v.value("fallback_count", 0);
    pr.grid_size = v.value("grid_size", 0);
    pr.grid_residual = v.value("grid_residual", 0.0);
    pr.grid_residual_exact = v.value("grid_residual_exact", true);
    pr.grid_spec = v.value("grid_spec", std::string());
    pr.slack_mass = v.value("slack_mass", 0.0);
    pr.povm_scale = v.value("povm_scale", 1.0);
    pr.d_eff = v.value("d_eff", 0);
    pr.purified = v.value("purified", false);
  }
  return p;
}

Json to_json(const ClassicalProtocol& p) {
  return Json{{"nx", p.nx}, {"ny", p.ny}, {"na", p.na}, {"n", p.n},
              {"probs", p.probs}};
}

ClassicalProtocol classical_from_json(const Json& j) {
  ClassicalProtocol p;
  try {
    p = ClassicalProtocol::zeros(field<int>(j, "nx"), field<int>(j, "ny"),
                                 field<int>(j, "na"), field<int>(j, "n"));
  } catch (const Error& e) {
    throw ConfigError(std::string("protocol: ") + e.what());
  }
  auto probs = field<std::vector<double>>(j, "probs");
  if (probs.size() != p.probs.size())
    throw ConfigError("probs has the wrong length");
  p.probs = std::move(probs);
  try {
    p.validate(1e-12);
  } catch (const Error& e) {
    throw ConfigError(std::string("protocol: ") + e.what());
  }
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace qinductive
