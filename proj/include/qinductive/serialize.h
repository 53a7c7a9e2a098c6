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


#ifndef QINDUCTIVE_SERIALIZE_H_
#define QINDUCTIVE_SERIALIZE_H_

#include <string>

#include "json.hpp"

#include "qinductive/channels.h"
#include "qinductive/classical.h"
#include "qinductive/definetti.h"
#include "qinductive/locc.h"
#include "qinductive/tensor_core.h"

namespace qinductive {

using Json = nlohmann::json;

// Complex matrices are {"rows", "cols", "re", "im"} with row-major nested
// arrays. All readers throw ConfigError on schema violations.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"labels", "dims", "re", "im"}
Json to_json(const Operator& op);
Operator operator_from_json(const Json& j);

// Operator fields plus {"d_A", "d_X", "d_Y", "n"}.
Json to_json(const ChoiChannel& q);
ChoiChannel choi_from_json(const Json& j);

// {"mode", "seed", "count", "d", "n", "vectors", "weights", "residual",
// "residual_exact"}
Json to_json(const MeasureGrid& g);
MeasureGrid grid_from_json(const Json& j);

Json to_json(const LoccProvenance& p);
// {"povm", "channels", "fallback", "provenance"}
Json to_json(const LoccProtocol& p);
LoccProtocol locc_from_json(const Json& j);

// {"nx", "ny", "na", "n", "probs"}
Json to_json(const ClassicalProtocol& p);
ClassicalProtocol classical_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qinductive

#endif  // QINDUCTIVE_SERIALIZE_H_
