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

#ifndef QINDUCTIVE_SRC_KERNELS_INTERNAL_H_
#define QINDUCTIVE_SRC_KERNELS_INTERNAL_H_

#include <vector>

#include "qinductive/kernels.h"

namespace qinductive::kernels::internal {

void split_offsets(const std::vector<int>& dims, const std::vector<bool>& mask,
                   std::vector<long long>* sel_part,
                   std::vector<long long>* uns_part);
void check_square(const Matrix& m, const std::vector<int>& dims);
int site_dim(Eigen::Index total, Eigen::Index d_left, int n, Eigen::Index d);

}  // namespace qinductive::kernels::internal

#endif  // QINDUCTIVE_SRC_KERNELS_INTERNAL_H_
