// Copyright 2026 The qiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qiv/povm.hpp"

#include <algorithm>
#include <set>

namespace qiv {

Povm Povm::validate(int input_dim, std::vector<Element> elements) {
  if (input_dim < 1 || input_dim > kDimCap) {
    fail(ErrorCode::BadArgument, "POVM input dimension out of range");
  }
  if (elements.empty()) {
    fail(ErrorCode::BadArgument, "POVM must have at least one element");
  }
  std::set<std::string> seen;
  CMat sum = CMat::Zero(input_dim, input_dim);
  for (const auto& [label, e] : elements) {
    if (!seen.insert(label).second) {
      fail(ErrorCode::BadArgument, "duplicate POVM label '" + label + "'");
    }
    if (e.rows() != input_dim || e.cols() != input_dim) {
      fail(ErrorCode::DimMismatch,
           "POVM element '" + label + "' has the wrong shape");
    }
    if (!all_finite(e)) {
      fail(ErrorCode::NonFinite, "POVM element '" + label + "' is not finite");
    }
    const double scale = std::max(1.0, max_abs(e));
    if (hermiticity_gap(e) > kHermitianTol * scale) {
      fail(ErrorCode::NotHermitian,
           "POVM element '" + label + "' is not Hermitian");
    }
    if (min_eigenvalue(e) < -kPsdTol) {
      fail(ErrorCode::NotPositive,
           "POVM element '" + label + "' is not positive semidefinite");
    }
    sum += e;
  }
  sum -= CMat::Identity(input_dim, input_dim);
  const double deviation = max_abs(sum);
  if (deviation > kIdentityTol) {
    fail(ErrorCode::PovmSum, "POVM elements sum to identity with deviation " +
                                 std::to_string(deviation) +
                                 " exceeding 1e-9");
  }
  return Povm(input_dim, std::move(elements));
}

}  // namespace qiv
