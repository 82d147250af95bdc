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

#ifndef QIV_POVM_HPP
#define QIV_POVM_HPP

#include <string>
#include <utility>
#include <vector>

#include "qiv/matrix.hpp"

namespace qiv {

/// Labeled positive operators on the input space summing to the identity.
class Povm {
 public:
  using Element = std::pair<std::string, CMat>;

  static Povm validate(int input_dim, std::vector<Element> elements);

  int input_dim() const { return input_dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<Element>& elements() const { return elements_; }
  const CMat& element(int index) const { return elements_[index].second; }
  const std::string& label(int index) const { return elements_[index].first; }

 private:
  Povm(int input_dim, std::vector<Element> elements)
      : input_dim_(input_dim), elements_(std::move(elements)) {}

  int input_dim_;
  std::vector<Element> elements_;
};

}  // namespace qiv

#endif  // QIV_POVM_HPP
