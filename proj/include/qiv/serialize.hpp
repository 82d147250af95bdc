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

#ifndef QIV_SERIALIZE_HPP
#define QIV_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "qiv/dilation.hpp"
#include "qiv/intervention.hpp"
#include "qiv/lindblad.hpp"
#include "qiv/povm.hpp"
#include "qiv/states.hpp"

namespace qiv {

using json = nlohmann::json;

/// Matrices serialize as {"rows", "cols", "entries": [[re, im], ...]} in
/// row-major order; doubles round-trip bit-exactly through the shortest
/// decimal representation.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

json density_to_json(const DensityMatrix& rho);    // {"matrix": ...}
DensityMatrix density_from_json(const json& j);

json pure_to_json(const PureState& psi);           // {"amplitudes": ...}
PureState pure_from_json(const json& j);

/// State files hold either a pure state or a density matrix.
DensityMatrix state_from_json(const json& j);
bool state_json_is_pure(const json& j);

json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j);

json intervention_to_json(const Intervention& k);
/// enforce_completeness=false defers the completeness invariant (shape and
/// finiteness are still checked) so refinement candidates can be loaded.
Intervention intervention_from_json(const json& j,
                                    bool enforce_completeness = true);

json adaptive_to_json(const AdaptiveIntervention& a);
AdaptiveIntervention adaptive_from_json(const json& j,
                                        bool enforce_completeness = true);

json dilation_to_json(const Dilation& d);
Dilation dilation_from_json(const json& j);

json composite_to_json(const CompositeState& c);
CompositeState composite_from_json(const json& j);

json generator_to_json(const LindbladGenerator& g);
LindbladGenerator generator_from_json(const json& j);

enum class FileKind {
  Unknown,
  PureState,
  DensityState,
  Povm,
  Intervention,
  Adaptive,
  Dilation,
  Composite,
  Generator,
  Scenario,
};

const char* file_kind_name(FileKind kind);
FileKind detect_file_kind(const json& j);

/// Parses text (Parse error on malformed JSON), detects the kind, and runs
/// the kind's full validation. Returns the detected kind.
FileKind validate_text(const std::string& text);

json parse_text(const std::string& text);

}  // namespace qiv

#endif  // QIV_SERIALIZE_HPP
