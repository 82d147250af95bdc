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

#ifndef QIV_SCENARIO_HPP
#define QIV_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qiv/intervention.hpp"
#include "qiv/states.hpp"

namespace qiv {

/// A sampling experiment: an initial state and a chain of stages. Stage
/// JSON entries are either plain interventions (applied whatever the prior
/// outcome was) or adaptive {"branches": ...} objects; plain entries are
/// expanded into one branch per possible prior outcome when loading.
struct Scenario {
  std::string name;
  DensityMatrix initial_state;
  std::vector<AdaptiveIntervention> stages;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
};

/// Loads and fully validates a scenario: every reachable branch must exist
/// and be dimension-compatible with the states feeding it.
Scenario scenario_from_json(const nlohmann::json& j);

std::vector<RecordStats> run_scenario(const Scenario& scenario,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int workers = 0);

}  // namespace qiv

#endif  // QIV_SCENARIO_HPP
