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

#include "qiv/scenario.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "qiv/serialize.hpp"

namespace qiv {
namespace {

/// Outcome labels reachable after the given stage, with the output
/// dimension each label delivers to the next stage.
std::vector<std::pair<std::string, int>> reachable_outcomes(
    const AdaptiveIntervention& stage) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [key, k] : stage.branches()) {
    for (const Outcome& outcome : k.outcomes()) {
      const auto found =
          std::find_if(out.begin(), out.end(), [&](const auto& entry) {
            return entry.first == outcome.label;
          });
      if (found == out.end()) {
        out.emplace_back(outcome.label, outcome.output_dim);
      } else if (found->second != outcome.output_dim) {
        fail(ErrorCode::DimMismatch,
             "outcome '" + outcome.label +
                 "' reaches the next stage with conflicting dimensions");
      }
    }
  }
  return out;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("initial_state") || !j.contains("stages")) {
    fail(ErrorCode::Parse,
         "scenario must contain \"initial_state\" and \"stages\"");
  }
  Scenario scenario{j.value("name", std::string{}),
                    state_from_json(j.at("initial_state")),
                    {},
                    std::nullopt,
                    std::nullopt};
  if (j.contains("options")) {
    const nlohmann::json& options = j.at("options");
    if (options.contains("shots")) {
      scenario.shots = options.at("shots").get<std::uint64_t>();
    }
    if (options.contains("seed")) {
      scenario.seed = options.at("seed").get<std::uint64_t>();
    }
  }

  const nlohmann::json& stages = j.at("stages");
  if (!stages.is_array() || stages.empty()) {
    fail(ErrorCode::Parse, "scenario stages must be a nonempty array");
  }

  // Labels feeding each stage; the root stage is keyed by "".
  std::vector<std::pair<std::string, int>> incoming = {
      {"", scenario.initial_state.dim()}};
  bool first = true;
  for (const nlohmann::json& stage_json : stages) {
    AdaptiveIntervention stage = [&] {
      if (stage_json.contains("branches")) {
        return adaptive_from_json(stage_json);
      }
      // Plain intervention: applied for every incoming outcome.
      Intervention k = intervention_from_json(stage_json);
      std::vector<AdaptiveIntervention::Branch> branches;
      branches.reserve(incoming.size());
      for (const auto& [label, dim] : incoming) {
        branches.emplace_back(label, k);
      }
      return AdaptiveIntervention::make(std::move(branches));
    }();
    if (first) {
      // The root key of a single-branch first stage is arbitrary.
      if (stage.branches().size() != 1) {
        fail(ErrorCode::BadArgument,
             "the first stage must be keyed by a single root label");
      }
      const Intervention& k = stage.branches().front().second;
      if (k.input_dim() != scenario.initial_state.dim()) {
        fail(ErrorCode::DimMismatch,
             "the first stage does not match the initial state dimension");
      }
    } else {
      for (const auto& [label, dim] : incoming) {
        if (!stage.has(label)) {
          fail(ErrorCode::MissingBranch,
               "no branch for prior outcome '" + label + "'");
        }
        const Intervention& k = stage.branch(label);
        if (k.input_dim() != dim) {
          fail(ErrorCode::DimMismatch,
               "branch '" + label + "' expects dimension " +
                   std::to_string(k.input_dim()) + " but receives " +
                   std::to_string(dim));
        }
      }
    }
    incoming = reachable_outcomes(stage);
    scenario.stages.push_back(std::move(stage));
    first = false;
  }
  return scenario;
}

std::vector<RecordStats> run_scenario(const Scenario& scenario,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int workers) {
  return sample_records(scenario.stages, scenario.initial_state, shots,
                        RngStream(seed), workers);
}

}  // namespace qiv
