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

#ifndef QIV_INTERVENTION_HPP
#define QIV_INTERVENTION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qiv/povm.hpp"
#include "qiv/rng.hpp"
#include "qiv/states.hpp"

namespace qiv {

/// Composed outcome labels read chronologically right to left:
/// later outcome, separator, earlier outcome.
inline constexpr char kComposedLabelSeparator = '|';
/// Outcome labels of a spatial tensor pairing: subsystem-1 label,
/// separator, subsystem-2 label.
inline constexpr char kTensorLabelSeparator = '&';

/// One outcome branch: every Kraus matrix maps the input space into the
/// same output space of dimension output_dim.
struct Outcome {
  std::string label;
  int output_dim = 0;
  std::vector<CMat> kraus;
};

/// Completely positive map with a classical outcome: for each outcome mu,
/// rho -> sum_m A_mu_m rho A_mu_m^dag, with output dimension allowed to
/// depend on mu. Completeness sum_{mu,m} A^dag A = identity is a type
/// invariant for validate(); shape_only() defers it so that candidate
/// refinements can be inspected before being declared complete.
class Intervention {
 public:
  static Intervention validate(int input_dim, std::vector<Outcome> outcomes);
  static Intervention shape_only(int input_dim, std::vector<Outcome> outcomes);

  int input_dim() const { return input_dim_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  int n_outcomes() const { return static_cast<int>(outcomes_.size()); }
  const Outcome& outcome(int index) const { return outcomes_[index]; }
  const Outcome& find(std::string_view label) const;
  int index_of(std::string_view label) const;  // -1 when absent

  /// E_mu = sum_m A^dag A, cached at construction.
  const CMat& povm_element(int index) const { return povm_elements_[index]; }

  /// max | sum_{mu,m} A^dag A - identity |.
  double completeness_deviation() const { return completeness_deviation_; }
  bool is_complete() const {
    return completeness_deviation_ <= kIdentityTol;
  }

 private:
  Intervention(int input_dim, std::vector<Outcome> outcomes,
               std::vector<CMat> povm_elements, double deviation)
      : input_dim_(input_dim),
        outcomes_(std::move(outcomes)),
        povm_elements_(std::move(povm_elements)),
        completeness_deviation_(deviation) {}

  int input_dim_;
  std::vector<Outcome> outcomes_;
  std::vector<CMat> povm_elements_;
  double completeness_deviation_;
};

/// Map from the previous outcome label to the intervention applied next.
/// Branch interventions may be loaded shape-only; operations that require
/// completeness check it per branch.
class AdaptiveIntervention {
 public:
  using Branch = std::pair<std::string, Intervention>;

  static AdaptiveIntervention make(std::vector<Branch> branches);

  const std::vector<Branch>& branches() const { return branches_; }
  bool has(std::string_view label) const;
  const Intervention& branch(std::string_view label) const;

 private:
  explicit AdaptiveIntervention(std::vector<Branch> branches)
      : branches_(std::move(branches)) {}

  std::vector<Branch> branches_;
};

/// Chronological list of outcomes with its probability.
struct Record {
  std::vector<std::string> outcomes;
  double probability = 0.0;
};

struct RecordStats {
  Record record;            // probability = exact chained value
  double frequency = 0.0;   // empirical
};

struct RefinementBranchReport {
  std::string label;
  double completeness_deviation = 0.0;
  bool complete = false;
  /// max | sum_nu E_nu_mu - E_mu |, meaningful when complete.
  double povm_sum_deviation = 0.0;
};

/// rho'_mu = sum_m A_mu_m rho A_mu_m^dag; unnormalized, trace = outcome
/// probability. Output lives in the outcome's target space.
DensityMatrix apply_selective(const Intervention& k, const DensityMatrix& rho,
                              std::string_view mu);

/// p_mu = Tr(E_mu rho), clamped to [0, 1]; requires a normalized state and
/// checks that the probabilities sum to 1 within 1e-9.
std::vector<std::pair<std::string, double>> outcome_probabilities(
    const Intervention& k, const DensityMatrix& rho);

/// POVM induced by the intervention.
Povm povm_of(const Intervention& k);

/// rho' = sum_{mu,m} A rho A^dag over all outcomes; requires homogeneous
/// output dimensions and preserves the trace within 1e-10.
DensityMatrix apply_nonselective(const Intervention& k,
                                 const DensityMatrix& rho);

/// Consecutive interventions: `first`, then the branch of `later` selected
/// by the first outcome. Composed Kraus C = B A; labels "nu|mu".
Intervention compose(const AdaptiveIntervention& later,
                     const Intervention& first);

/// Per-branch completeness report plus the POVM refinement identity
/// sum_nu E_nu_mu = E_mu.
std::vector<RefinementBranchReport> check_refinement(
    const AdaptiveIntervention& later, const Intervention& first);

/// Monte-Carlo measurement records over a chain of adaptive stages (the
/// first keyed by a single root label). Every possible record is returned
/// with its exact chained probability and its empirical frequency.
/// Deterministic for a given stream regardless of worker count.
std::vector<RecordStats> sample_records(
    const std::vector<AdaptiveIntervention>& stages, const DensityMatrix& rho0,
    std::uint64_t shots, const RngStream& stream, int workers = 0);

}  // namespace qiv

#endif  // QIV_INTERVENTION_HPP
