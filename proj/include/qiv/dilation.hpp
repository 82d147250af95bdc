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

#ifndef QIV_DILATION_HPP
#define QIV_DILATION_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qiv/intervention.hpp"
#include "qiv/povm.hpp"
#include "qiv/states.hpp"

namespace qiv {

/// Identity of one column of the premeasurement isometry: outcome subspace
/// mu, retained index sigma, discarded index m.
struct DilationColumn {
  std::string mu;
  int sigma = 0;
  int m = 0;
};

/// Premeasurement isometry U with input_dim rows, one column per
/// (mu, sigma, m) in lexicographic order (mu in declaration order). Row
/// orthonormality U U^dag = identity is the completeness of the underlying
/// Kraus family.
class Dilation {
 public:
  static Dilation build(int input_dim, std::vector<DilationColumn> columns,
                        CMat isometry);

  int input_dim() const { return input_dim_; }
  const std::vector<DilationColumn>& columns() const { return columns_; }
  const CMat& isometry() const { return isometry_; }
  int total_columns() const { return static_cast<int>(isometry_.cols()); }

 private:
  Dilation(int input_dim, std::vector<DilationColumn> columns, CMat isometry)
      : input_dim_(input_dim),
        columns_(std::move(columns)),
        isometry_(std::move(isometry)) {}

  int input_dim_;
  std::vector<DilationColumn> columns_;
  CMat isometry_;
};

/// System-apparatus state after premeasurement: one amplitude per dilation
/// column, unit norm.
class CompositeState {
 public:
  static CompositeState build(std::vector<DilationColumn> columns,
                              CVec amplitudes);

  const std::vector<DilationColumn>& columns() const { return columns_; }
  const CVec& amplitudes() const { return amplitudes_; }

  /// Outcome labels in first-appearance order.
  std::vector<std::string> block_labels() const;

  /// Squared norm of the mu block.
  double block_weight(std::string_view mu) const;

 private:
  CompositeState(std::vector<DilationColumn> columns, CVec amplitudes)
      : columns_(std::move(columns)), amplitudes_(std::move(amplitudes)) {}

  std::vector<DilationColumn> columns_;
  CVec amplitudes_;
};

/// Kraus family implementing a POVM: A_mu_m = S_mu_m sqrt(E_mu). Without
/// paddings the single S_mu is the identity, so A_mu = sqrt(E_mu). Supplied
/// paddings are per-element stacks S_mu_m (shared row count, input_dim
/// columns) with sum_m S^dag S = identity.
Intervention kraus_from_povm(
    const Povm& p,
    const std::optional<std::vector<std::vector<CMat>>>& paddings =
        std::nullopt);

/// U_{s,(mu sigma m)} = (A_mu_m)_{sigma s}; row orthonormality is checked
/// and is equivalent to the intervention's completeness.
Dilation isometry_from_kraus(const Intervention& k);

/// Square unitary whose first input_dim rows equal the dilation rows.
/// The remaining rows come from a deterministic sweep of standard basis
/// vectors (residuals below 1e-8 are skipped).
CMat complete_to_unitary(const Dilation& d);

/// Amplitudes c'_{mu sigma m} = sum_s c_s U_{s,(mu sigma m)}.
CompositeState premeasure(const Dilation& d, const PureState& psi0);

/// Drops the discarded indices m of the mu block: rho'_mu over sigma with
/// trace equal to the block weight. Equals apply_selective of the
/// originating intervention.
DensityMatrix discard(const CompositeState& c, std::string_view mu);

/// Independent interventions on two subsystems: labels "mu&nu", Kraus
/// A(1) (x) A(2); the POVM factorizes elementwise.
Intervention tensor_intervention(const Intervention& k1,
                                 const Intervention& k2,
                                 int dim_cap = kDimCap);

/// Second-party intervention chosen by the first party's outcome:
/// labels "nu|mu", Kraus A(1)_mu_m (x) A(2)_nu_mu_n. Iterating alternated
/// applications yields multi-round adaptive strategies.
Intervention adaptive_tensor(const Intervention& k1,
                             const AdaptiveIntervention& k2_by_outcome,
                             int dim_cap = kDimCap);

}  // namespace qiv

#endif  // QIV_DILATION_HPP
