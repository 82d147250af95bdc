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

#ifndef QIV_STATES_HPP
#define QIV_STATES_HPP

#include <vector>

#include "qiv/matrix.hpp"

namespace qiv {

/// Hermitian positive-semidefinite matrix. The trace ("trace_norm") is 1 for
/// normalized states and equals the outcome probability for conditional
/// states, which are kept unnormalized. Immutable after construction.
class DensityMatrix {
 public:
  /// Strict validation for externally supplied states: Hermitian within
  /// 1e-9 * max(1, |rho|_max), min eigenvalue >= -1e-9, trace real and in
  /// (0, 1 + 1e-9].
  static DensityMatrix validate(const CMat& m);

  /// For conditional (unnormalized) results of completely positive maps:
  /// same Hermiticity/positivity checks, trace allowed down to zero.
  static DensityMatrix conditional(const CMat& m);

  /// For integrator output: positivity tolerance relaxed to -1e-7 to absorb
  /// discretization error.
  static DensityMatrix evolved(const CMat& m);

  const CMat& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  double trace_norm() const { return trace_norm_; }

  /// State divided by its trace. Throws ZeroProbabilityBranch below 1e-15.
  DensityMatrix normalized() const;

 private:
  DensityMatrix(CMat m, double trace_norm)
      : matrix_(std::move(m)), trace_norm_(trace_norm) {}

  static DensityMatrix checked(const CMat& m, double min_trace,
                               double psd_tol);

  CMat matrix_;
  double trace_norm_;
};

/// Spec-level entry point; identical to DensityMatrix::validate.
DensityMatrix validate_density(const CMat& m);

/// Partial trace over a tensor factorization of the state space; preserves
/// the trace and returns a state over the kept factors.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// Unit-norm complex amplitude vector.
class PureState {
 public:
  static PureState validate(const CVec& amplitudes);

  const CVec& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

  DensityMatrix to_density() const;

 private:
  explicit PureState(CVec amplitudes) : amplitudes_(std::move(amplitudes)) {}

  CVec amplitudes_;
};

}  // namespace qiv

#endif  // QIV_STATES_HPP
