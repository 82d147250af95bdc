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

#ifndef QIV_DECOHERENCE_HPP
#define QIV_DECOHERENCE_HPP

#include <vector>

#include "qiv/dilation.hpp"
#include "qiv/matrix.hpp"
#include "qiv/rng.hpp"
#include "qiv/states.hpp"

namespace qiv {

enum class EnvMode { Pure, Mixed };

/// Uncontrolled environment coupled to the apparatus: each outcome subspace
/// mu drives its own Haar-random evolution of an N-dimensional environment.
/// Pure mode starts the environment in one basis state; mixed mode in a
/// diagonal mixture (uniform 1/N unless weights are supplied).
struct EnvironmentModel {
  int n_outcomes = 0;
  int env_dim = 0;
  EnvMode mode = EnvMode::Pure;
  std::vector<double> weights;  // empty = uniform (mixed mode only)

  static EnvironmentModel pure(int n_outcomes, int env_dim);
  static EnvironmentModel mixed(int n_outcomes, int env_dim,
                                std::vector<double> weights = {});
};

/// G_{mu nu} = sum_omega p_omega <row_omega(B_nu), row_omega(B_mu)>;
/// Hermitian with unit diagonal, and positive semidefinite (it is a Gram
/// matrix of weighted row stacks).
struct OverlapMatrix {
  CMat g;
};

/// Definitional route: materializes one Haar unitary per outcome and
/// contracts rows. Cost grows as env_dim^3; prefer the sampling routes
/// inside scaling_scan / decohered_state for large environments.
OverlapMatrix environment_overlaps(const EnvironmentModel& model,
                                   RngStream& stream);

/// Same contraction from caller-supplied evolution matrices (must be
/// unitary within 1e-10). Forcing equal matrices reproduces the
/// no-decoherence limit G = all-ones.
OverlapMatrix overlap_from_unitaries(const std::vector<CMat>& evolutions,
                                     const EnvironmentModel& model);

struct ScanRow {
  int env_dim = 0;
  double rms_offdiag = 0.0;
  double stderr_rms = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double slope = 0.0;         // least-squares d log(rms) / d log(N)
  double slope_stderr = 0.0;  // propagated from per-row standard errors
};

/// Off-diagonal overlap magnitude versus environment dimension for a
/// two-outcome model, with a log-log slope fit. Draws |G_01| from the exact
/// distribution of the model without materializing the unitaries: pure mode
/// contracts two Haar rows (unit vectors); mixed mode with uniform weights
/// uses Tr(Haar)/N sampled through a Verblunsky-coefficient CMV matrix.
ScanResult scaling_scan(const std::vector<int>& env_dims, int trials,
                        EnvMode mode, const RngStream& stream,
                        int workers = 0);

struct DecoheredState {
  DensityMatrix exact_reduced;
  DensityMatrix ideal_mixture;
  double trace_distance = 0.0;
};

/// Couples a premeasured composite state to the environment model and
/// traces the environment out: the exact reduced state, the idealized
/// block-diagonal mixture, and the trace distance between them.
DecoheredState decohered_state(const CompositeState& psi1,
                               const EnvironmentModel& model,
                               RngStream& stream);

/// As above but with a fixed overlap matrix (test hook for forced
/// environments).
DecoheredState decohered_state_with_overlaps(const CompositeState& psi1,
                                             const OverlapMatrix& overlaps);

namespace detail {

/// Verblunsky coefficients distributed so that the induced CMV matrix has
/// Haar-unitary eigenvalue statistics.
std::vector<cplx> sample_verblunsky(int env_dim, RngStream& rng);

/// Dense CMV matrix for the given coefficients (small-dimension checks).
CMat cmv_matrix(const std::vector<cplx>& alphas);

/// Trace of a Haar-distributed unitary, drawn in O(N) via the CMV diagonal.
cplx sample_haar_trace(int env_dim, RngStream& rng);

/// Haar-random unit vector.
CVec random_unit_vector(int dim, RngStream& rng);

}  // namespace detail

}  // namespace qiv

#endif  // QIV_DECOHERENCE_HPP
