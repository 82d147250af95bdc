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

#ifndef QIV_LINDBLAD_HPP
#define QIV_LINDBLAD_HPP

#include <vector>

#include "qiv/intervention.hpp"
#include "qiv/matrix.hpp"
#include "qiv/states.hpp"

namespace qiv {

/// Markovian generator (hbar = 1): Hermitian slow Hamiltonian H0 plus jump
/// operators V_j carrying the fast environmental fluctuations.
class LindbladGenerator {
 public:
  static LindbladGenerator validate(CMat h0, std::vector<CMat> jump_ops);

  int dim() const { return static_cast<int>(h0_.rows()); }
  const CMat& h0() const { return h0_; }
  const std::vector<CMat>& jump_ops() const { return jump_ops_; }

  /// sum_j V^dag V, cached.
  const CMat& dissipator_weight() const { return dissipator_weight_; }

 private:
  LindbladGenerator(CMat h0, std::vector<CMat> jump_ops, CMat weight)
      : h0_(std::move(h0)),
        jump_ops_(std::move(jump_ops)),
        dissipator_weight_(std::move(weight)) {}

  CMat h0_;
  std::vector<CMat> jump_ops_;
  CMat dissipator_weight_;
};

/// drho/dt = i[rho, H0] + sum_j (V rho V^dag - 1/2 rho V^dag V
///                               - 1/2 V^dag V rho); Hermitian and traceless.
CMat lindblad_rhs(const LindbladGenerator& g, const DensityMatrix& rho);

/// Classical fixed-step RK4 up to time t (final partial step if t/dt is not
/// integral). Rejects dt <= 0: the semigroup only runs forward. The result
/// must keep its trace within 1e-8 and its minimum eigenvalue above -1e-7.
DensityMatrix integrate(const LindbladGenerator& g, const DensityMatrix& rho0,
                        double t, double dt);

struct SeriesPoint {
  double t = 0.0;
  CMat rho;
};

/// State after every step of integrate(), starting at t = 0.
std::vector<SeriesPoint> integrate_series(const LindbladGenerator& g,
                                          const DensityMatrix& rho0, double t,
                                          double dt);

/// One coarse time step as an intervention: outcome "slow" with
/// A0 = 1 - i H0 dt - 1/2 sum_j V^dag V dt and one outcome "jump_<j>" with
/// A_j = V_j sqrt(dt) per jump operator. A0 is replaced by the PSD square
/// root completing exact normalization (its polar phase is kept), so the
/// returned intervention validates exactly.
Intervention kraus_step(const LindbladGenerator& g, double delta_t);

struct ConvergenceRow {
  double delta_t = 0.0;
  double distance = 0.0;  // trace distance to the RK4 reference at time t
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;  // log-log slope of distance vs delta_t
};

/// Repeated non-selective kraus_step evolution versus the integrated
/// solution at time t, one row per coarse step size.
ConvergenceResult compare_limit(const LindbladGenerator& g,
                                const DensityMatrix& rho0, double t,
                                const std::vector<double>& delta_ts);

}  // namespace qiv

#endif  // QIV_LINDBLAD_HPP
