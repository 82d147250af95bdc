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

#include "qiv/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qiv {
namespace {

constexpr double kStepDeviationCap = 1e-6;

CMat rhs_raw(const LindbladGenerator& g, const CMat& rho) {
  const CMat& h0 = g.h0();
  CMat out = cplx(0.0, 1.0) * (rho * h0 - h0 * rho);
  for (const CMat& v : g.jump_ops()) {
    out += v * rho * v.adjoint();
  }
  const CMat& weight = g.dissipator_weight();
  out -= 0.5 * (rho * weight + weight * rho);
  return out;
}

CMat rk4_step(const LindbladGenerator& g, const CMat& rho, double h) {
  const CMat k1 = rhs_raw(g, rho);
  const CMat k2 = rhs_raw(g, CMat(rho + 0.5 * h * k1));
  const CMat k3 = rhs_raw(g, CMat(rho + 0.5 * h * k2));
  const CMat k4 = rhs_raw(g, CMat(rho + h * k3));
  CMat next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  // The generator maps Hermitian to Hermitian; discard rounding drift.
  return hermitian_part(next);
}

void check_time_step(double t, double dt) {
  if (!(dt > 0.0)) {
    fail(ErrorCode::NegativeTime,
         "time step must be positive: the evolution only runs forward");
  }
  if (!(t > 0.0)) {
    fail(ErrorCode::NegativeTime, "integration time must be positive");
  }
  if (dt > t * (1.0 + 1e-12)) {
    fail(ErrorCode::BadArgument, "time step exceeds the integration time");
  }
}

}  // namespace

LindbladGenerator LindbladGenerator::validate(CMat h0,
                                              std::vector<CMat> jump_ops) {
  if (h0.rows() != h0.cols() || h0.rows() < 1) {
    fail(ErrorCode::DimMismatch, "H0 must be square");
  }
  if (h0.rows() > kDimCap) {
    fail(ErrorCode::DimensionCap, "generator dimension exceeds cap");
  }
  if (!all_finite(h0)) {
    fail(ErrorCode::NonFinite, "H0 has non-finite entries");
  }
  if (hermiticity_gap(h0) > kHermitianTol * std::max(1.0, max_abs(h0))) {
    fail(ErrorCode::NotHermitian, "H0 must be Hermitian");
  }
  CMat weight = CMat::Zero(h0.rows(), h0.cols());
  for (const CMat& v : jump_ops) {
    if (v.rows() != h0.rows() || v.cols() != h0.cols()) {
      fail(ErrorCode::DimMismatch,
           "jump operators must match the generator dimension");
    }
    if (!all_finite(v)) {
      fail(ErrorCode::NonFinite, "jump operator has non-finite entries");
    }
    weight += v.adjoint() * v;
  }
  return LindbladGenerator(std::move(h0), std::move(jump_ops),
                           std::move(weight));
}

CMat lindblad_rhs(const LindbladGenerator& g, const DensityMatrix& rho) {
  if (rho.dim() != g.dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension does not match the generator");
  }
  return rhs_raw(g, rho.matrix());
}

std::vector<SeriesPoint> integrate_series(const LindbladGenerator& g,
                                          const DensityMatrix& rho0, double t,
                                          double dt) {
  check_time_step(t, dt);
  if (rho0.dim() != g.dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension does not match the generator");
  }
  std::vector<SeriesPoint> series;
  const auto n_full = static_cast<long>(std::floor(t / dt + 1e-12));
  series.reserve(n_full + 2);
  series.push_back(SeriesPoint{0.0, rho0.matrix()});
  CMat rho = rho0.matrix();
  double now = 0.0;
  for (long step = 0; step < n_full; ++step) {
    rho = rk4_step(g, rho, dt);
    now = dt * static_cast<double>(step + 1);
    series.push_back(SeriesPoint{now, rho});
  }
  const double remainder = t - now;
  if (remainder > 1e-12 * std::max(1.0, t)) {
    rho = rk4_step(g, rho, remainder);
    series.push_back(SeriesPoint{t, rho});
  }
  return series;
}

DensityMatrix integrate(const LindbladGenerator& g, const DensityMatrix& rho0,
                        double t, double dt) {
  const std::vector<SeriesPoint> series = integrate_series(g, rho0, t, dt);
  const CMat& rho = series.back().rho;
  const double drift = std::abs(rho.trace().real() - rho0.trace_norm());
  if (drift > 1e-8) {
    fail(ErrorCode::ContractBreach,
         "integration changed the trace by " + std::to_string(drift));
  }
  const double min_eig = min_eigenvalue(rho);
  if (min_eig < -1e-7) {
    fail(ErrorCode::PositivityLoss,
         "integration lost positivity: minimum eigenvalue " +
             std::to_string(min_eig));
  }
  return DensityMatrix::evolved(rho);
}

Intervention kraus_step(const LindbladGenerator& g, double delta_t) {
  if (!(delta_t > 0.0)) {
    fail(ErrorCode::NegativeTime, "coarse step must be positive");
  }
  const int dim = g.dim();
  const CMat identity = CMat::Identity(dim, dim);
  const CMat slow_first_order = identity -
                                cplx(0.0, 1.0) * delta_t * g.h0() -
                                0.5 * delta_t * g.dissipator_weight();

  // Deviation of the first-order family from exact normalization; O(dt^2).
  CMat closure = slow_first_order.adjoint() * slow_first_order +
                 delta_t * g.dissipator_weight() - identity;
  const double deviation = max_abs(closure);
  if (deviation > kStepDeviationCap) {
    fail(ErrorCode::StepTooLarge,
         "coarse step completeness deviation " + std::to_string(deviation) +
             " exceeds 1e-6 before correction; reduce delta_t");
  }

  const CMat remainder_sq = identity - delta_t * g.dissipator_weight();
  if (min_eigenvalue(remainder_sq) < 0.0) {
    fail(ErrorCode::StepTooLarge,
         "coarse step leaves no positive slow component; reduce delta_t");
  }
  // Exact normalization: keep the polar phase of the first-order slow
  // matrix, replace its modulus by the PSD root completing the family.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      Eigen::MatrixXcd(slow_first_order),
      Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CMat polar_phase = CMat(svd.matrixU() * svd.matrixV().adjoint());
  const CMat slow = polar_phase * psd_sqrt(remainder_sq);

  std::vector<Outcome> outcomes;
  outcomes.push_back(Outcome{"slow", dim, {slow}});
  const double root_dt = std::sqrt(delta_t);
  for (std::size_t j = 0; j < g.jump_ops().size(); ++j) {
    outcomes.push_back(Outcome{"jump_" + std::to_string(j), dim,
                               {CMat(root_dt * g.jump_ops()[j])}});
  }
  return Intervention::validate(dim, std::move(outcomes));
}

ConvergenceResult compare_limit(const LindbladGenerator& g,
                                const DensityMatrix& rho0, double t,
                                const std::vector<double>& delta_ts) {
  if (delta_ts.empty()) {
    fail(ErrorCode::BadArgument, "at least one coarse step size is required");
  }
  ConvergenceResult result;
  result.rows.reserve(delta_ts.size());
  for (const double delta_t : delta_ts) {
    check_time_step(t, delta_t);
    const auto n_steps =
        std::max<long>(1, static_cast<long>(std::llround(t / delta_t)));
    const double horizon = delta_t * static_cast<double>(n_steps);
    const Intervention step = kraus_step(g, delta_t);
    DensityMatrix rho = rho0;
    for (long s = 0; s < n_steps; ++s) {
      rho = apply_nonselective(step, rho);
    }
    // Reference on the same horizon, resolved well below the coarse step.
    const double dt_fine = std::min(1e-3, delta_t / 8.0);
    const DensityMatrix reference = integrate(g, rho0, horizon, dt_fine);
    result.rows.push_back(ConvergenceRow{
        delta_t, trace_distance(rho.matrix(), reference.matrix())});
  }

  double x_mean = 0.0;
  double y_mean = 0.0;
  for (const ConvergenceRow& row : result.rows) {
    x_mean += std::log(row.delta_t);
    y_mean += std::log(std::max(row.distance, 1e-16));
  }
  const auto n = static_cast<double>(result.rows.size());
  x_mean /= n;
  y_mean /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const ConvergenceRow& row : result.rows) {
    const double dx = std::log(row.delta_t) - x_mean;
    const double dy = std::log(std::max(row.distance, 1e-16)) - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  result.fitted_order = sxx > 0.0 ? sxy / sxx : 0.0;
  return result;
}

}  // namespace qiv
