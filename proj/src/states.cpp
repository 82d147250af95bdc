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

#include "qiv/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qiv {
namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kZeroProbability = 1e-15;

}  // namespace

DensityMatrix DensityMatrix::checked(const CMat& m, double min_trace,
                                     double psd_tol) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::DimMismatch, "density matrix must be square");
  }
  if (m.rows() < 1) {
    fail(ErrorCode::BadArgument, "density matrix must have dimension >= 1");
  }
  if (m.rows() > kDimCap) {
    fail(ErrorCode::DimensionCap, "density matrix dimension exceeds cap");
  }
  if (!all_finite(m)) {
    fail(ErrorCode::NonFinite, "density matrix has non-finite entries");
  }
  const double scale = std::max(1.0, max_abs(m));
  const double gap = hermiticity_gap(m);
  if (gap > kHermitianTol * scale) {
    fail(ErrorCode::NotHermitian, "density matrix Hermiticity deviation " +
                                      std::to_string(gap) + " exceeds tolerance");
  }
  const double min_eig = min_eigenvalue(m);
  if (min_eig < -psd_tol) {
    fail(ErrorCode::NotPositive, "density matrix minimum eigenvalue " +
                                     std::to_string(min_eig) +
                                     " below tolerance");
  }
  const cplx trace = m.trace();
  if (std::abs(trace.imag()) > kTraceTol) {
    fail(ErrorCode::BadTrace, "density matrix trace has imaginary part " +
                                  std::to_string(trace.imag()));
  }
  if (trace.real() < min_trace || trace.real() > 1.0 + kTraceTol) {
    fail(ErrorCode::BadTrace,
         "density matrix trace " + std::to_string(trace.real()) +
             " outside allowed range");
  }
  const double trace_norm = std::clamp(trace.real(), 0.0, 1.0);
  return DensityMatrix(m, trace_norm);
}

DensityMatrix DensityMatrix::validate(const CMat& m) {
  // Strictly positive trace: a normalized or conditional-with-probability
  // state. Zero-trace objects only arise as internal map outputs.
  DensityMatrix out = checked(m, kTraceTol, kPsdTol);
  if (out.trace_norm() <= 0.0) {
    fail(ErrorCode::BadTrace, "density matrix trace must be positive");
  }
  return out;
}

DensityMatrix DensityMatrix::conditional(const CMat& m) {
  return checked(m, -kTraceTol, kPsdTol);
}

DensityMatrix DensityMatrix::evolved(const CMat& m) {
  return checked(m, kTraceTol, 1e-7);
}

DensityMatrix DensityMatrix::normalized() const {
  if (trace_norm_ < kZeroProbability) {
    fail(ErrorCode::ZeroProbabilityBranch,
         "cannot normalize a state with trace below 1e-15");
  }
  CMat scaled = matrix_ / trace_norm_;
  return DensityMatrix(std::move(scaled), 1.0);
}

DensityMatrix validate_density(const CMat& m) {
  return DensityMatrix::validate(m);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  CMat reduced = partial_trace(rho.matrix(), dims, keep);
  const double drift =
      std::abs(reduced.trace().real() - rho.trace_norm());
  if (drift > 1e-10) {
    fail(ErrorCode::ContractBreach,
         "partial trace changed the state trace by " + std::to_string(drift));
  }
  return DensityMatrix::conditional(reduced);
}

PureState PureState::validate(const CVec& amplitudes) {
  if (amplitudes.size() < 1) {
    fail(ErrorCode::BadArgument, "pure state must have dimension >= 1");
  }
  if (amplitudes.size() > kDimCap) {
    fail(ErrorCode::DimensionCap, "pure state dimension exceeds cap");
  }
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (!std::isfinite(amplitudes(i).real()) ||
        !std::isfinite(amplitudes(i).imag())) {
      fail(ErrorCode::NonFinite, "pure state has non-finite amplitudes");
    }
  }
  const double norm_sq = amplitudes.squaredNorm();
  if (std::abs(norm_sq - 1.0) > kUnitNormTol) {
    fail(ErrorCode::BadNorm, "pure state squared norm " +
                                 std::to_string(norm_sq) +
                                 " deviates from 1 beyond 1e-12");
  }
  return PureState(amplitudes);
}

DensityMatrix PureState::to_density() const {
  CMat projector = amplitudes_ * amplitudes_.adjoint();
  return DensityMatrix::validate(projector);
}

}  // namespace qiv
