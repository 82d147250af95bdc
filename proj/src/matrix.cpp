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

#include "qiv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qiv/rng.hpp"

namespace qiv {

bool all_finite(const CMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double max_abs(const CMat& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

double hermiticity_gap(const CMat& m) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::DimMismatch, "hermiticity check requires a square matrix");
  }
  double gap = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      gap = std::max(gap, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return gap;
}

CMat hermitian_part(const CMat& m) {
  return 0.5 * (m + m.adjoint().eval());
}

double min_eigenvalue(const CMat& m) {
  const Eigen::MatrixXcd h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double unitarity_gap(const CMat& u) {
  CMat product = u * u.adjoint();
  product -= CMat::Identity(u.rows(), u.rows());
  return max_abs(product);
}

CMat tensor(const CMat& a, const CMat& b, int dim_cap) {
  const long rows = static_cast<long>(a.rows()) * b.rows();
  const long cols = static_cast<long>(a.cols()) * b.cols();
  if (rows > dim_cap || cols > dim_cap) {
    fail(ErrorCode::DimensionCap,
         "tensor product dimension " + std::to_string(std::max(rows, cols)) +
             " exceeds cap " + std::to_string(dim_cap));
  }
  if (!all_finite(a) || !all_finite(b)) {
    fail(ErrorCode::NonFinite, "tensor operands must be finite");
  }
  CMat out(rows, cols);
  for (Eigen::Index i1 = 0; i1 < a.rows(); ++i1) {
    for (Eigen::Index j1 = 0; j1 < a.cols(); ++j1) {
      out.block(i1 * b.rows(), j1 * b.cols(), b.rows(), b.cols()) =
          a(i1, j1) * b;
    }
  }
  return out;
}

CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::DimMismatch, "partial_trace requires a square matrix");
  }
  long total = 1;
  for (int d : dims) {
    if (d < 1) fail(ErrorCode::BadArgument, "factor dimensions must be >= 1");
    total *= d;
  }
  if (total != m.rows()) {
    fail(ErrorCode::DimMismatch,
         "product of factor dimensions " + std::to_string(total) +
             " does not match matrix dimension " + std::to_string(m.rows()));
  }
  if (keep.empty()) {
    fail(ErrorCode::BadArgument, "keep set must be nonempty");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= static_cast<int>(dims.size())) {
      fail(ErrorCode::BadArgument, "keep index out of range");
    }
    if (k > 0 && keep[k] <= keep[k - 1]) {
      fail(ErrorCode::BadArgument, "keep indices must be strictly increasing");
    }
  }

  const int n_factors = static_cast<int>(dims.size());
  std::vector<long> stride(n_factors, 1);
  for (int i = n_factors - 2; i >= 0; --i) {
    stride[i] = stride[i + 1] * dims[i + 1];
  }
  std::vector<int> traced;
  std::vector<bool> kept(n_factors, false);
  for (int k : keep) kept[k] = true;
  for (int i = 0; i < n_factors; ++i) {
    if (!kept[i]) traced.push_back(i);
  }

  // Offsets of every kept (resp. traced) multi-index into the full index.
  auto offsets = [&](const std::vector<int>& factors) {
    std::vector<long> out{0};
    for (int f : factors) {
      std::vector<long> next;
      next.reserve(out.size() * dims[f]);
      for (long base : out) {
        for (int v = 0; v < dims[f]; ++v) {
          next.push_back(base + v * stride[f]);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  const std::vector<long> kept_offsets = offsets(keep);
  const std::vector<long> traced_offsets = offsets(traced);

  const long dim_out = static_cast<long>(kept_offsets.size());
  CMat out = CMat::Zero(dim_out, dim_out);
  for (long r = 0; r < dim_out; ++r) {
    for (long c = 0; c < dim_out; ++c) {
      cplx sum = 0.0;
      for (long t : traced_offsets) {
        sum += m(kept_offsets[r] + t, kept_offsets[c] + t);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

CMat psd_sqrt(const CMat& e) {
  if (e.rows() != e.cols()) {
    fail(ErrorCode::DimMismatch, "psd_sqrt requires a square matrix");
  }
  if (!all_finite(e)) {
    fail(ErrorCode::NonFinite, "psd_sqrt input must be finite");
  }
  if (hermiticity_gap(e) > kHermitianTol * std::max(1.0, max_abs(e))) {
    fail(ErrorCode::NotHermitian, "psd_sqrt input is not Hermitian");
  }
  const Eigen::MatrixXcd h = hermitian_part(e);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXd values = solver.eigenvalues();
  if (values.minCoeff() < -kPsdTol) {
    fail(ErrorCode::NotPositive,
         "psd_sqrt input has eigenvalue " + std::to_string(values.minCoeff()));
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values(i) = std::sqrt(std::max(values(i), 0.0));
  }
  const Eigen::MatrixXcd root = solver.eigenvectors() *
                                values.asDiagonal() *
                                solver.eigenvectors().adjoint();
  return hermitian_part(CMat(root));
}

CMat random_haar_unitary(int dim, RngStream& rng) {
  if (dim < 1) {
    fail(ErrorCode::BadArgument, "unitary dimension must be >= 1");
  }
  if (dim > kDimCap) {
    fail(ErrorCode::DimensionCap, "unitary dimension exceeds cap");
  }
  Eigen::MatrixXcd ginibre(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      ginibre(i, j) = rng.complex_normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::VectorXcd diag = qr.matrixQR().diagonal();
  for (int j = 0; j < dim; ++j) {
    const double magnitude = std::abs(diag(j));
    const cplx phase = magnitude > 0.0 ? diag(j) / magnitude : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return CMat(q);
}

double trace_distance(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    fail(ErrorCode::DimMismatch, "trace_distance requires equal square shapes");
  }
  const Eigen::MatrixXcd diff = hermitian_part(CMat(a - b));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff,
                                                         Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::BadNorm: return "BadNorm";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::Completeness: return "Completeness";
    case ErrorCode::PovmSum: return "PovmSum";
    case ErrorCode::BadPadding: return "BadPadding";
    case ErrorCode::HeterogeneousOutputDims: return "HeterogeneousOutputDims";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorCode::MissingBranch: return "MissingBranch";
    case ErrorCode::NullArgument: return "NullArgument";
    case ErrorCode::PositivityLoss: return "PositivityLoss";
    case ErrorCode::CompletionFailure: return "CompletionFailure";
    case ErrorCode::ContractBreach: return "ContractBreach";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qiv
