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

#ifndef QIV_MATRIX_HPP
#define QIV_MATRIX_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qiv/error.hpp"

namespace qiv {

using cplx = std::complex<double>;
// Row-major to match the serialized entry order.
using CMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

class RngStream;

/// Largest matrix dimension any constructor will produce.
inline constexpr int kDimCap = 4096;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kUnitNormTol = 1e-12;

bool all_finite(const CMat& m);
double max_abs(const CMat& m);

/// max_{s,t} |m_st - conj(m_ts)|.
double hermiticity_gap(const CMat& m);

CMat hermitian_part(const CMat& m);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const CMat& m);

/// max |u u^dag - identity| elementwise.
double unitarity_gap(const CMat& u);

/// Kronecker product with index convention
/// (i1*b.rows + i2, j1*b.cols + j2) -> a(i1,j1)*b(i2,j2).
/// Throws DimensionCap when an output dimension exceeds dim_cap.
CMat tensor(const CMat& a, const CMat& b, int dim_cap = kDimCap);

/// Partial trace of a square matrix over a tensor factorization.
/// dims lists the factor dimensions, most significant first (the index
/// convention of tensor()); keep lists the factor positions to retain,
/// strictly increasing. The result carries the kept factors in order.
CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-9, 0) are clamped to zero; anything lower is NotPositive.
CMat psd_sqrt(const CMat& e);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phases folded into Q.
CMat random_haar_unitary(int dim, RngStream& rng);

/// (1/2) * trace norm of (a - b); both inputs must be Hermitian.
double trace_distance(const CMat& a, const CMat& b);

}  // namespace qiv

#endif  // QIV_MATRIX_HPP
