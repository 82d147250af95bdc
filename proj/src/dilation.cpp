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

#include "qiv/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace qiv {
namespace {

constexpr double kCompletionResidual = 1e-8;

}  // namespace

Dilation Dilation::build(int input_dim, std::vector<DilationColumn> columns,
                         CMat isometry) {
  if (input_dim < 1) {
    fail(ErrorCode::BadArgument, "dilation input dimension must be >= 1");
  }
  if (isometry.rows() != input_dim ||
      isometry.cols() != static_cast<Eigen::Index>(columns.size())) {
    fail(ErrorCode::DimMismatch,
         "dilation matrix shape does not match the column index");
  }
  if (!all_finite(isometry)) {
    fail(ErrorCode::NonFinite, "dilation matrix has non-finite entries");
  }
  const double gap = unitarity_gap(isometry);
  if (gap > kIdentityTol) {
    fail(ErrorCode::Completeness,
         "dilation row orthonormality deviation " + std::to_string(gap) +
             " exceeds 1e-9");
  }
  return Dilation(input_dim, std::move(columns), std::move(isometry));
}

CompositeState CompositeState::build(std::vector<DilationColumn> columns,
                                     CVec amplitudes) {
  if (columns.empty() ||
      amplitudes.size() != static_cast<Eigen::Index>(columns.size())) {
    fail(ErrorCode::DimMismatch,
         "composite state amplitudes do not match the column index");
  }
  const double norm_sq = amplitudes.squaredNorm();
  if (std::abs(norm_sq - 1.0) > 1e-10) {
    fail(ErrorCode::BadNorm, "composite state squared norm " +
                                 std::to_string(norm_sq) +
                                 " deviates from 1 beyond 1e-10");
  }
  return CompositeState(std::move(columns), std::move(amplitudes));
}

std::vector<std::string> CompositeState::block_labels() const {
  std::vector<std::string> labels;
  for (const DilationColumn& column : columns_) {
    if (std::find(labels.begin(), labels.end(), column.mu) == labels.end()) {
      labels.push_back(column.mu);
    }
  }
  return labels;
}

double CompositeState::block_weight(std::string_view mu) const {
  double weight = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].mu == mu) {
      weight += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
      found = true;
    }
  }
  if (!found) {
    fail(ErrorCode::UnknownOutcome,
         "composite state has no block '" + std::string(mu) + "'");
  }
  return weight;
}

Intervention kraus_from_povm(
    const Povm& p, const std::optional<std::vector<std::vector<CMat>>>& paddings) {
  if (paddings && paddings->size() != static_cast<std::size_t>(p.size())) {
    fail(ErrorCode::BadPadding,
         "padding list must have one entry per POVM element");
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    const CMat root = psd_sqrt(p.element(i));
    Outcome outcome;
    outcome.label = p.label(i);
    if (!paddings) {
      outcome.output_dim = p.input_dim();
      outcome.kraus.push_back(root);
    } else {
      const std::vector<CMat>& stack = (*paddings)[i];
      if (stack.empty()) {
        fail(ErrorCode::BadPadding,
             "padding stack for '" + p.label(i) + "' is empty");
      }
      CMat gram = CMat::Zero(p.input_dim(), p.input_dim());
      const Eigen::Index rows = stack.front().rows();
      for (const CMat& s : stack) {
        if (s.cols() != p.input_dim() || s.rows() != rows) {
          fail(ErrorCode::BadPadding,
               "padding matrices for '" + p.label(i) +
                   "' must share a row count and have input_dim columns");
        }
        gram += s.adjoint() * s;
      }
      gram -= CMat::Identity(p.input_dim(), p.input_dim());
      const double gap = max_abs(gram);
      if (gap > kIdentityTol) {
        fail(ErrorCode::BadPadding,
             "padding stack for '" + p.label(i) + "' deviates from isometry by " +
                 std::to_string(gap));
      }
      outcome.output_dim = static_cast<int>(rows);
      for (const CMat& s : stack) {
        outcome.kraus.push_back(s * root);
      }
    }
    outcomes.push_back(std::move(outcome));
  }
  return Intervention::validate(p.input_dim(), std::move(outcomes));
}

Dilation isometry_from_kraus(const Intervention& k) {
  std::vector<DilationColumn> columns;
  long total = 0;
  for (const Outcome& outcome : k.outcomes()) {
    total += static_cast<long>(outcome.output_dim) * outcome.kraus.size();
  }
  CMat isometry(k.input_dim(), total);
  long col = 0;
  for (const Outcome& outcome : k.outcomes()) {
    const int multiplicity = static_cast<int>(outcome.kraus.size());
    for (int sigma = 0; sigma < outcome.output_dim; ++sigma) {
      for (int m = 0; m < multiplicity; ++m) {
        columns.push_back(DilationColumn{outcome.label, sigma, m});
        for (int s = 0; s < k.input_dim(); ++s) {
          isometry(s, col) = outcome.kraus[m](sigma, s);
        }
        ++col;
      }
    }
  }
  return Dilation::build(k.input_dim(), std::move(columns),
                         std::move(isometry));
}

CMat complete_to_unitary(const Dilation& d) {
  const int total = d.total_columns();
  CMat rows = CMat::Zero(total, total);
  rows.topRows(d.input_dim()) = d.isometry();
  int have = d.input_dim();
  for (int candidate = 0; candidate < total && have < total; ++candidate) {
    CVec residual = CVec::Zero(total);
    residual(candidate) = 1.0;
    // Two orthogonalization sweeps keep the completion well conditioned.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int r = 0; r < have; ++r) {
        const cplx overlap = rows.row(r).dot(residual);
        residual -= overlap * rows.row(r).transpose();
      }
    }
    const double norm = residual.norm();
    if (norm < kCompletionResidual) continue;
    rows.row(have) = (residual / norm).transpose();
    ++have;
  }
  if (have != total) {
    fail(ErrorCode::CompletionFailure,
         "orthogonal completion produced only " + std::to_string(have) +
             " of " + std::to_string(total) + " rows");
  }
  const double gap = unitarity_gap(rows);
  if (gap > kIdentityTol) {
    fail(ErrorCode::CompletionFailure,
         "completed matrix unitarity deviation " + std::to_string(gap));
  }
  return rows;
}

CompositeState premeasure(const Dilation& d, const PureState& psi0) {
  if (psi0.dim() != d.input_dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension does not match the dilation input");
  }
  CVec amplitudes = d.isometry().transpose() * psi0.amplitudes();
  return CompositeState::build(d.columns(), std::move(amplitudes));
}

DensityMatrix discard(const CompositeState& c, std::string_view mu) {
  int d_out = 0;
  int multiplicity = 0;
  for (const DilationColumn& column : c.columns()) {
    if (column.mu == mu) {
      d_out = std::max(d_out, column.sigma + 1);
      multiplicity = std::max(multiplicity, column.m + 1);
    }
  }
  if (d_out == 0) {
    fail(ErrorCode::UnknownOutcome,
         "composite state has no block '" + std::string(mu) + "'");
  }
  // Repack the block as a (sigma x m) matrix and trace out m.
  CMat block = CMat::Zero(d_out, multiplicity);
  for (std::size_t i = 0; i < c.columns().size(); ++i) {
    const DilationColumn& column = c.columns()[i];
    if (column.mu == mu) {
      block(column.sigma, column.m) =
          c.amplitudes()(static_cast<Eigen::Index>(i));
    }
  }
  CMat reduced = block * block.adjoint();
  return DensityMatrix::conditional(reduced);
}

Intervention tensor_intervention(const Intervention& k1,
                                 const Intervention& k2, int dim_cap) {
  const long joint_input = static_cast<long>(k1.input_dim()) * k2.input_dim();
  if (joint_input > dim_cap) {
    fail(ErrorCode::DimensionCap,
         "joint input dimension exceeds the configured cap");
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(k1.n_outcomes() * k2.n_outcomes());
  for (const Outcome& mu : k1.outcomes()) {
    for (const Outcome& nu : k2.outcomes()) {
      Outcome joint;
      joint.label = mu.label + kTensorLabelSeparator + nu.label;
      joint.output_dim = mu.output_dim * nu.output_dim;
      joint.kraus.reserve(mu.kraus.size() * nu.kraus.size());
      for (const CMat& a : mu.kraus) {
        for (const CMat& b : nu.kraus) {
          joint.kraus.push_back(tensor(a, b, dim_cap));
        }
      }
      outcomes.push_back(std::move(joint));
    }
  }
  return Intervention::validate(static_cast<int>(joint_input),
                                std::move(outcomes));
}

Intervention adaptive_tensor(const Intervention& k1,
                             const AdaptiveIntervention& k2_by_outcome,
                             int dim_cap) {
  int second_input = -1;
  for (const Outcome& mu : k1.outcomes()) {
    if (!k2_by_outcome.has(mu.label)) {
      fail(ErrorCode::MissingBranch,
           "no adapted intervention for outcome '" + mu.label + "'");
    }
    const Intervention& second = k2_by_outcome.branch(mu.label);
    if (second_input < 0) {
      second_input = second.input_dim();
    } else if (second.input_dim() != second_input) {
      fail(ErrorCode::DimMismatch,
           "adapted interventions must share the subsystem-2 dimension");
    }
  }
  const long joint_input = static_cast<long>(k1.input_dim()) * second_input;
  if (joint_input > dim_cap) {
    fail(ErrorCode::DimensionCap,
         "joint input dimension exceeds the configured cap");
  }
  std::vector<Outcome> outcomes;
  for (const Outcome& mu : k1.outcomes()) {
    const Intervention& second = k2_by_outcome.branch(mu.label);
    if (!second.is_complete()) {
      fail(ErrorCode::Completeness,
           "adapted intervention for outcome '" + mu.label +
               "' completeness deviation " +
               std::to_string(second.completeness_deviation()) +
               " exceeds 1e-9");
    }
    for (const Outcome& nu : second.outcomes()) {
      Outcome joint;
      joint.label = nu.label + kComposedLabelSeparator + mu.label;
      joint.output_dim = mu.output_dim * nu.output_dim;
      joint.kraus.reserve(mu.kraus.size() * nu.kraus.size());
      for (const CMat& a : mu.kraus) {
        for (const CMat& b : nu.kraus) {
          joint.kraus.push_back(tensor(a, b, dim_cap));
        }
      }
      outcomes.push_back(std::move(joint));
    }
  }
  return Intervention::validate(static_cast<int>(joint_input),
                                std::move(outcomes));
}

}  // namespace qiv
