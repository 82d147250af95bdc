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

#include "qiv/intervention.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "parallel.hpp"

namespace qiv {
namespace {

constexpr double kProbabilityFloor = -1e-12;
constexpr double kNormalizedTol = 1e-9;
constexpr std::size_t kMaxRecords = 65536;

void require_complete(const Intervention& k, const std::string& what) {
  if (!k.is_complete()) {
    fail(ErrorCode::Completeness,
         what + " completeness deviation " +
             std::to_string(k.completeness_deviation()) + " exceeds 1e-9");
  }
}

void require_normalized(const DensityMatrix& rho, const std::string& what) {
  if (std::abs(rho.trace_norm() - 1.0) > kNormalizedTol) {
    fail(ErrorCode::BadArgument,
         what + " requires a normalized state (trace 1), got trace " +
             std::to_string(rho.trace_norm()));
  }
}

CMat kraus_sum(const Intervention& k, const DensityMatrix& rho,
               const Outcome& outcome) {
  CMat out = CMat::Zero(outcome.output_dim, outcome.output_dim);
  for (const CMat& a : outcome.kraus) {
    out += a * rho.matrix() * a.adjoint();
  }
  return out;
}

}  // namespace

Intervention Intervention::shape_only(int input_dim,
                                      std::vector<Outcome> outcomes) {
  if (input_dim < 1 || input_dim > kDimCap) {
    fail(ErrorCode::BadArgument, "intervention input dimension out of range");
  }
  if (outcomes.empty()) {
    fail(ErrorCode::BadArgument,
         "intervention must declare at least one outcome");
  }
  std::set<std::string> seen;
  std::vector<CMat> povm_elements;
  povm_elements.reserve(outcomes.size());
  CMat sum = CMat::Zero(input_dim, input_dim);
  for (const Outcome& outcome : outcomes) {
    if (!seen.insert(outcome.label).second) {
      fail(ErrorCode::BadArgument,
           "duplicate outcome label '" + outcome.label + "'");
    }
    if (outcome.output_dim < 1 || outcome.output_dim > kDimCap) {
      fail(ErrorCode::BadArgument, "outcome '" + outcome.label +
                                       "' output dimension out of range");
    }
    if (outcome.kraus.empty()) {
      fail(ErrorCode::BadArgument,
           "outcome '" + outcome.label + "' has no Kraus matrices");
    }
    CMat element = CMat::Zero(input_dim, input_dim);
    for (const CMat& a : outcome.kraus) {
      if (a.rows() != outcome.output_dim || a.cols() != input_dim) {
        fail(ErrorCode::DimMismatch,
             "outcome '" + outcome.label + "' Kraus matrix must be " +
                 std::to_string(outcome.output_dim) + "x" +
                 std::to_string(input_dim));
      }
      if (!all_finite(a)) {
        fail(ErrorCode::NonFinite, "outcome '" + outcome.label +
                                       "' Kraus matrix has non-finite entries");
      }
      element += a.adjoint() * a;
    }
    sum += element;
    povm_elements.push_back(std::move(element));
  }
  sum -= CMat::Identity(input_dim, input_dim);
  const double deviation = max_abs(sum);
  return Intervention(input_dim, std::move(outcomes),
                      std::move(povm_elements), deviation);
}

Intervention Intervention::validate(int input_dim,
                                    std::vector<Outcome> outcomes) {
  Intervention k = shape_only(input_dim, std::move(outcomes));
  require_complete(k, "intervention");
  return k;
}

const Outcome& Intervention::find(std::string_view label) const {
  const int index = index_of(label);
  if (index < 0) {
    fail(ErrorCode::UnknownOutcome,
         "unknown outcome label '" + std::string(label) + "'");
  }
  return outcomes_[index];
}

int Intervention::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

AdaptiveIntervention AdaptiveIntervention::make(std::vector<Branch> branches) {
  if (branches.empty()) {
    fail(ErrorCode::BadArgument,
         "adaptive intervention must declare at least one branch");
  }
  std::set<std::string> seen;
  for (const auto& [label, k] : branches) {
    if (!seen.insert(label).second) {
      fail(ErrorCode::BadArgument,
           "duplicate adaptive branch key '" + label + "'");
    }
  }
  return AdaptiveIntervention(std::move(branches));
}

bool AdaptiveIntervention::has(std::string_view label) const {
  for (const auto& [key, k] : branches_) {
    if (key == label) return true;
  }
  return false;
}

const Intervention& AdaptiveIntervention::branch(std::string_view label) const {
  for (const auto& [key, k] : branches_) {
    if (key == label) return k;
  }
  fail(ErrorCode::MissingBranch,
       "no adaptive branch for outcome '" + std::string(label) + "'");
}

DensityMatrix apply_selective(const Intervention& k, const DensityMatrix& rho,
                              std::string_view mu) {
  if (rho.dim() != k.input_dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension " + std::to_string(rho.dim()) +
             " does not match intervention input " +
             std::to_string(k.input_dim()));
  }
  const Outcome& outcome = k.find(mu);
  return DensityMatrix::conditional(kraus_sum(k, rho, outcome));
}

std::vector<std::pair<std::string, double>> outcome_probabilities(
    const Intervention& k, const DensityMatrix& rho) {
  if (rho.dim() != k.input_dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension does not match intervention input");
  }
  require_normalized(rho, "outcome_probabilities");
  require_complete(k, "intervention");
  std::vector<std::pair<std::string, double>> out;
  out.reserve(k.n_outcomes());
  double total = 0.0;
  for (int i = 0; i < k.n_outcomes(); ++i) {
    const double raw = (k.povm_element(i) * rho.matrix()).trace().real();
    if (raw < kProbabilityFloor) {
      fail(ErrorCode::ContractBreach,
           "outcome '" + k.outcome(i).label + "' probability " +
               std::to_string(raw) + " below -1e-12");
    }
    const double p = std::clamp(raw, 0.0, 1.0);
    total += p;
    out.emplace_back(k.outcome(i).label, p);
  }
  if (std::abs(total - 1.0) > kNormalizedTol) {
    fail(ErrorCode::ContractBreach,
         "outcome probabilities sum to " + std::to_string(total));
  }
  return out;
}

Povm povm_of(const Intervention& k) {
  std::vector<Povm::Element> elements;
  elements.reserve(k.n_outcomes());
  for (int i = 0; i < k.n_outcomes(); ++i) {
    elements.emplace_back(k.outcome(i).label, k.povm_element(i));
  }
  return Povm::validate(k.input_dim(), std::move(elements));
}

DensityMatrix apply_nonselective(const Intervention& k,
                                 const DensityMatrix& rho) {
  if (rho.dim() != k.input_dim()) {
    fail(ErrorCode::DimMismatch,
         "state dimension does not match intervention input");
  }
  const int d_out = k.outcome(0).output_dim;
  for (int i = 1; i < k.n_outcomes(); ++i) {
    if (k.outcome(i).output_dim != d_out) {
      fail(ErrorCode::HeterogeneousOutputDims,
           "non-selective application requires equal output dimensions");
    }
  }
  require_complete(k, "intervention");
  CMat out = CMat::Zero(d_out, d_out);
  for (int i = 0; i < k.n_outcomes(); ++i) {
    out += kraus_sum(k, rho, k.outcome(i));
  }
  const double drift = std::abs(out.trace().real() - rho.trace_norm());
  if (drift > 1e-10) {
    fail(ErrorCode::ContractBreach,
         "non-selective map changed the trace by " + std::to_string(drift));
  }
  return DensityMatrix::conditional(out);
}

Intervention compose(const AdaptiveIntervention& later,
                     const Intervention& first) {
  require_complete(first, "first intervention");
  std::vector<Outcome> composed;
  for (const Outcome& mu : first.outcomes()) {
    if (!later.has(mu.label)) {
      fail(ErrorCode::MissingBranch,
           "no adaptive branch for outcome '" + mu.label + "'");
    }
    const Intervention& b = later.branch(mu.label);
    if (b.input_dim() != mu.output_dim) {
      fail(ErrorCode::DimMismatch,
           "branch '" + mu.label + "' expects input dimension " +
               std::to_string(b.input_dim()) + " but the outcome produces " +
               std::to_string(mu.output_dim));
    }
    require_complete(b, "branch '" + mu.label + "'");
    for (const Outcome& nu : b.outcomes()) {
      Outcome joint;
      joint.label = nu.label + kComposedLabelSeparator + mu.label;
      joint.output_dim = nu.output_dim;
      joint.kraus.reserve(nu.kraus.size() * mu.kraus.size());
      for (const CMat& b_kraus : nu.kraus) {
        for (const CMat& a_kraus : mu.kraus) {
          joint.kraus.push_back(b_kraus * a_kraus);
        }
      }
      composed.push_back(std::move(joint));
    }
  }
  return Intervention::validate(first.input_dim(), std::move(composed));
}

std::vector<RefinementBranchReport> check_refinement(
    const AdaptiveIntervention& later, const Intervention& first) {
  std::vector<RefinementBranchReport> reports;
  reports.reserve(first.n_outcomes());
  for (int i = 0; i < first.n_outcomes(); ++i) {
    const Outcome& mu = first.outcome(i);
    if (!later.has(mu.label)) {
      fail(ErrorCode::MissingBranch,
           "no adaptive branch for outcome '" + mu.label + "'");
    }
    const Intervention& b = later.branch(mu.label);
    if (b.input_dim() != mu.output_dim) {
      fail(ErrorCode::DimMismatch,
           "branch '" + mu.label + "' input dimension mismatch");
    }
    RefinementBranchReport report;
    report.label = mu.label;
    report.completeness_deviation = b.completeness_deviation();
    report.complete = b.is_complete();
    // sum_nu E_nu_mu = sum_m A^dag (sum_{nu,n} B^dag B) A
    CMat inner = CMat::Zero(b.input_dim(), b.input_dim());
    for (int j = 0; j < b.n_outcomes(); ++j) {
      inner += b.povm_element(j);
    }
    CMat refined_sum = CMat::Zero(first.input_dim(), first.input_dim());
    for (const CMat& a : mu.kraus) {
      refined_sum += a.adjoint() * inner * a;
    }
    report.povm_sum_deviation = max_abs(CMat(refined_sum - first.povm_element(i)));
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

struct TreeNode {
  DensityMatrix state;
  std::string label;          // outcome that produced this node
  int parent = -1;
  int first_child = -1;
  int n_children = 0;
  int leaf_index = -1;
  std::vector<double> child_cumulative;
};

}  // namespace

std::vector<RecordStats> sample_records(
    const std::vector<AdaptiveIntervention>& stages, const DensityMatrix& rho0,
    std::uint64_t shots, const RngStream& stream, int workers) {
  if (stages.empty()) {
    fail(ErrorCode::BadArgument, "record sampling needs at least one stage");
  }
  if (shots == 0) {
    fail(ErrorCode::BadArgument, "record sampling needs at least one shot");
  }
  require_normalized(rho0, "sample_records");
  if (stages.front().branches().size() != 1) {
    fail(ErrorCode::BadArgument,
         "the first stage must be keyed by a single root label");
  }

  // Exact chained probabilities: expand the full outcome tree with
  // unnormalized conditional states, one level per stage.
  std::vector<TreeNode> nodes;
  nodes.push_back(TreeNode{rho0, "", -1, -1, 0, -1, {}});
  std::size_t level_begin = 0;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::size_t level_end = nodes.size();
    for (std::size_t n = level_begin; n < level_end; ++n) {
      const Intervention& k =
          s == 0 ? stages[0].branches().front().second
                 : stages[s].branch(nodes[n].label);
      require_complete(k, "stage " + std::to_string(s + 1) + " branch");
      if (k.input_dim() != nodes[n].state.dim()) {
        fail(ErrorCode::DimMismatch,
             "stage " + std::to_string(s + 1) +
                 " branch input dimension does not match the incoming state");
      }
      if (nodes.size() + k.n_outcomes() > kMaxRecords) {
        fail(ErrorCode::BadArgument, "adaptive chain has too many records");
      }
      nodes[n].first_child = static_cast<int>(nodes.size());
      nodes[n].n_children = k.n_outcomes();
      nodes[n].child_cumulative.reserve(k.n_outcomes());
      double cumulative = 0.0;
      for (const Outcome& outcome : k.outcomes()) {
        TreeNode child;
        child.state = apply_selective(k, nodes[n].state, outcome.label);
        child.label = outcome.label;
        child.parent = static_cast<int>(n);
        cumulative += child.state.trace_norm();
        nodes[n].child_cumulative.push_back(cumulative);
        nodes.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }

  // Leaves, in declaration (depth-first equivalent) order.
  std::vector<int> leaves;
  for (std::size_t n = level_begin; n < nodes.size(); ++n) {
    nodes[n].leaf_index = static_cast<int>(leaves.size());
    leaves.push_back(static_cast<int>(n));
  }

  // Per-shot substreams keep the tally independent of worker count.
  const int n_workers = detail::resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> tallies(
      n_workers, std::vector<std::uint64_t>(leaves.size(), 0));
  detail::parallel_for(
      static_cast<std::int64_t>(shots), n_workers,
      [&](std::int64_t begin, std::int64_t end, int worker) {
        auto& local = tallies[worker];
        for (std::int64_t shot = begin; shot < end; ++shot) {
          RngStream shot_rng =
              stream.substream(static_cast<std::uint64_t>(shot));
          int node = 0;
          for (std::size_t s = 0; s < stages.size(); ++s) {
            const auto& cumulative = nodes[node].child_cumulative;
            const double total = cumulative.back();
            const double u = shot_rng.uniform() * total;
            int child = 0;
            while (child + 1 < static_cast<int>(cumulative.size()) &&
                   u >= cumulative[child]) {
              ++child;
            }
            node = nodes[node].first_child + child;
          }
          ++local[nodes[node].leaf_index];
        }
      });
  std::vector<std::uint64_t> counts(leaves.size(), 0);
  for (const auto& local : tallies) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
  }

  std::vector<RecordStats> out;
  out.reserve(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    RecordStats stats;
    stats.record.probability =
        std::clamp(nodes[leaves[i]].state.trace_norm(), 0.0, 1.0);
    stats.frequency =
        static_cast<double>(counts[i]) / static_cast<double>(shots);
    std::vector<std::string> labels;
    for (int n = leaves[i]; n > 0; n = nodes[n].parent) {
      labels.push_back(nodes[n].label);
    }
    std::reverse(labels.begin(), labels.end());
    stats.record.outcomes = std::move(labels);
    out.push_back(std::move(stats));
  }
  return out;
}

}  // namespace qiv
