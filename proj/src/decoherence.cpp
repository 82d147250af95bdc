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

#include "qiv/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "parallel.hpp"

namespace qiv {
namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kOverlapDiagTol = 1e-10;

void check_model(const EnvironmentModel& model) {
  if (model.n_outcomes < 2) {
    fail(ErrorCode::BadArgument, "environment model needs >= 2 outcomes");
  }
  if (model.env_dim < model.n_outcomes) {
    fail(ErrorCode::BadArgument,
         "environment dimension must be >= the outcome count");
  }
  if (model.env_dim > kDimCap) {
    fail(ErrorCode::DimensionCap, "environment dimension exceeds cap");
  }
  if (model.mode == EnvMode::Mixed && !model.weights.empty()) {
    if (model.weights.size() != static_cast<std::size_t>(model.env_dim)) {
      fail(ErrorCode::BadArgument,
           "weight vector length must equal the environment dimension");
    }
    double sum = 0.0;
    for (double w : model.weights) {
      if (!(w >= 0.0)) {
        fail(ErrorCode::BadArgument, "weights must be non-negative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      fail(ErrorCode::BadArgument, "weights must sum to 1");
    }
  }
  if (model.mode == EnvMode::Pure && !model.weights.empty()) {
    fail(ErrorCode::BadArgument, "pure mode takes no weight vector");
  }
}

bool uniform_weights(const EnvironmentModel& model) {
  return model.weights.empty();
}

OverlapMatrix finish_overlaps(CMat g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (std::abs(g(i, i) - cplx(1.0, 0.0)) > kOverlapDiagTol) {
      fail(ErrorCode::ContractBreach,
           "overlap diagonal deviates from 1 beyond 1e-10");
    }
  }
  return OverlapMatrix{std::move(g)};
}

/// G for sampling purposes, avoiding full Haar matrices where the exact
/// distribution is reachable directly:
///  - pure mode only involves one row per unitary, and a Haar row is a
///    Haar-random unit vector;
///  - mixed uniform-weight overlaps for two outcomes equal Tr(U)/N with
///    U = B_0 B_1^dag, which is itself Haar, so the CMV trace applies.
OverlapMatrix sample_overlaps(const EnvironmentModel& model,
                              RngStream& stream) {
  check_model(model);
  if (model.mode == EnvMode::Pure) {
    std::vector<CVec> rows;
    rows.reserve(model.n_outcomes);
    for (int mu = 0; mu < model.n_outcomes; ++mu) {
      rows.push_back(detail::random_unit_vector(model.env_dim, stream));
    }
    CMat g(model.n_outcomes, model.n_outcomes);
    for (int mu = 0; mu < model.n_outcomes; ++mu) {
      for (int nu = 0; nu < model.n_outcomes; ++nu) {
        g(mu, nu) = rows[nu].dot(rows[mu]);
      }
    }
    return finish_overlaps(std::move(g));
  }
  if (uniform_weights(model) && model.n_outcomes == 2) {
    const cplx trace = detail::sample_haar_trace(model.env_dim, stream);
    CMat g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    g(0, 1) = trace / static_cast<double>(model.env_dim);
    g(1, 0) = std::conj(g(0, 1));
    return finish_overlaps(std::move(g));
  }
  return environment_overlaps(model, stream);
}

}  // namespace

EnvironmentModel EnvironmentModel::pure(int n_outcomes, int env_dim) {
  EnvironmentModel model{n_outcomes, env_dim, EnvMode::Pure, {}};
  check_model(model);
  return model;
}

EnvironmentModel EnvironmentModel::mixed(int n_outcomes, int env_dim,
                                         std::vector<double> weights) {
  EnvironmentModel model{n_outcomes, env_dim, EnvMode::Mixed,
                         std::move(weights)};
  check_model(model);
  return model;
}

OverlapMatrix overlap_from_unitaries(const std::vector<CMat>& evolutions,
                                     const EnvironmentModel& model) {
  check_model(model);
  if (evolutions.size() != static_cast<std::size_t>(model.n_outcomes)) {
    fail(ErrorCode::DimMismatch,
         "one evolution matrix per outcome is required");
  }
  for (const CMat& b : evolutions) {
    if (b.rows() != model.env_dim || b.cols() != model.env_dim) {
      fail(ErrorCode::DimMismatch,
           "evolution matrices must match the environment dimension");
    }
    if (unitarity_gap(b) > kUnitaryTol) {
      fail(ErrorCode::BadArgument,
           "evolution matrices must be unitary within 1e-10");
    }
  }
  CMat g(model.n_outcomes, model.n_outcomes);
  if (model.mode == EnvMode::Pure) {
    for (int mu = 0; mu < model.n_outcomes; ++mu) {
      for (int nu = 0; nu < model.n_outcomes; ++nu) {
        // <row_0(B_nu), row_0(B_mu)> = (B_mu B_nu^dag)_{00}
        g(mu, nu) = (evolutions[mu].row(0) *
                     evolutions[nu].row(0).adjoint())(0, 0);
      }
    }
  } else {
    for (int mu = 0; mu < model.n_outcomes; ++mu) {
      for (int nu = 0; nu < model.n_outcomes; ++nu) {
        const CMat product = evolutions[mu] * evolutions[nu].adjoint();
        cplx sum = 0.0;
        for (int w = 0; w < model.env_dim; ++w) {
          const double p = uniform_weights(model)
                               ? 1.0 / model.env_dim
                               : model.weights[w];
          sum += p * product(w, w);
        }
        g(mu, nu) = sum;
      }
    }
  }
  return finish_overlaps(std::move(g));
}

OverlapMatrix environment_overlaps(const EnvironmentModel& model,
                                   RngStream& stream) {
  check_model(model);
  std::vector<CMat> evolutions;
  evolutions.reserve(model.n_outcomes);
  for (int mu = 0; mu < model.n_outcomes; ++mu) {
    evolutions.push_back(random_haar_unitary(model.env_dim, stream));
  }
  return overlap_from_unitaries(evolutions, model);
}

ScanResult scaling_scan(const std::vector<int>& env_dims, int trials,
                        EnvMode mode, const RngStream& stream, int workers) {
  if (env_dims.size() < 3) {
    fail(ErrorCode::BadArgument, "scan needs at least three dimensions");
  }
  const auto [min_it, max_it] =
      std::minmax_element(env_dims.begin(), env_dims.end());
  if (*min_it < 2) {
    fail(ErrorCode::BadArgument, "environment dimensions must be >= 2");
  }
  if (*max_it < 4 * *min_it) {
    fail(ErrorCode::BadArgument, "scan dimensions must span two octaves");
  }
  if (trials < 100) {
    fail(ErrorCode::BadArgument, "scan needs at least 100 trials");
  }

  ScanResult result;
  result.rows.reserve(env_dims.size());
  std::vector<double> log_rms;
  std::vector<double> log_rms_stderr;
  for (std::size_t di = 0; di < env_dims.size(); ++di) {
    const int env_dim = env_dims[di];
    const EnvironmentModel model =
        mode == EnvMode::Pure ? EnvironmentModel::pure(2, env_dim)
                              : EnvironmentModel::mixed(2, env_dim);
    std::vector<double> sq(trials, 0.0);
    detail::parallel_for(
        trials, workers, [&](std::int64_t begin, std::int64_t end, int) {
          for (std::int64_t t = begin; t < end; ++t) {
            RngStream trial_rng = stream.substream(
                static_cast<std::uint64_t>(di) * trials + t);
            const OverlapMatrix overlaps = sample_overlaps(model, trial_rng);
            sq[t] = std::norm(overlaps.g(0, 1));
          }
        });
    // Reduce in index order so results do not depend on the worker count.
    double mean_sq = 0.0;
    for (double v : sq) mean_sq += v;
    mean_sq /= trials;
    double var_sq = 0.0;
    for (double v : sq) var_sq += (v - mean_sq) * (v - mean_sq);
    var_sq /= std::max(trials - 1, 1);
    const double rms = std::sqrt(mean_sq);
    const double se_mean = std::sqrt(var_sq / trials);
    const double se_rms = rms > 0.0 ? se_mean / (2.0 * rms) : 0.0;
    result.rows.push_back(ScanRow{env_dim, rms, se_rms});
    log_rms.push_back(std::log(rms));
    log_rms_stderr.push_back(rms > 0.0 ? se_rms / rms : 0.0);
  }

  // Weighted-free least squares on (log N, log rms); the slope error is
  // propagated from the per-point standard errors.
  const std::size_t n = env_dims.size();
  double x_mean = 0.0;
  for (int d : env_dims) x_mean += std::log(static_cast<double>(d));
  x_mean /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(static_cast<double>(env_dims[i])) - x_mean;
    sxx += dx * dx;
    sxy += dx * log_rms[i];
  }
  result.slope = sxy / sxx;
  double var_slope = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(static_cast<double>(env_dims[i])) - x_mean;
    const double a = dx / sxx;
    var_slope += a * a * log_rms_stderr[i] * log_rms_stderr[i];
  }
  result.slope_stderr = std::sqrt(var_slope);
  return result;
}

DecoheredState decohered_state_with_overlaps(const CompositeState& psi1,
                                             const OverlapMatrix& overlaps) {
  const std::vector<std::string> labels = psi1.block_labels();
  const int n_blocks = static_cast<int>(labels.size());
  if (overlaps.g.rows() != n_blocks || overlaps.g.cols() != n_blocks) {
    fail(ErrorCode::DimMismatch,
         "overlap matrix does not match the block count");
  }
  const Eigen::Index dim = psi1.amplitudes().size();
  std::vector<int> block_of(dim, 0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::string& mu = psi1.columns()[i].mu;
    block_of[i] = static_cast<int>(
        std::find(labels.begin(), labels.end(), mu) - labels.begin());
  }
  CMat exact(dim, dim);
  CMat ideal = CMat::Zero(dim, dim);
  const CVec& c = psi1.amplitudes();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const cplx value = c(i) * std::conj(c(j));
      exact(i, j) = value * overlaps.g(block_of[i], block_of[j]);
      if (block_of[i] == block_of[j]) ideal(i, j) = value;
    }
  }
  DecoheredState out{DensityMatrix::validate(exact),
                     DensityMatrix::validate(ideal), 0.0};
  out.trace_distance = trace_distance(exact, ideal);
  return out;
}

DecoheredState decohered_state(const CompositeState& psi1,
                               const EnvironmentModel& model,
                               RngStream& stream) {
  const std::vector<std::string> labels = psi1.block_labels();
  if (static_cast<int>(labels.size()) != model.n_outcomes) {
    fail(ErrorCode::DimMismatch,
         "state blocks do not match the environment model outcomes");
  }
  const OverlapMatrix overlaps = sample_overlaps(model, stream);
  return decohered_state_with_overlaps(psi1, overlaps);
}

namespace detail {

CVec random_unit_vector(int dim, RngStream& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = rng.complex_normal();
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

std::vector<cplx> sample_verblunsky(int env_dim, RngStream& rng) {
  if (env_dim < 1) {
    fail(ErrorCode::BadArgument, "environment dimension must be >= 1");
  }
  std::vector<cplx> alphas(env_dim);
  for (int k = 0; k + 1 < env_dim; ++k) {
    // |alpha_k|^2 ~ Beta(1, N-k-1), phase uniform: the beta-2 circular
    // ensemble coefficients whose CMV matrix carries Haar eigenvalues.
    const double b = static_cast<double>(env_dim - k - 1);
    const double u = std::max(rng.uniform(), 1e-300);
    const double modulus = std::sqrt(1.0 - std::pow(u, 1.0 / b));
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    alphas[k] = modulus * cplx(std::cos(theta), std::sin(theta));
  }
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  alphas[env_dim - 1] = cplx(std::cos(theta), std::sin(theta));
  return alphas;
}

namespace {

struct Tridiagonal {
  std::vector<cplx> diag;
  std::vector<cplx> super;  // (i, i+1)
  std::vector<cplx> sub;    // (i+1, i)

  explicit Tridiagonal(int n)
      : diag(n, cplx(0.0, 0.0)),
        super(std::max(n - 1, 0), cplx(0.0, 0.0)),
        sub(std::max(n - 1, 0), cplx(0.0, 0.0)) {}
};

// L collects the even-index rotation blocks, M the odd ones behind a
// leading scalar 1; the final unimodular coefficient closes whichever
// factor reaches the last coordinate.
void fill_factors(const std::vector<cplx>& alphas, Tridiagonal& l,
                  Tridiagonal& m) {
  const int n = static_cast<int>(alphas.size());
  m.diag[0] = 1.0;
  for (int j = 0; j + 1 < n; ++j) {
    const cplx alpha = alphas[j];
    const double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha)));
    Tridiagonal& target = (j % 2 == 0) ? l : m;
    target.diag[j] = std::conj(alpha);
    target.super[j] = rho;
    target.sub[j] = rho;
    target.diag[j + 1] = -alpha;
  }
  Tridiagonal& target = ((n - 1) % 2 == 0) ? l : m;
  target.diag[n - 1] = std::conj(alphas[n - 1]);
}

}  // namespace

CMat cmv_matrix(const std::vector<cplx>& alphas) {
  const int n = static_cast<int>(alphas.size());
  Tridiagonal l(n);
  Tridiagonal m(n);
  fill_factors(alphas, l, m);
  CMat lm = CMat::Zero(n, n);
  CMat mm = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    lm(i, i) = l.diag[i];
    mm(i, i) = m.diag[i];
    if (i + 1 < n) {
      lm(i, i + 1) = l.super[i];
      lm(i + 1, i) = l.sub[i];
      mm(i, i + 1) = m.super[i];
      mm(i + 1, i) = m.sub[i];
    }
  }
  return lm * mm;
}

cplx sample_haar_trace(int env_dim, RngStream& rng) {
  const std::vector<cplx> alphas = sample_verblunsky(env_dim, rng);
  const int n = env_dim;
  Tridiagonal l(n);
  Tridiagonal m(n);
  fill_factors(alphas, l, m);
  // tr(LM) from the tridiagonal bands alone.
  cplx trace = 0.0;
  for (int i = 0; i < n; ++i) {
    trace += l.diag[i] * m.diag[i];
    if (i > 0) trace += l.sub[i - 1] * m.super[i - 1];
    if (i + 1 < n) trace += l.super[i] * m.sub[i];
  }
  return trace;
}

}  // namespace detail

}  // namespace qiv
