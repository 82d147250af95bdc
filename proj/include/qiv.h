/* Copyright 2026 The qiv authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* qiv - simulation of generalized quantum measurements.
 *
 * C interface to the qiv core: completely positive maps with classical
 * outcomes (possibly changing the state dimension), POVM/Kraus/unitary
 * dilation constructions, adaptive and composed interventions, a stochastic
 * decoherence model with verifiable scaling laws, and the Lindblad
 * continuous limit.
 *
 * Conventions:
 *  - all functions return QIV_OK (0) or an error status; qiv_last_error()
 *    describes the most recent failure on the calling thread;
 *  - statuses in [100, 200) are input/validation errors, statuses >= 200
 *    are numerical-contract breaches;
 *  - objects are opaque handles released with the matching *_free call;
 *  - structured data crosses the boundary as JSON text in the documented
 *    schemas; returned strings are released with qiv_string_free;
 *  - stochastic entry points take an explicit 64-bit seed and are
 *    deterministic for a given seed regardless of internal parallelism.
 */

#ifndef QIV_H
#define QIV_H

#include <stdint.h>

#if defined(QIV_BUILD_SHARED)
#define QIV_API __attribute__((visibility("default")))
#else
#define QIV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t qiv_status;

enum {
  QIV_OK = 0,
  QIV_ERR_PARSE = 100,
  QIV_ERR_NON_FINITE = 101,
  QIV_ERR_NOT_HERMITIAN = 102,
  QIV_ERR_NOT_POSITIVE = 103,
  QIV_ERR_BAD_TRACE = 104,
  QIV_ERR_BAD_NORM = 105,
  QIV_ERR_DIM_MISMATCH = 106,
  QIV_ERR_UNKNOWN_OUTCOME = 107,
  QIV_ERR_COMPLETENESS = 108,
  QIV_ERR_POVM_SUM = 109,
  QIV_ERR_BAD_PADDING = 110,
  QIV_ERR_HETEROGENEOUS_OUTPUT_DIMS = 111,
  QIV_ERR_DIMENSION_CAP = 112,
  QIV_ERR_BAD_ARGUMENT = 113,
  QIV_ERR_NEGATIVE_TIME = 114,
  QIV_ERR_STEP_TOO_LARGE = 115,
  QIV_ERR_ZERO_PROBABILITY_BRANCH = 116,
  QIV_ERR_MISSING_BRANCH = 117,
  QIV_ERR_NULL_ARGUMENT = 118,
  QIV_ERR_POSITIVITY_LOSS = 200,
  QIV_ERR_COMPLETION_FAILURE = 201,
  QIV_ERR_CONTRACT_BREACH = 202,
  QIV_ERR_INTERNAL = 999
};

enum { QIV_MODE_PURE = 0, QIV_MODE_MIXED = 1 };

typedef struct qiv_density qiv_density;
typedef struct qiv_povm qiv_povm;
typedef struct qiv_intervention qiv_intervention;
typedef struct qiv_adaptive qiv_adaptive;
typedef struct qiv_dilation qiv_dilation;
typedef struct qiv_generator qiv_generator;
typedef struct qiv_scenario qiv_scenario;

/* ---- diagnostics ---------------------------------------------------- */

QIV_API const char* qiv_version(void);

/* Message for the last failing call on this thread; valid until the next
 * failing call. */
QIV_API const char* qiv_last_error(void);

QIV_API const char* qiv_status_name(qiv_status status);
QIV_API int qiv_status_is_validation(qiv_status status);

QIV_API void qiv_string_free(char* text);

/* Parses and fully validates any qiv JSON document; on success writes the
 * detected kind name ("intervention", "povm", ...) when kind_out is not
 * null. */
QIV_API qiv_status qiv_validate_text(const char* text, char** kind_out);

/* ---- density matrices ------------------------------------------------ */

/* Accepts {"matrix": ...} density JSON. */
QIV_API qiv_status qiv_density_from_json(const char* text, qiv_density** out);
/* Accepts a state file: {"amplitudes": ...} (pure, converted to a
 * projector) or {"matrix": ...}. */
QIV_API qiv_status qiv_density_from_state_json(const char* text,
                                               qiv_density** out);
QIV_API qiv_status qiv_density_to_json(const qiv_density* rho, char** out);
QIV_API qiv_status qiv_density_dim(const qiv_density* rho, int32_t* out);
QIV_API qiv_status qiv_density_trace_norm(const qiv_density* rho,
                                          double* out);
QIV_API qiv_status qiv_density_entry(const qiv_density* rho, int32_t row,
                                     int32_t col, double* re, double* im);
QIV_API void qiv_density_free(qiv_density* rho);

/* ---- POVMs ----------------------------------------------------------- */

QIV_API qiv_status qiv_povm_from_json(const char* text, qiv_povm** out);
QIV_API qiv_status qiv_povm_to_json(const qiv_povm* p, char** out);
QIV_API void qiv_povm_free(qiv_povm* p);

/* ---- interventions --------------------------------------------------- */

QIV_API qiv_status qiv_intervention_from_json(const char* text,
                                              qiv_intervention** out);
QIV_API qiv_status qiv_intervention_to_json(const qiv_intervention* k,
                                            char** out);
QIV_API qiv_status qiv_intervention_input_dim(const qiv_intervention* k,
                                              int32_t* out);
QIV_API qiv_status qiv_intervention_n_outcomes(const qiv_intervention* k,
                                               int32_t* out);
QIV_API qiv_status qiv_intervention_outcome_label(const qiv_intervention* k,
                                                  int32_t index, char** out);
QIV_API void qiv_intervention_free(qiv_intervention* k);

/* Unnormalized conditional state for one outcome; its trace is the outcome
 * probability. */
QIV_API qiv_status qiv_apply_selective(const qiv_intervention* k,
                                       const qiv_density* rho,
                                       const char* outcome,
                                       qiv_density** out);
/* Outcome-averaged map; requires homogeneous output dimensions. */
QIV_API qiv_status qiv_apply_nonselective(const qiv_intervention* k,
                                          const qiv_density* rho,
                                          qiv_density** out);
/* Probabilities in outcome declaration order; `out` must hold n_outcomes
 * doubles. */
QIV_API qiv_status qiv_outcome_probabilities(const qiv_intervention* k,
                                             const qiv_density* rho,
                                             double* out);
QIV_API qiv_status qiv_povm_of(const qiv_intervention* k, qiv_povm** out);

/* ---- adaptive chains ------------------------------------------------- */

/* Branch completeness is reported by qiv_refinement_check rather than
 * enforced at load time. */
QIV_API qiv_status qiv_adaptive_from_json(const char* text,
                                          qiv_adaptive** out);
QIV_API void qiv_adaptive_free(qiv_adaptive* a);

/* Composed intervention: `first`, then the branch of `later` selected by
 * the first outcome; labels "nu|mu". */
QIV_API qiv_status qiv_compose(const qiv_adaptive* later,
                               const qiv_intervention* first,
                               qiv_intervention** out);

/* Independent simultaneous interventions on two subsystems; labels
 * "mu&nu". */
QIV_API qiv_status qiv_tensor_intervention(const qiv_intervention* k1,
                                           const qiv_intervention* k2,
                                           qiv_intervention** out);

/* Second-party intervention adapted to the first party's outcome; labels
 * "nu|mu". */
QIV_API qiv_status qiv_adaptive_tensor(const qiv_intervention* k1,
                                       const qiv_adaptive* k2_by_outcome,
                                       qiv_intervention** out);

/* Per-branch report {"branches": [{"on", "complete",
 * "completeness_deviation", "povm_sum_deviation"}, ...]}. */
QIV_API qiv_status qiv_refinement_check(const qiv_adaptive* later,
                                        const qiv_intervention* first,
                                        char** report_json);

/* ---- dilation -------------------------------------------------------- */

/* Kraus family A_mu = sqrt(E_mu) implementing the POVM. */
QIV_API qiv_status qiv_kraus_from_povm(const qiv_povm* p,
                                       qiv_intervention** out);
QIV_API qiv_status qiv_isometry_from_kraus(const qiv_intervention* k,
                                           qiv_dilation** out);
QIV_API qiv_status qiv_dilation_from_json(const char* text,
                                          qiv_dilation** out);
QIV_API qiv_status qiv_dilation_to_json(const qiv_dilation* d, char** out);
/* Square unitary extending the dilation rows (matrix JSON). */
QIV_API qiv_status qiv_dilation_complete_unitary(const qiv_dilation* d,
                                                 char** matrix_json);
/* Premeasured composite state for a pure state JSON; the result includes
 * per-outcome block weights. */
QIV_API qiv_status qiv_dilation_premeasure(const qiv_dilation* d,
                                           const char* pure_state_json,
                                           char** composite_json);
QIV_API void qiv_dilation_free(qiv_dilation* d);

/* ---- decoherence ----------------------------------------------------- */

/* Off-diagonal overlap scaling scan; returns {"rows": [{"N",
 * "rms_offdiag", "stderr"}, ...], "slope", "slope_stderr"}. mode is
 * QIV_MODE_PURE or QIV_MODE_MIXED. */
QIV_API qiv_status qiv_decohere_scan(const int32_t* env_dims, int32_t n_dims,
                                     int32_t trials, int32_t mode,
                                     uint64_t seed, char** result_json);

/* ---- Lindblad -------------------------------------------------------- */

QIV_API qiv_status qiv_generator_from_json(const char* text,
                                           qiv_generator** out);
QIV_API void qiv_generator_free(qiv_generator* g);

/* Fixed-step RK4 trajectory; returns {"rows": [{"t", "rho"}, ...]}. */
QIV_API qiv_status qiv_lindblad_series(const qiv_generator* g,
                                       const char* state_json, double t,
                                       double dt, char** result_json);

/* One coarse step as an intervention ("slow" + one "jump_<j>" per jump
 * operator). */
QIV_API qiv_status qiv_kraus_step(const qiv_generator* g, double delta_t,
                                  qiv_intervention** out);

/* Repeated coarse steps versus the integrated solution at time t; returns
 * {"rows": [{"delta_t", "trace_distance"}, ...], "fitted_order"}. */
QIV_API qiv_status qiv_lindblad_compare(const qiv_generator* g,
                                        const char* state_json, double t,
                                        const double* delta_ts,
                                        int32_t n_delta_ts,
                                        char** result_json);

/* ---- record sampling ------------------------------------------------- */

QIV_API qiv_status qiv_scenario_from_json(const char* text,
                                          qiv_scenario** out);
/* Options from the scenario file; has_* flags are 0/1. */
QIV_API qiv_status qiv_scenario_options(const qiv_scenario* s,
                                        int32_t* has_shots, uint64_t* shots,
                                        int32_t* has_seed, uint64_t* seed);
/* Samples records; returns {"shots", "rows": [{"record": [label, ...],
 * "exact_probability", "empirical_frequency"}, ...]} with one row per
 * possible record in declaration order. */
QIV_API qiv_status qiv_scenario_sample(const qiv_scenario* s, uint64_t shots,
                                       uint64_t seed, char** result_json);
QIV_API void qiv_scenario_free(qiv_scenario* s);

#ifdef __cplusplus
}
#endif

#endif /* QIV_H */
