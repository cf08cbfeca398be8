// Copyright 2026 The vandcond Authors
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

/* C interface to vandcond. Objects are opaque handles released with the
 * matching *_free function (NULL is accepted). Every call returns a vc_status;
 * on failure vc_last_error_message() holds a description for the calling
 * thread until its next failing call.
 *
 * Text results use the two-call convention: pass buf == NULL (or too small a
 * cap) to learn the size through *needed, which counts the terminating NUL. */
#ifndef VANDCOND_VANDCOND_H
#define VANDCOND_VANDCOND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VC_API __declspec(dllexport)
#else
#define VC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vc_status {
  VC_OK = 0,
  VC_ERR_INVALID_ARGUMENT = 1,
  VC_ERR_DUPLICATE_NODES = 2,
  VC_ERR_NON_CONVERGENCE = 3,
  VC_ERR_NOT_HERMITIAN = 4,
  VC_ERR_SINGULAR = 5,
  VC_ERR_DIMENSION_MISMATCH = 6,
  VC_ERR_AMBIGUOUS_MEMBERSHIP = 7,
  VC_ERR_INVALID_CLUSTER = 8,
  VC_ERR_COLLISION = 9,
  VC_ERR_NO_ADMISSIBLE_LAMBDA = 10,
  VC_ERR_DELTA_TOO_LARGE = 11,
  VC_ERR_NO_FREE_INTERVAL = 12,
  VC_ERR_INSUFFICIENT_DATA = 13,
  VC_ERR_IO = 14,
  VC_ERR_RANGE = 15,
  VC_ERR_NULL_POINTER = 100,
  VC_ERR_BUFFER_TOO_SMALL = 101,
  VC_ERR_INTERNAL = 102
} vc_status;

VC_API const char* vc_status_string(vc_status status);
VC_API const char* vc_last_error_message(void);
VC_API const char* vc_version(void);

/* ---- nodes and clusters ------------------------------------------------ */

typedef struct vc_nodes vc_nodes;

typedef struct vc_cluster_params {
  double delta;
  double rho;
  size_t s;
  size_t ell;
  double tau;
} vc_cluster_params;

VC_API vc_status vc_nodes_create(const double* t, size_t count, vc_nodes** out);
VC_API vc_status vc_nodes_load(const char* path, vc_nodes** out);
VC_API vc_status vc_nodes_save(const vc_nodes* nodes, const char* path);
VC_API vc_status vc_nodes_gen_c1(size_t s, size_t ell, double delta, vc_nodes** out);
VC_API vc_status vc_nodes_gen_c2(size_t s, size_t ell, double delta, vc_nodes** out);
/* rho_prime and tau_prime may be NULL. */
VC_API vc_status vc_nodes_gen_xmin(size_t s, size_t ell, double delta, vc_nodes** out,
                                   double* rho_prime, double* tau_prime);
VC_API void vc_nodes_free(vc_nodes* nodes);
VC_API size_t vc_nodes_count(const vc_nodes* nodes);
/* Copies min(count, cap) sorted nodes. */
VC_API vc_status vc_nodes_get(const vc_nodes* nodes, double* out, size_t cap);
VC_API vc_status vc_nodes_min_separation(const vc_nodes* nodes, double* out);

/* ell == 0 or tau <= 0 means "infer". */
VC_API vc_status vc_infer_cluster_params(const vc_nodes* nodes, size_t ell, double tau,
                                         vc_cluster_params* out);
/* *ok is 1 when the configuration is clustered; report lists violations. */
VC_API vc_status vc_validate_cluster(const vc_nodes* nodes, const vc_cluster_params* params,
                                     int* ok, char* report, size_t cap, size_t* needed);

/* ---- matrices ---------------------------------------------------------- */

typedef struct vc_matrix vc_matrix;

typedef enum vc_sigma_mode { VC_SIGMA_GRAM = 0, VC_SIGMA_BIDIAGONAL = 1 } vc_sigma_mode;
typedef enum vc_sinc_route {
  VC_SINC_EIGEN = 0,
  VC_SINC_QUADRATURE = 1,
  VC_SINC_EXTENDED = 2
} vc_sinc_route;

VC_API vc_status vc_vandermonde(const vc_nodes* nodes, double omega, int64_t n_half,
                                vc_matrix** out);
VC_API vc_status vc_gram_finite(const vc_nodes* nodes, double omega, int64_t n_half,
                                vc_matrix** out);
VC_API vc_status vc_gram_sinc(const vc_nodes* nodes, double omega, vc_matrix** out);
VC_API vc_status vc_prolate_matrix(size_t s, double w, vc_matrix** out);
VC_API void vc_matrix_free(vc_matrix* m);
VC_API size_t vc_matrix_rows(const vc_matrix* m);
VC_API size_t vc_matrix_cols(const vc_matrix* m);
VC_API vc_status vc_matrix_get(const vc_matrix* m, size_t i, size_t j, double* re, double* im);
/* Ascending eigenvalues of a Hermitian matrix; copies min(n, cap). */
VC_API vc_status vc_matrix_eigenvalues(const vc_matrix* m, double* out, size_t cap);
VC_API vc_status vc_matrix_sigma_min(const vc_matrix* m, vc_sigma_mode mode, double* out);
VC_API vc_status vc_lambda_min_sinc(const vc_nodes* nodes, double omega, vc_sinc_route route,
                                    double* out);
VC_API vc_status vc_prolate_lambda_min(size_t s, double w, vc_sinc_route route, double* out);

/* ---- bounds ------------------------------------------------------------ */

VC_API double vc_srf(double delta, double omega);
VC_API vc_status vc_main_constant(size_t s, double* out);
VC_API vc_status vc_slepian_constant(size_t s, double* out);
/* (1/pi)(2 pi W)^{2s-1} C(s); *valid is 1 inside the asymptotic regime. */
VC_API vc_status vc_slepian_lambda(size_t s, double w, double* out, int* valid);
VC_API vc_status vc_omega_window(const vc_cluster_params* params, double* lo, double* hi);
VC_API vc_status vc_n_threshold(size_t s, double omega, int64_t* out);
/* CSV table of every bound; n_half <= 0 omits the finite-N rows. */
VC_API vc_status vc_bounds_csv(const vc_nodes* nodes, const vc_cluster_params* params,
                               double omega, int64_t n_half, char* buf, size_t cap,
                               size_t* needed);

/* ---- certificates ------------------------------------------------------ */

typedef struct vc_certificate vc_certificate;

typedef struct vc_certificate_summary {
  int64_t n_half;
  double omega;
  int64_t m;
  double lambda;
  double cluster_margin;
  double far_margin;
  size_t block_count;
  double certified_sigma;
  double crude_sigma;
  int has_oracle;
  double oracle_sigma;
} vc_certificate_summary;

VC_API vc_status vc_certify(const vc_nodes* nodes, const vc_cluster_params* params, double omega,
                            int64_t n_half, double xi_fraction, vc_certificate** out);
VC_API void vc_certificate_free(vc_certificate* cert);
VC_API vc_status vc_certificate_attach_oracle(vc_certificate* cert, const vc_nodes* nodes);
VC_API vc_status vc_certificate_summary_get(const vc_certificate* cert,
                                            vc_certificate_summary* out);
VC_API vc_status vc_certificate_text(const vc_certificate* cert, char* buf, size_t cap,
                                     size_t* needed);
/* *ok is 1 when re-verification succeeds; otherwise message holds the
 * first discrepancy. */
VC_API vc_status vc_certificate_verify(const vc_certificate* cert, const vc_nodes* nodes,
                                       const vc_cluster_params* params, int* ok, char* message,
                                       size_t cap, size_t* needed);

/* ---- measures and minimax ---------------------------------------------- */

typedef struct vc_measure vc_measure;

VC_API vc_status vc_measure_create(double delta, const int64_t* indices, const double* re,
                                   const double* im, size_t count, vc_measure** out);
VC_API vc_status vc_measure_load(const char* path, vc_measure** out);
VC_API vc_status vc_measure_save(const vc_measure* mu, const char* path);
VC_API void vc_measure_free(vc_measure* mu);
VC_API size_t vc_measure_size(const vc_measure* mu);
VC_API double vc_measure_delta(const vc_measure* mu);
VC_API vc_status vc_measure_get(const vc_measure* mu, size_t j, int64_t* index, double* re,
                                double* im);
VC_API vc_status vc_measure_norm_gram(const vc_measure* mu, double omega, double* out);
VC_API vc_status vc_measure_norm_quadrature(const vc_measure* mu, double omega, size_t q,
                                            double* out);

typedef struct vc_merge_result {
  double rho_prime;
  double tau_prime;
  size_t ell_prime;
  size_t s_prime;
  size_t interval_index;
  double interval_lo;
  double interval_hi;
} vc_merge_result;

/* diff may be NULL; otherwise receives mu1 - mu2. */
VC_API vc_status vc_merge_witness(const vc_measure* mu1, const vc_measure* mu2,
                                  const vc_cluster_params* params, double ladder_ratio,
                                  vc_merge_result* out, vc_measure** diff);

typedef struct vc_minimax_record {
  size_t s;
  size_t ell;
  double delta;
  double omega;
  double epsilon;
  double srf;
  double lambda_min;
  double mu_norm;
  double muhat_norm;
  double implied_lower;
  double ratio;
  double rho_prime;
  double tau_prime;
} vc_minimax_record;

/* mu, mu1, mu2 may each be NULL. */
VC_API vc_status vc_minimax(size_t s, size_t ell, double delta, double omega, double epsilon,
                            vc_minimax_record* out, vc_measure** mu, vc_measure** mu1,
                            vc_measure** mu2);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct vc_sweep_config vc_sweep_config;
typedef struct vc_sweep vc_sweep;

typedef struct vc_sweep_record {
  double delta;
  double omega;
  double srf;
  double lambda_min_g;
  int has_sigma_min_vn;
  double sigma_min_vn;
  int has_n_half;
  int64_t n_half;
  double bound_main_lambda;
  double bound_upper_prolate;
  int has_certified_sigma;
  double certified_sigma;
  int in_window;
} vc_sweep_record;

typedef struct vc_line_fit {
  double slope;
  double intercept;
  double r_squared;
  size_t count;
} vc_line_fit;

#define VC_MAX_OVERLAYS 4

typedef struct vc_preset_info {
  double fit_lo;
  double fit_hi;
  double expected_slope;
  size_t overlay_count;
  double overlay_exponent[VC_MAX_OVERLAYS];
  char overlay_label[VC_MAX_OVERLAYS][32];
} vc_preset_info;

/* Least-squares line through (log x, log y). */
VC_API vc_status vc_fit_loglog(const double* x, const double* y, size_t count, vc_line_fit* out);

VC_API vc_status vc_sweep_config_create(vc_sweep_config** out);
/* name: "fig1", "fig4" (variant "C1" or "C2") or "fig5"; info may be NULL. */
VC_API vc_status vc_sweep_config_preset(const char* name, const char* variant,
                                        vc_sweep_config** out, vc_preset_info* info);
VC_API void vc_sweep_config_free(vc_sweep_config* cfg);
/* Keys match the CLI flag names; '-' and '_' are interchangeable. */
VC_API vc_status vc_sweep_config_set(vc_sweep_config* cfg, const char* key, const char* value);
VC_API vc_status vc_sweep_config_load(vc_sweep_config* cfg, const char* path);
VC_API vc_status vc_sweep_config_validate(const vc_sweep_config* cfg);

/* threads == 0 uses the VANDCOND_THREADS cap or the hardware count. */
VC_API vc_status vc_sweep_run(const vc_sweep_config* cfg, unsigned threads, vc_sweep** out);
VC_API vc_status vc_sweep_load_csv(const char* path, vc_sweep** out);
VC_API void vc_sweep_free(vc_sweep* sweep);
VC_API size_t vc_sweep_size(const vc_sweep* sweep);
VC_API vc_status vc_sweep_record_get(const vc_sweep* sweep, size_t i, vc_sweep_record* out);
VC_API vc_status vc_sweep_fit(const vc_sweep* sweep, double srf_lo, double srf_hi,
                              vc_line_fit* out);
VC_API vc_status vc_sweep_csv(const vc_sweep* sweep, char* buf, size_t cap, size_t* needed);
VC_API vc_status vc_sweep_write_csv(const vc_sweep* sweep, const char* path);
/* Overlays anchor at the median data point. */
VC_API vc_status vc_sweep_write_svg(const vc_sweep* sweep, const char* path, const char* x_field,
                                    const char* y_field, const double* exponents,
                                    const char* const* labels, size_t overlay_count);

#ifdef __cplusplus
}
#endif

#endif /* VANDCOND_VANDCOND_H */
