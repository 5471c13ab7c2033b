/*
 * Copyright 2026 The kplane Authors
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

#ifndef KPLANE_KPLANE_H_
#define KPLANE_KPLANE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KP_API __declspec(dllexport)
#else
#define KP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 1..11 match the error classes of the numerical core. */
typedef enum kp_status {
  KP_OK = 0,
  KP_INVALID_ARGUMENT = 1,
  KP_POLE = 2,
  KP_STRIP_VIOLATION = 3,
  KP_DIVERGENCE = 4,
  KP_DEGENERATE = 5,
  KP_TAYLOR_FAILURE = 6,
  KP_CLASS_VIOLATION = 7,
  KP_NON_CONVERGENCE = 8,
  KP_GRID_TOO_SMALL = 9,
  KP_MISSING_COEFFICIENT = 10,
  KP_NEGATIVE_INTEGER = 11,
  KP_INTERNAL = 99
} kp_status;

typedef struct kp_field kp_field;
typedef struct kp_config kp_config;
typedef struct kp_report kp_report;

/* Name of a status code, e.g. "strip_violation". */
KP_API const char* kp_status_name(int status);

/* Message of the last failing call on this thread; "" after success. */
KP_API const char* kp_last_error(void);

/* Library version string. */
KP_API const char* kp_version(void);

/* Frees strings returned by this library. */
KP_API void kp_free(void* ptr);

/* ---- fields ---------------------------------------------------------- */

/* Newline-separated catalog names (caller frees with kp_free). */
KP_API int kp_catalog_names(char** out);

/* Catalog field such as "gaussian", "cap:0.75", "logmod", "rational:2". */
KP_API int kp_field_create(const char* name, int n, kp_field** out);
KP_API void kp_field_destroy(kp_field* field);
KP_API int kp_field_dim(const kp_field* field);
KP_API int kp_field_eval(const kp_field* field, const double* x, double* out);

/* ---- configuration --------------------------------------------------- */

/* Defaults: rho 0.5, automatic Taylor order, automatic truncation,
   tolerance 1e-9, default sphere order, seed 1. */
KP_API int kp_config_create(kp_config** out);
KP_API void kp_config_destroy(kp_config* cfg);
KP_API int kp_config_set_rho(kp_config* cfg, double rho);
/* Negative selects the automatic order. */
KP_API int kp_config_set_taylor_order(kp_config* cfg, int order);
/* Non-positive selects the automatic radius. */
KP_API int kp_config_set_truncation(kp_config* cfg, double radius);
KP_API int kp_config_set_tolerance(kp_config* cfg, double tolerance);
/* Non-positive selects the default order for the dimension. */
KP_API int kp_config_set_sphere_order(kp_config* cfg, int order);
KP_API int kp_config_set_seed(kp_config* cfg, uint64_t seed);

/* ---- transforms ------------------------------------------------------ */

/* Riesz potential I^alpha f(x); x has kp_field_dim entries. */
KP_API int kp_riesz(const kp_field* field, double alpha_re, double alpha_im,
                    const double* x, const kp_config* cfg, double* out_re,
                    double* out_im);

/* Planar line integrals: rows*3 doubles (angle, offset, value) written to
   out, rows = angles * offsets. */
KP_API int kp_sinogram(const kp_field* field, int angles, int offsets,
                       double half_width, double* out);

/* Dual transform of the k-plane transform at x, radial-integral route. */
KP_API int kp_dual(const kp_field* field, int k, const double* x,
                   const kp_config* cfg, double* out);

/* Same quantity averaged over `frames` seeded planes through x, each
   integrated by the forward transform. */
KP_API int kp_dual_sampled(const kp_field* field, int k, const double* x,
                           int frames, const kp_config* cfg, double* out);

/* ---- inversion ------------------------------------------------------- */

/* points: count * n doubles, row-major. */
KP_API int kp_invert_hoelder(const kp_field* field, int k, const double* points,
                             size_t count, const kp_config* cfg, kp_report** out);

/* s_sequence may be NULL (default -k + 2^-j, j = 2..8). */
KP_API int kp_invert_limit(const kp_field* field, int k, const double* points,
                           size_t count, const double* s_sequence, size_t s_count,
                           const kp_config* cfg, kp_report** out);

/* Grid of 2 * half_cells + 1 points per axis around center with spacing h. */
KP_API int kp_invert_laplacian(const kp_field* field, int k, const double* center,
                               int half_cells, double h, const kp_config* cfg,
                               kp_report** out);

KP_API void kp_report_destroy(kp_report* report);
KP_API size_t kp_report_size(const kp_report* report);
KP_API int kp_report_dim(const kp_report* report);
KP_API int kp_report_point(const kp_report* report, size_t i, double* x);
KP_API int kp_report_values(const kp_report* report, size_t i, double* recovered,
                            double* reference, double* abs_error);
KP_API double kp_report_max_abs_error(const kp_report* report);
KP_API double kp_report_seconds(const kp_report* report);
/* Limit route: 1 when the trace at point i settled, else 0. */
KP_API int kp_report_converged(const kp_report* report, size_t i, int* converged);
/* Laplacian route with k = 2: measured and expected Laplacian of the dual
   transform at point i. KP_INVALID_ARGUMENT when absent. */
KP_API int kp_report_darboux(const kp_report* report, size_t i, double* measured,
                             double* expected);
/* CSV text of the report (caller frees with kp_free). */
KP_API int kp_report_csv(const kp_report* report, char** out);

/* ---- acceptance suite ------------------------------------------------ */

typedef enum kp_relation { KP_BELOW = 0, KP_ABOVE = 1, KP_INSIDE = 2 } kp_relation;

typedef struct kp_check_view {
  const char* name;
  const char* anchor;
  double measured;
  double bound;
  double upper;
  int relation; /* kp_relation */
  int pass;
  const char* error; /* "" unless the computation failed */
  const char* summary; /* e.g. "3.1e-07 < 1e-05" */
} kp_check_view;

typedef struct kp_criterion_view {
  int id;
  const char* title;
  int pass;
  double seconds;
  size_t check_count;
  const kp_check_view* checks;
} kp_criterion_view;

typedef void (*kp_criterion_callback)(const kp_criterion_view* criterion, void* user);

KP_API int kp_criterion_count(void);

/* Runs the acceptance criteria listed in `only` (all when count is 0),
   calling back after each. *failed receives the number of failing
   criteria. */
KP_API int kp_verify(const int* only, size_t count, uint64_t seed,
                     kp_criterion_callback callback, void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif /* KPLANE_KPLANE_H_ */
