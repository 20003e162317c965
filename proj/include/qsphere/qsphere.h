#ifndef QSPHERE_QSPHERE_H
#define QSPHERE_QSPHERE_H

/* C interface to the quantum sphere groupoid toolkit.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every function returning qs_status leaves a message for qs_last_error()
 * (per thread) when it fails. String outputs follow the buffer/needed
 * convention: the call writes at most `cap` bytes including the terminating
 * NUL and always stores the full length (without NUL) in *needed; pass
 * buf = NULL, cap = 0 to query the size. A short buffer gives
 * QS_ERR_BUFFER_TOO_SMALL. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) && defined(QS_BUILDING)
#define QS_API __declspec(dllexport)
#elif defined(_WIN32)
#define QS_API __declspec(dllimport)
#else
#define QS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
  QS_OK = 0,
  QS_ERR_INVALID_ARGUMENT = 1,
  QS_ERR_INVALID_UNIT = 2,
  QS_ERR_NOT_COMPOSABLE = 3,
  QS_ERR_NOT_IN_SUBGROUPOID = 4,
  QS_ERR_DOMAIN = 5,
  QS_ERR_NOT_HERMITIAN = 6,
  QS_ERR_PARSE = 7,
  QS_ERR_BUFFER_TOO_SMALL = 8,
  QS_ERR_INTERNAL = 99
} qs_status;

typedef struct qs_element qs_element;
typedef struct qs_matrix qs_matrix;
typedef struct qs_report qs_report;

QS_API const char* qs_last_error(void);
QS_API const char* qs_status_string(qs_status status);

/* ---- algebra elements ------------------------------------------------- */

/* Generator Y_m (1 <= m <= n+1) or its adjoint. */
QS_API qs_status qs_element_generator(int n, int m, int adjoint, qs_element** out);
/* Sums of words, e.g. "Y1.Y1* + Y2*.Y2 - 1"; see the README for the syntax. */
QS_API qs_status qs_element_parse(int n, const char* expr, qs_element** out);
QS_API qs_status qs_element_convolve(const qs_element* f, const qs_element* g, qs_element** out);
QS_API qs_status qs_element_adjoint(const qs_element* f, qs_element** out);
/* 1 if the element is provably zero, 0 otherwise. */
QS_API qs_status qs_element_is_zero(const qs_element* f, int* out);
QS_API qs_status qs_element_to_string(const qs_element* f, char* buf, size_t cap, size_t* needed);
QS_API void qs_element_free(qs_element* f);

/* ---- window representations ------------------------------------------ */

typedef struct qs_repr_config {
  int n;
  long N;
  double q;
  double theta;
  const double* phi; /* n angles, or NULL for all zero */
  size_t phi_count;
} qs_repr_config;

QS_API qs_status qs_matrix_build(const qs_element* f, const qs_repr_config* cfg, qs_matrix** out);
/* M^H M, which is Hermitian. */
QS_API qs_status qs_matrix_gram(const qs_matrix* m, qs_matrix** out);
QS_API qs_status qs_matrix_dim(const qs_matrix* m, size_t* out);
QS_API qs_status qs_matrix_export(const qs_matrix* m, char* buf, size_t cap, size_t* needed);
/* Ascending eigenvalues of a Hermitian matrix; *count receives dim. */
QS_API qs_status qs_matrix_spectrum(const qs_matrix* m, double* out, size_t cap, size_t* count);
QS_API qs_status qs_matrix_op_norm(const qs_matrix* m, double* out);
QS_API void qs_matrix_free(qs_matrix* m);

/* ---- check suites ----------------------------------------------------- */

typedef enum qs_check_kind {
  QS_CHECK_RELATIONS = 0,
  QS_CHECK_LEMMA = 1,
  QS_CHECK_THEOREM = 2,
  QS_CHECK_SETS = 3,
  QS_CHECK_EXACTNESS = 4,
  QS_CHECK_QINDEP = 5
} qs_check_kind;

#define QS_MAX_LIST 16

typedef struct qs_check_params {
  int n;
  double q[QS_MAX_LIST];
  size_t q_count;
  long N;
  double theta[QS_MAX_LIST];
  size_t theta_count;
  double phi[QS_MAX_LIST];
  size_t phi_count;
  int L;
  long zmax;
  long xmax;
  double tol;
  uint64_t seed;
  long samples;
} qs_check_params;

/* Defaults: n=2, q={0.5}, N=10, angles {0, 2pi/7, pi/2}, L=3, zmax=xmax=3,
 * tol=1e-12, seed=1, samples=10000. */
QS_API qs_status qs_check_params_init(qs_check_params* p);
QS_API qs_status qs_run_check(qs_check_kind kind, const qs_check_params* p, qs_report** out);
QS_API int qs_report_passed(const qs_report* r);
/* include_timing adds wall_time_s, which makes the output non-deterministic. */
QS_API qs_status qs_report_json(const qs_report* r, int include_timing, char* buf, size_t cap,
                                size_t* needed);
QS_API void qs_report_free(qs_report* r);

#ifdef __cplusplus
}
#endif

#endif
