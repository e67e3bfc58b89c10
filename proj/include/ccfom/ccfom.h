/* ccfom C API. Every function returns a ccfom_status; on failure the
 * message is available from ccfom_last_error() (per thread). Handles are
 * opaque and owned by the caller once created. */
#ifndef CCFOM_CCFOM_H
#define CCFOM_CCFOM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CCFOM_BUILDING_LIBRARY)
#    define CCFOM_API __declspec(dllexport)
#  else
#    define CCFOM_API __declspec(dllimport)
#  endif
#else
#  define CCFOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccfom_status {
  CCFOM_OK = 0,
  CCFOM_ERR_INVALID_ARGUMENT = 1,
  CCFOM_ERR_CONSTRUCTION = 2,
  CCFOM_ERR_CONFIGURATION = 3,
  CCFOM_ERR_SCHEMA = 4,
  CCFOM_ERR_ORACLE = 5,
  CCFOM_ERR_UNSUPPORTED = 6,
  CCFOM_ERR_GUARD = 7,
  CCFOM_ERR_INTERNAL = 8
} ccfom_status;

typedef enum ccfom_verdict {
  CCFOM_PASS = 0,
  CCFOM_FAIL = 1,
  CCFOM_VACUOUS = 2,
  CCFOM_SKIPPED = 3
} ccfom_verdict;

typedef struct ccfom_problem ccfom_problem;
typedef struct ccfom_trace ccfom_trace;
typedef struct ccfom_audit ccfom_audit;
typedef struct ccfom_result ccfom_result;

typedef struct ccfom_problem_info {
  size_t dim;
  int has_lipschitz_f; /* G */
  double lipschitz_f;
  int has_lipschitz_grad; /* L */
  double lipschitz_grad;
  int has_optimal_value;
  double optimal_value;
  int differentiable;
} ccfom_problem_info;

typedef struct ccfom_record {
  size_t k;
  double fx;
  double lhs;
  double certificate; /* -HUGE_VAL when vacuous */
  int vacuous;
  double mu;
  int has_theta;
  double theta;
  int has_theorem_bound;
  double theorem_bound;
  double residual_chain_max;
  int has_residual_induction;
  double residual_induction;
  ccfom_verdict verdict;
} ccfom_record;

typedef struct ccfom_overrides {
  int has_eps_rel;
  double eps_rel;
  int has_eps_abs;
  double eps_abs;
  unsigned workers; /* 0 keeps the config value */
} ccfom_overrides;

CCFOM_API const char* ccfom_version(void);
CCFOM_API const char* ccfom_last_error(void);

/* Problems are built from catalog ids such as "quad:diag=1,10". */
CCFOM_API ccfom_status ccfom_problem_create(const char* id, ccfom_problem** out);
CCFOM_API void ccfom_problem_destroy(ccfom_problem* p);
CCFOM_API ccfom_status ccfom_problem_info_get(const ccfom_problem* p, ccfom_problem_info* out);
CCFOM_API ccfom_status ccfom_problem_value(const ccfom_problem* p, const double* x, size_t n, double* out);
CCFOM_API ccfom_status ccfom_problem_subgradient(const ccfom_problem* p, const double* x, size_t n, double* g_out);
/* +HUGE_VAL outside the conjugate's domain. */
CCFOM_API ccfom_status ccfom_problem_conjugate(const ccfom_problem* p, const double* z, size_t n, double* out);
CCFOM_API ccfom_status ccfom_problem_fenchel_gap(const ccfom_problem* p, const double* z, const double* x, size_t n,
                                                 double* out);

/* method: "subgradient", "gradient" or "accelerated". schedule may be NULL
 * (horizon_sqrt for subgradient, inverse_L otherwise). */
CCFOM_API ccfom_status ccfom_run(const ccfom_problem* p, const char* method, const double* x0, size_t n, size_t K,
                                 const char* schedule, ccfom_trace** out);
CCFOM_API void ccfom_trace_destroy(ccfom_trace* t);
CCFOM_API ccfom_status ccfom_trace_length(const ccfom_trace* t, size_t* iterates);
CCFOM_API ccfom_status ccfom_trace_value(const ccfom_trace* t, size_t k, double* fx);
CCFOM_API ccfom_status ccfom_trace_iterate(const ccfom_trace* t, size_t k, double* x_out, size_t n);

CCFOM_API ccfom_status ccfom_audit_create(const ccfom_problem* p, const ccfom_trace* t, double eps_rel, double eps_abs,
                                          ccfom_audit** out);
CCFOM_API void ccfom_audit_destroy(ccfom_audit* a);
CCFOM_API ccfom_status ccfom_audit_counts(const ccfom_audit* a, size_t* records, size_t* failures, size_t* vacuous);
CCFOM_API ccfom_status ccfom_audit_record(const ccfom_audit* a, size_t index, ccfom_record* out);

/* Commands. The status reports whether the command could be dispatched;
 * the process exit code (0 pass, 2 verification failure, 3 config/schema,
 * 4 oracle failure) and a one-line summary live in the result. */
CCFOM_API ccfom_status ccfom_cmd_run(const char* config, const char* out_dir, const ccfom_overrides* o,
                                     ccfom_result** out);
CCFOM_API ccfom_status ccfom_cmd_verify(const char* trace_csv, const char* out_dir, const ccfom_overrides* o,
                                        ccfom_result** out);
CCFOM_API ccfom_status ccfom_cmd_sweep(const char* config, const char* out_dir, const ccfom_overrides* o,
                                       ccfom_result** out);
CCFOM_API ccfom_status ccfom_cmd_conjecture(const char* config, const char* out_dir, const ccfom_overrides* o,
                                            ccfom_result** out);
CCFOM_API int ccfom_result_exit_code(const ccfom_result* r);
CCFOM_API const char* ccfom_result_summary(const ccfom_result* r);
CCFOM_API void ccfom_result_destroy(ccfom_result* r);

#ifdef __cplusplus
}
#endif

#endif
