/* C interface to the cmzv library.
 *
 * Every call takes a context created by cmzv_context_new. Functions return a
 * cmzv_status; on failure cmzv_last_error(ctx) describes what went wrong until
 * the next call on the same context. Strings handed out by the library are
 * JSON documents owned by the caller and released with cmzv_string_free.
 *
 * A context may be used by one thread at a time; separate contexts are
 * independent.
 */
#ifndef CMZV_CMZV_H
#define CMZV_CMZV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CMZV_BUILDING_LIBRARY)
#    define CMZV_API __declspec(dllexport)
#  else
#    define CMZV_API __declspec(dllimport)
#  endif
#else
#  define CMZV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmzv_status {
  CMZV_OK = 0,
  CMZV_INVALID_INPUT = 1,  /* malformed argument or text */
  CMZV_DOMAIN = 2,         /* outside the convergence / validity domain */
  CMZV_ENCODING = 3,       /* word does not encode a composition */
  CMZV_DIVERGENT = 4,      /* non-admissible composition or divergent tail */
  CMZV_CAPACITY = 5,       /* depth, permutation or step cap exceeded */
  CMZV_REWRITE = 6,        /* reduction rewrite precondition violated */
  CMZV_NOT_CONVERGED = 7,  /* quadrature stopped above tolerance; result still set */
  CMZV_INTERNAL = 8
} cmzv_status;

typedef struct cmzv_context cmzv_context;

typedef struct cmzv_numeric_result {
  double value;
  double error_estimate;
  int64_t evaluations;
  int converged;
} cmzv_numeric_result;

CMZV_API cmzv_context* cmzv_context_new(void);
CMZV_API void cmzv_context_free(cmzv_context* ctx);
CMZV_API const char* cmzv_last_error(const cmzv_context* ctx);
CMZV_API const char* cmzv_status_name(cmzv_status status);

/* tol <= 0 restores the depth-dependent default. */
CMZV_API cmzv_status cmzv_set_tolerance(cmzv_context* ctx, double tol);
CMZV_API cmzv_status cmzv_set_depth_cap(cmzv_context* ctx, int cap);
CMZV_API cmzv_status cmzv_set_step_budget(cmzv_context* ctx, size_t budget);
CMZV_API cmzv_status cmzv_set_jobs(cmzv_context* ctx, int jobs);
CMZV_API cmzv_status cmzv_set_seed(cmzv_context* ctx, uint64_t seed);

CMZV_API void cmzv_string_free(char* s);

/* Numeric value of the composition `parts[0..n)`. `bounds` is NULL for the
 * unit lower bounds, or a comma-separated list of positive rationals. */
CMZV_API cmzv_status cmzv_eval(cmzv_context* ctx, const int* parts, size_t n, const char* bounds,
                               cmzv_numeric_result* out);

/* Depth-r unit-cube integral. */
CMZV_API cmzv_status cmzv_unit_cube(cmzv_context* ctx, int r, cmzv_numeric_result* out);

/* Reduction to logs and basis values. JSON:
 * {"composition":[..], "constant":{symbolic constant}, "display":"..",
 *  "steps":n, "findings":[..], "numeric":{numeric result of the reduced form},
 *  "direct":{numeric result}, "residual":x} */
CMZV_API cmzv_status cmzv_reduce(cmzv_context* ctx, const int* parts, size_t n, char** json_out);

/* Shuffle product of two words over {x,y}. JSON: {"word": "p/q", ...}. */
CMZV_API cmzv_status cmzv_shuffle(cmzv_context* ctx, const char* w1, const char* w2, char** json_out);

/* Sum formula report. JSON:
 * {"r":r, "k":k, "rhs":"p/q", "lhs":{numeric result}, "discrepancy":x,
 *  "terms":[{"ks":[..], "composition":[..], "weight":"p/q"}...]} */
CMZV_API cmzv_status cmzv_sumformula(cmzv_context* ctx, int r, int k, char** json_out);

/* Candidate pole hyperplanes. JSON: [{"coeffs":[..], "constant":n}, ...]. */
CMZV_API cmzv_status cmzv_poles(cmzv_context* ctx, int r, int k_max, char** json_out);

/* Runs a verification suite ("all" for every suite). max_weight 0 keeps the
 * suite defaults; corrupt != 0 perturbs log 2 as a harness self-test.
 * JSON: {"suite":..., "failures":n, "checks":[{"suite","name","lhs","rhs",
 * "discrepancy","tolerance","pass","detail"}...]}. *failures receives the
 * number of failing checks. */
CMZV_API cmzv_status cmzv_verify(cmzv_context* ctx, const char* suite, int max_weight, int corrupt,
                                 size_t* failures, char** json_out);

/* Names of the verification suites as a JSON array. */
CMZV_API cmzv_status cmzv_verify_suites(cmzv_context* ctx, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* CMZV_CMZV_H */
