#ifndef CSPSTREAM_H
#define CSPSTREAM_H

/*
 * C interface to the cspstream library.
 *
 * Every fallible call returns a csp_status. On failure the message is
 * available from csp_last_error() on the calling thread until the next call.
 * Strings returned through char** are heap-allocated; release them with
 * csp_string_free. Rationals cross the boundary as text ("p/q", integers or
 * decimals).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(CSPSTREAM_BUILD)
#define CSP_API __attribute__((visibility("default")))
#else
#define CSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CSP_OK = 0,
  CSP_ERR_INVALID_ARGUMENT = 1,
  CSP_ERR_PARSE = 2,
  CSP_ERR_IO = 3,
  CSP_ERR_TURNSTILE = 4,     /* a delete drove a constraint weight negative */
  CSP_ERR_INDETERMINATE = 5, /* cutting-plane budget exhausted */
  CSP_ERR_ZERO_WEIGHT = 6,   /* instance has total weight 0 */
  CSP_ERR_TOO_LARGE = 7,
  CSP_ERR_HARD = 8,          /* classifier requested for a hard (gamma, beta) pair */
  CSP_ERR_INTERNAL = 9
} csp_status;

CSP_API const char* csp_last_error(void);
CSP_API const char* csp_status_name(csp_status s);
CSP_API void csp_string_free(char* s);

/* Constraint functions. Character i of `bits` is f at index i, where index 0
 * is (-1,...,-1) and the first coordinate is the most significant bit. */
typedef struct csp_function csp_function;
CSP_API csp_status csp_function_new(const char* bits, int k, csp_function** out);
CSP_API void csp_function_free(csp_function* f);
CSP_API int csp_function_arity(const csp_function* f);
CSP_API csp_status csp_function_rho(const csp_function* f, char** out);

/* Separability verdicts. tol may be NULL for the default 1e-9. */
typedef struct csp_verdict csp_verdict;
CSP_API csp_status csp_decide(const csp_function* f, const char* gamma, const char* beta, const char* tol,
                              csp_verdict** out);
CSP_API void csp_verdict_free(csp_verdict* v);
CSP_API int csp_verdict_is_easy(const csp_verdict* v);
/* One JSON object: verdict, lambda/tau_y/tau_n or mu/dy/dn/slack, cuts. */
CSP_API csp_status csp_verdict_json(const csp_verdict* v, char** out);

/* Distributions over {-1,1}^k. */
typedef struct csp_dist csp_dist;
CSP_API csp_status csp_dist_new(int k, const char* const* probs, csp_dist** out);
CSP_API csp_status csp_dist_read(const char* path, csp_dist** out);
CSP_API csp_status csp_dist_parse(const char* text, csp_dist** out);
CSP_API csp_status csp_dist_to_text(const csp_dist* d, char** out);
CSP_API void csp_dist_free(csp_dist* d);

/* Instance streams. */
typedef struct csp_stream csp_stream;
CSP_API csp_status csp_stream_read(const char* path, csp_stream** out);
CSP_API csp_status csp_stream_parse(const char* text, csp_stream** out);
CSP_API csp_status csp_stream_write(const csp_stream* s, const char* path);
CSP_API csp_status csp_stream_to_text(const csp_stream* s, char** out);
CSP_API void csp_stream_free(csp_stream* s);
CSP_API size_t csp_stream_n(const csp_stream* s);
CSP_API int csp_stream_k(const csp_stream* s);
CSP_API size_t csp_stream_size(const csp_stream* s);
/* CSP_ERR_TURNSTILE if some prefix is invalid; *valid_prefix gets the longest valid prefix. */
CSP_API csp_status csp_stream_validate(const csp_stream* s, size_t* valid_prefix);

/* Exact optimum of the accumulated instance (n <= 26). JSON: value, value_double, assignment. */
CSP_API csp_status csp_brute(const csp_function* f, const csp_stream* s, char** out);

/* Streaming classifier. */
typedef struct csp_classifier csp_classifier;
typedef struct {
  int yes;
  double b_estimate;
  double threshold;
  size_t events;
} csp_classify_result;

/* CSP_ERR_HARD if the verdict is not Easy. repetitions 0 means the default (9). */
CSP_API csp_status csp_classifier_from_verdict(const csp_verdict* v, uint64_t seed, size_t repetitions,
                                               csp_classifier** out);
CSP_API csp_status csp_classifier_new(int k, const char* const* lambda, const char* tau_y, const char* tau_n,
                                      uint64_t seed, size_t repetitions, csp_classifier** out);
CSP_API void csp_classifier_free(csp_classifier* c);
/* One JSON object: lambda, tau_y, tau_n, epsilon, threshold, repetitions, seed. */
CSP_API csp_status csp_classifier_json(const csp_classifier* c, char** out);
/* exact != 0 uses the exact bias instead of sketches. */
CSP_API csp_status csp_classify(const csp_classifier* c, const csp_stream* s, int exact, csp_classify_result* out);

/* Value estimate through the distinguisher grid. eps is a rational string. JSON: beta_prime, distinguishers, accepted. */
CSP_API csp_status csp_estimate(const csp_function* f, const csp_stream* s, const char* eps, uint64_t seed, int exact,
                                char** out);

/* l1 sketch of an integer vector of dimension n (1-based updates). */
typedef struct csp_sketch csp_sketch;
CSP_API csp_status csp_sketch_new(size_t n, double epsilon, uint64_t seed, csp_sketch** out);
CSP_API void csp_sketch_free(csp_sketch* s);
CSP_API csp_status csp_sketch_update(csp_sketch* s, size_t i, int64_t v);
CSP_API csp_status csp_sketch_merge(csp_sketch* s, const csp_sketch* other);
CSP_API double csp_sketch_estimate(const csp_sketch* s);
CSP_API size_t csp_sketch_rows(const csp_sketch* s);

/* Hard-instance generators. */
typedef enum { CSP_GEN_RMD = 0, CSP_GEN_STREAMING = 1, CSP_GEN_PADDED = 2 } csp_gen_mode;

typedef struct {
  csp_gen_mode mode;
  size_t n;
  int k;
  const char* alpha_m; /* hyperedges per block = floor(alpha_m n) */
  size_t T;            /* blocks (ignored in RMD mode) */
  const char* tau;     /* padding fraction, NULL for 0 */
  uint64_t seed;
  const csp_dist* mask;
  const csp_dist* pad; /* required when tau > 0 */
  int include_x_star;  /* record x_star in the metadata */
} csp_gen_params;

/* metadata may be NULL; otherwise receives JSON lines (header, then one mask per event). */
CSP_API csp_status csp_generate(const csp_gen_params* p, csp_stream** out, char** metadata);

/* Full polarization of a distribution. JSON lines, one per step, then {"final": ...}. */
CSP_API csp_status csp_polarize(const csp_dist* d, char** trace);

/* alpha(f) over a beta grid of step grid_step (NULL for 1/720). JSON: alpha, alpha_double, beta_min, decide_calls. */
CSP_API csp_status csp_approx_ratio(const csp_function* f, const char* grid_step, char** out);
/* CSV beta,alpha at beta = beta_step, 2 beta_step, ..., 1. */
CSP_API csp_status csp_ratio_curve(const csp_function* f, const char* beta_step, char** csv);
/* Max-2AND curves at `samples` equally spaced mu in [0, 1]. CSV mu,gamma,beta,ratio,oracle_beta. */
CSP_API csp_status csp_two_and_curves(int samples, char** csv);

#ifdef __cplusplus
}
#endif

#endif
