/*
 * C interface of the riskmdp shared library.
 *
 * Objects are opaque handles created and destroyed by the library; every
 * fallible call returns an rmdp_status and leaves a human-readable message
 * for the most recent failure in thread-local storage (rmdp_last_error).
 * Array accessors copy into caller-owned buffers and return the full length,
 * so a NULL buffer (or cap 0) queries the required size.
 */
#ifndef RISKMDP_RISKMDP_H
#define RISKMDP_RISKMDP_H

#include <stdint.h>

#if defined(_WIN32)
#define RMDP_API __declspec(dllexport)
#else
#define RMDP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rmdp_mdp rmdp_mdp;
typedef struct rmdp_report rmdp_report;

typedef enum rmdp_status {
    RMDP_OK = 0,
    RMDP_ERR_INVALID_ARGUMENT = 1,
    RMDP_ERR_IO = 2,
    RMDP_ERR_PARSE = 3,
    RMDP_ERR_VALIDATION = 4,
    RMDP_ERR_SOLVER = 5,
    RMDP_ERR_INTERNAL = 6
} rmdp_status;

typedef enum rmdp_algorithm {
    RMDP_ALGO_VI = 0,
    RMDP_ALGO_SNM1 = 1,
    RMDP_ALGO_SNM2 = 2,
    RMDP_ALGO_SNM2_WARM = 3,
    RMDP_ALGO_SNM3 = 4,
    RMDP_ALGO_OPI = 5
} rmdp_algorithm;

typedef struct rmdp_solve_options {
    rmdp_algorithm algorithm;
    double zeta;       /* CVaR confidence level in (0, 1]; 1 means expectation */
    double tol;        /* outer stop on the Bellman residual infinity norm */
    double inner_tol;  /* inner tolerance of SNM I / SNM II */
    int64_t max_outer;
    int64_t max_inner;
    int64_t opi_sweeps; /* w: risk-averse sweeps per OPI outer step */
} rmdp_solve_options;

RMDP_API const char* rmdp_version(void);

/* Message describing the most recent failing call on this thread. */
RMDP_API const char* rmdp_last_error(void);

/* Fills the documented defaults: VI, zeta 1, tol 1e-6, inner_tol 1e-6,
 * max_outer 100000, max_inner 10000, opi_sweeps 20. */
RMDP_API void rmdp_solve_options_init(rmdp_solve_options* opts);

RMDP_API rmdp_status rmdp_mdp_random(int64_t n, int64_t m, double gamma, uint64_t seed,
                                     rmdp_mdp** out);
RMDP_API rmdp_status rmdp_mdp_load_file(const char* path, rmdp_mdp** out);
RMDP_API rmdp_status rmdp_mdp_save_file(const rmdp_mdp* mdp, const char* path);
/* RMDP_OK when every invariant holds; RMDP_ERR_VALIDATION otherwise, with
 * the violation list available through rmdp_last_error. */
RMDP_API rmdp_status rmdp_mdp_validate(const rmdp_mdp* mdp);
RMDP_API int64_t rmdp_mdp_num_states(const rmdp_mdp* mdp);
RMDP_API int64_t rmdp_mdp_num_actions(const rmdp_mdp* mdp);
RMDP_API double rmdp_mdp_discount(const rmdp_mdp* mdp);
RMDP_API void rmdp_mdp_free(rmdp_mdp* mdp);

/* Runs the selected solver. Non-convergence within the iteration budget is
 * not an error: the call succeeds and the report says converged = 0. */
RMDP_API rmdp_status rmdp_solve(const rmdp_mdp* mdp, const rmdp_solve_options* opts,
                                rmdp_report** out);

RMDP_API int64_t rmdp_report_outer_iters(const rmdp_report* rep);
RMDP_API int64_t rmdp_report_inner_iters(const rmdp_report* rep);
RMDP_API int64_t rmdp_report_inner_failures(const rmdp_report* rep);
RMDP_API uint64_t rmdp_report_lp_evals(const rmdp_report* rep);
RMDP_API double rmdp_report_final_residual(const rmdp_report* rep);
RMDP_API double rmdp_report_wall_seconds(const rmdp_report* rep);
RMDP_API int rmdp_report_converged(const rmdp_report* rep);
RMDP_API int64_t rmdp_report_residual_history(const rmdp_report* rep, double* buf,
                                              int64_t cap);
RMDP_API int64_t rmdp_report_value(const rmdp_report* rep, double* buf, int64_t cap);
RMDP_API int64_t rmdp_report_policy(const rmdp_report* rep, int64_t* buf, int64_t cap);
RMDP_API void rmdp_report_free(rmdp_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* RISKMDP_RISKMDP_H */
