/* C interface to the umoead shared library. All entry points are
 * exception-free; failures return a status code (or NULL for constructors)
 * and leave a message retrievable with umoead_last_error(). Handles are
 * opaque and owned by the caller until the matching *_close() call. */

#ifndef UMOEAD_H
#define UMOEAD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UMOEAD_API __declspec(dllexport)
#else
#define UMOEAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum umoead_status {
    UMOEAD_OK = 0,
    UMOEAD_ERR_INVALID = 1,         /* bad argument / domain error */
    UMOEAD_ERR_CONFIG = 2,          /* invalid configuration */
    UMOEAD_ERR_NOT_AVAILABLE = 3,   /* capability undefined for this problem */
    UMOEAD_ERR_NO_INTERSECTION = 4, /* weight ray misses the known front */
    UMOEAD_ERR_IO = 5,
    UMOEAD_ERR_RUNTIME = 6
} umoead_status;

/* Message describing the most recent failure on this thread. */
UMOEAD_API const char* umoead_last_error(void);

/* ---- benchmark problems ---- */

typedef struct umoead_problem umoead_problem;

/* id is one of the registered lowercase names ("zdt1" ... "dtlz4").
 * n_var = 0 selects the family default dimension. NULL on error. */
UMOEAD_API umoead_problem* umoead_problem_open(const char* id, int n_var);
UMOEAD_API void umoead_problem_close(umoead_problem* problem);

UMOEAD_API int umoead_problem_objectives(const umoead_problem* problem);
UMOEAD_API int umoead_problem_variables(const umoead_problem* problem);

/* lower/upper must hold umoead_problem_variables() doubles. */
UMOEAD_API umoead_status umoead_problem_bounds(const umoead_problem* problem, double* lower,
                                               double* upper);

/* x: n doubles in bounds; y: m doubles out. */
UMOEAD_API umoead_status umoead_problem_evaluate(const umoead_problem* problem, const double* x,
                                                 int n, double* y, int m);

/* Closed-form Pareto objective on the ray of lambda (m doubles in, m out). */
UMOEAD_API umoead_status umoead_problem_analytic_h(const umoead_problem* problem,
                                                   const double* lambda, int m, double* y);

/* Bisection ray-front intersection to absolute tolerance tol. */
UMOEAD_API umoead_status umoead_problem_numeric_h(const umoead_problem* problem,
                                                  const double* lambda, int m, double tol,
                                                  double* y);

/* ---- optimization runs ---- */

typedef struct umoead_run umoead_run;

/* Parses and resolves a JSON run configuration. NULL on error. */
UMOEAD_API umoead_run* umoead_run_create(const char* config_json);
UMOEAD_API void umoead_run_close(umoead_run* run);

/* Resolved configuration as JSON. Valid until the handle is closed. */
UMOEAD_API const char* umoead_run_config_json(umoead_run* run);

UMOEAD_API umoead_status umoead_run_execute(umoead_run* run);

/* Full report as JSON; only valid after a successful execute. The string
 * is owned by the handle. */
UMOEAD_API const char* umoead_run_report_json(umoead_run* run);

/* Writes objectives.csv, weights.csv, metrics.json, config.json into dir. */
UMOEAD_API umoead_status umoead_run_export(umoead_run* run, const char* dir);

/* ---- metrics ---- */

/* Scores n_points objective vectors of dimension m (row-major in y) against
 * the reference point. Writes a flat JSON record into json_out (json_cap
 * bytes including the terminator). */
UMOEAD_API umoead_status umoead_metrics_score(const double* y, int n_points, int m,
                                              const double* ref, double soft_k, char* json_out,
                                              size_t json_cap);

#ifdef __cplusplus
}
#endif

#endif /* UMOEAD_H */
