#ifndef ASYMLAB_H
#define ASYMLAB_H

/* C interface to the asymptotics library. Every call returns a status code;
 * on failure asymlab_last_error() holds the message for the calling thread.
 * Strings handed out through const char** stay owned by the handle they came
 * from and live until the next call on that handle or its free. */

#include <stddef.h>

#if defined(_WIN32)
#define ASYMLAB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define ASYMLAB_API __attribute__((visibility("default")))
#else
#define ASYMLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum asymlab_status {
    ASYMLAB_OK = 0,
    ASYMLAB_ERR_INVALID_ARGUMENT = 1,
    ASYMLAB_ERR_CONVEXITY_VIOLATION = 2,
    ASYMLAB_ERR_ORDER_TOO_LOW = 3,
    ASYMLAB_ERR_NO_CONVERGENCE = 4,
    ASYMLAB_ERR_INSTABILITY = 5,
    ASYMLAB_ERR_DOMAIN_TOO_SMALL = 6,
    ASYMLAB_ERR_SMALL_TIME_BLOWUP = 7,
    ASYMLAB_ERR_MULTIVALUED_REGION = 8,
    ASYMLAB_ERR_NO_CATASTROPHE = 9,
    ASYMLAB_ERR_STATES_COLLAPSED = 10,
    ASYMLAB_ERR_NO_COLLISION = 11,
    ASYMLAB_ERR_DEGENERATE_MERGE = 12,
    ASYMLAB_ERR_INSIDE_CUSP = 13,
    ASYMLAB_ERR_WINDOW_VIOLATION = 14,
    ASYMLAB_ERR_NOT_NORMALIZED = 15,
    ASYMLAB_ERR_B_NON_POSITIVE = 16,
    ASYMLAB_ERR_ORDER_TOO_HIGH = 17,
    ASYMLAB_ERR_DEGENERATE_JUMP = 18,
    ASYMLAB_ERR_DEGENERATE_FIT = 19,
    ASYMLAB_ERR_PARSE = 20,
    ASYMLAB_ERR_VALIDATION = 21,
    ASYMLAB_ERR_IO = 22,
    ASYMLAB_ERR_INTERNAL = 99
};

/* Columns of a field CSV. */
enum asymlab_field_part {
    ASYMLAB_FIELD_REFERENCE = 1,
    ASYMLAB_FIELD_ASYMPTOTIC = 2,
    ASYMLAB_FIELD_BOTH = 3
};

typedef struct asymlab_scenario asymlab_scenario;
typedef struct asymlab_report asymlab_report;
typedef struct asymlab_verify asymlab_verify;
typedef struct asymlab_flux asymlab_flux;

ASYMLAB_API const char* asymlab_version(void);
ASYMLAB_API const char* asymlab_last_error(void);
ASYMLAB_API const char* asymlab_status_name(int status);

/* scenarios */
ASYMLAB_API int asymlab_scenario_parse(const char* text, asymlab_scenario** out);
ASYMLAB_API int asymlab_scenario_load(const char* path, asymlab_scenario** out);
ASYMLAB_API void asymlab_scenario_free(asymlab_scenario* s);
ASYMLAB_API int asymlab_scenario_set_out_dir(asymlab_scenario* s, const char* dir);
ASYMLAB_API int asymlab_scenario_leg_count(const asymlab_scenario* s, size_t* out);
ASYMLAB_API int asymlab_scenario_parameter(const asymlab_scenario* s, size_t leg, double* out);
ASYMLAB_API int asymlab_scenario_resolved_json(asymlab_scenario* s, const char** out);
ASYMLAB_API int asymlab_scenario_field_csv(asymlab_scenario* s, size_t leg, int part, const char** out);
ASYMLAB_API int asymlab_scenario_limit_csv(asymlab_scenario* s, int characteristics, int samples, const char** out);
ASYMLAB_API int asymlab_scenario_run(const asymlab_scenario* s, asymlab_report** out);

/* sweep reports */
ASYMLAB_API void asymlab_report_free(asymlab_report* r);
ASYMLAB_API int asymlab_report_json(const asymlab_report* r, const char** out);
ASYMLAB_API int asymlab_report_pass(const asymlab_report* r, int* pass);
ASYMLAB_API int asymlab_report_slope(const asymlab_report* r, double* slope, double* residual, int* degenerate);
ASYMLAB_API int asymlab_report_write(const asymlab_report* r);

/* invariant suite */
ASYMLAB_API int asymlab_verify_run(asymlab_verify** out);
ASYMLAB_API void asymlab_verify_free(asymlab_verify* v);
ASYMLAB_API size_t asymlab_verify_count(const asymlab_verify* v);
ASYMLAB_API int asymlab_verify_check(const asymlab_verify* v, size_t i, const char** name, int* passed,
                                     const char** detail, double* runtime_s);

/* numerics */
ASYMLAB_API int asymlab_fit_rate(const double* params, const double* errors, size_t n, double* slope,
                                 double* residual);
/* kind: "burgers", "polynomial" or "composed-analytic"; coefficients of u^0, u^1, ... */
ASYMLAB_API int asymlab_flux_create(const char* kind, const double* coefficients, size_t n, double exp_amplitude,
                                    double exp_rate, double lo, double hi, asymlab_flux** out);
ASYMLAB_API void asymlab_flux_free(asymlab_flux* f);
ASYMLAB_API int asymlab_flux_derivative(const asymlab_flux* f, double u, int order, double* out);
ASYMLAB_API int asymlab_fold_w10(double xi, double tau, double phi2_at_0, double* out);
ASYMLAB_API int asymlab_weakshock_w20(double xi, double tau, double b, double* out);
ASYMLAB_API int asymlab_weakshock_w30(double xi, double tau, double b, double* out);

#ifdef __cplusplus
}
#endif

#endif
