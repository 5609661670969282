/*
 * fracblow - fractional-calculus operators, a two-term fractional
 * initial-value solver, and blow-up scanning, exposed as a C API.
 *
 * All functions return fb_status; outputs go through pointers.  On any
 * failure fb_last_error() returns a thread-local message describing the
 * violated precondition or the numerical failure.
 *
 * Handles (fb_problem, fb_trajectory, fb_scan) are opaque; free them with
 * the matching *_free function.  Handles are immutable after creation and
 * may be read concurrently from multiple threads.
 */

#ifndef FRACBLOW_H
#define FRACBLOW_H

#include <stddef.h>

#if defined(_WIN32)
#define FB_API __declspec(dllexport)
#else
#define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fb_status {
    FB_OK = 0,
    FB_ERR_DOMAIN = 1,     /* argument outside the mathematical domain */
    FB_ERR_ACCURACY = 2,   /* tolerance not reached within the budget */
    FB_ERR_ESTIMATION = 3, /* not enough data for a fit */
    FB_ERR_INVALID = 4,    /* null pointer / malformed call */
    FB_ERR_INTERNAL = 5
} fb_status;

FB_API const char* fb_status_name(fb_status s);
FB_API const char* fb_last_error(void);

/* ---- special functions ---- */

FB_API fb_status fb_gamma(double x, double* out);
FB_API fb_status fb_incomplete_beta(double x, double p, double q, double* out);
FB_API fb_status fb_mittag_leffler(double a, double b, double z, double abs_tol,
                                   int max_terms, double* out);

/* ---- scalar fractional operators ---- */

/* kind: 0 = integral, 1 = derivative (left-sided, endpoint 0) */
FB_API fb_status fb_rl_power_rule(int kind, double order, double mu, double t, double* out);

/* ---- cutoff test function ---- */

FB_API fb_status fb_choose_lambda(double m, int* out);
FB_API fb_status fb_k1_bound(int lambda, double p, double* out);
FB_API fb_status fb_cutoff_integral_fractional(double alpha, double m, int lambda, double p,
                                               double T, double abs_tol, double* out);
FB_API fb_status fb_cutoff_integral_classical(double m, int lambda, double p, double T,
                                              double abs_tol, double* out);
/* kind: 0 = fractional (needs 0 < alpha < 1), 1 = classical (alpha ignored) */
FB_API fb_status fb_cutoff_bound(int kind, double alpha, double m, double k1, double T,
                                 double* bound, double* exponent);

/* ---- closed-form oracles ---- */

FB_API fb_status fb_power_ode(double b, double m, double t, double* out);
FB_API fb_status fb_power_ode_blowup_time(double b, double m, double* out);
FB_API fb_status fb_bernoulli(double b, double m, double t, double* out);
FB_API fb_status fb_bernoulli_blowup_time(double b, double m, double* out);
FB_API fb_status fb_ml_linear(double alpha, double beta, double b, double t, double* out);
/* +infinity when order_low = 1 (the range is unbounded there) */
FB_API fb_status fb_threshold_m_star(double gamma, double order_low, double* out);

/* ---- solver ---- */

typedef struct fb_problem fb_problem;

/* f = source_scale * t^gamma |y|^m */
FB_API fb_problem* fb_problem_new_power(double alpha, double beta, double gamma, double m,
                                        double b, double source_scale);
/* f = 0 */
FB_API fb_problem* fb_problem_new_zero(double alpha, double beta, double b);
/* forcing of the manufactured target y = c1 t^(alpha-1) + c2 t^delta */
FB_API fb_problem* fb_problem_new_manufactured(double alpha, double beta, double b,
                                               double c1, double c2, double delta);
FB_API void fb_problem_free(fb_problem* p);

typedef struct fb_trajectory fb_trajectory;

/* statuses reported by trajectories and scan cells */
enum { FB_STATUS_COMPLETED = 0, FB_STATUS_BLOWUP = 1, FB_STATUS_STAGNATED = 2 };

FB_API fb_status fb_solve(const fb_problem* p, double t_end, size_t n, double cap,
                          fb_trajectory** out);
FB_API void fb_trajectory_free(fb_trajectory* t);
FB_API int fb_trajectory_status(const fb_trajectory* t);
FB_API size_t fb_trajectory_nodes(const fb_trajectory* t);
FB_API fb_status fb_trajectory_times(const fb_trajectory* t, double* buf, size_t len);
/* y samples; the node-0 value may be infinite when alpha < 1 and b > 0 */
FB_API fb_status fb_trajectory_values(const fb_trajectory* t, double* buf, size_t len);
/* FB_ERR_DOMAIN when the trajectory has no escape node */
FB_API fb_status fb_trajectory_t_escape(const fb_trajectory* t, double* out);
FB_API fb_status fb_estimate_blowup_time(const fb_trajectory* t, double m, double* t_star,
                                         double* fit_quality);

/* ---- parameter-space scan ---- */

typedef struct fb_scan fb_scan;

typedef struct fb_scan_cell {
    double gamma;
    double m;
    int status;           /* FB_STATUS_* */
    int in_theorem_range; /* from the threshold formula, never observed */
    int has_escape;
    double t_escape;
    int has_estimate;
    double t_star_estimate;
    double fit_quality;
} fb_scan_cell;

FB_API fb_status fb_scan_run(double alpha, double beta, double b, const double* gammas,
                             size_t n_gamma, const double* ms, size_t n_m, double horizon,
                             size_t n, double cap, int threads, fb_scan** out);
FB_API void fb_scan_free(fb_scan* s);
FB_API size_t fb_scan_size(const fb_scan* s);
FB_API fb_status fb_scan_get(const fb_scan* s, size_t idx, fb_scan_cell* out);

#ifdef __cplusplus
}
#endif

#endif /* FRACBLOW_H */
