#include "fracblow/fracblow.h"

#include <cstring>
#include <new>
#include <string>

#include "core/blowup.hpp"
#include "core/errors.hpp"
#include "core/fracops.hpp"
#include "core/oracles.hpp"
#include "core/solver.hpp"
#include "core/specfun.hpp"
#include "core/testfn.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
fb_status guarded(F&& fn) {
    try {
        fn();
        return FB_OK;
    } catch (const fracblow::domain_error& e) {
        set_error(e.what());
        return FB_ERR_DOMAIN;
    } catch (const fracblow::accuracy_error& e) {
        set_error(e.what());
        return FB_ERR_ACCURACY;
    } catch (const fracblow::estimation_error& e) {
        set_error(e.what());
        return FB_ERR_ESTIMATION;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return FB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return FB_ERR_INTERNAL;
    }
}

int encode_status(fracblow::SolveStatus s) {
    switch (s) {
        case fracblow::SolveStatus::completed: return FB_STATUS_COMPLETED;
        case fracblow::SolveStatus::blowup: return FB_STATUS_BLOWUP;
        case fracblow::SolveStatus::stagnated: return FB_STATUS_STAGNATED;
    }
    return FB_STATUS_STAGNATED;
}

}  // namespace

struct fb_problem {
    fracblow::ProblemSpec spec;
};

struct fb_trajectory {
    fracblow::Trajectory traj;
};

struct fb_scan {
    std::vector<fracblow::ScanCell> cells;
};

extern "C" {

const char* fb_status_name(fb_status s) {
    switch (s) {
        case FB_OK: return "ok";
        case FB_ERR_DOMAIN: return "domain error";
        case FB_ERR_ACCURACY: return "accuracy error";
        case FB_ERR_ESTIMATION: return "estimation error";
        case FB_ERR_INVALID: return "invalid call";
        case FB_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* fb_last_error(void) { return g_last_error.c_str(); }

fb_status fb_gamma(double x, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::gamma_fn(x); });
}

fb_status fb_incomplete_beta(double x, double p, double q, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::incomplete_beta(x, p, q); });
}

fb_status fb_mittag_leffler(double a, double b, double z, double abs_tol, int max_terms,
                            double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        *out = fracblow::mittag_leffler(a, b, z, fracblow::SeriesAccuracy(abs_tol, max_terms));
    });
}

fb_status fb_rl_power_rule(int kind, double order, double mu, double t, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        const auto k = kind == 0 ? fracblow::RLKind::integral : fracblow::RLKind::derivative;
        *out = fracblow::rl_power_rule(k, fracblow::FracOrder(order), mu, t);
    });
}

fb_status fb_choose_lambda(double m, int* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::choose_lambda(m); });
}

fb_status fb_k1_bound(int lambda, double p, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::k1_bound(fracblow::CutoffProfile(lambda, p)); });
}

fb_status fb_cutoff_integral_fractional(double alpha, double m, int lambda, double p,
                                        double T, double abs_tol, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        fracblow::QuadratureBudget budget;
        if (abs_tol > 0.0) budget.abs_tol = abs_tol;
        *out = fracblow::fractional_cutoff_integral(fracblow::FracOrder(alpha), m,
                                                    fracblow::CutoffProfile(lambda, p), T,
                                                    budget);
    });
}

fb_status fb_cutoff_integral_classical(double m, int lambda, double p, double T,
                                       double abs_tol, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        fracblow::QuadratureBudget budget;
        if (abs_tol > 0.0) budget.abs_tol = abs_tol;
        *out = fracblow::classical_cutoff_integral(m, fracblow::CutoffProfile(lambda, p), T,
                                                   budget);
    });
}

fb_status fb_cutoff_bound(int kind, double alpha, double m, double k1, double T,
                          double* bound, double* exponent) {
    if (!bound || !exponent) return FB_ERR_INVALID;
    return guarded([&] {
        const auto k = kind == 0 ? fracblow::BoundKind::fractional : fracblow::BoundKind::classical;
        const fracblow::CutoffBound cb = fracblow::cutoff_bound(k, alpha, m, k1, T);
        *bound = cb.bound;
        *exponent = cb.exponent;
    });
}

fb_status fb_power_ode(double b, double m, double t, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::power_ode(b, m, t); });
}

fb_status fb_power_ode_blowup_time(double b, double m, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::power_ode_blowup_time(b, m); });
}

fb_status fb_bernoulli(double b, double m, double t, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::bernoulli(b, m, t); });
}

fb_status fb_bernoulli_blowup_time(double b, double m, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] { *out = fracblow::bernoulli_blowup_time(b, m); });
}

fb_status fb_ml_linear(double alpha, double beta, double b, double t, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        *out = fracblow::ml_linear(fracblow::FracOrder(alpha), fracblow::FracOrder(beta), b, t);
    });
}

fb_status fb_threshold_m_star(double gamma, double order_low, double* out) {
    if (!out) return FB_ERR_INVALID;
    return guarded([&] {
        *out = fracblow::threshold_m_star(fracblow::ThresholdSpec(gamma, order_low));
    });
}

fb_problem* fb_problem_new_power(double alpha, double beta, double gamma, double m, double b,
                                 double source_scale) {
    fb_problem* p = nullptr;
    const fb_status st = guarded([&] {
        p = new fb_problem{fracblow::ProblemSpec::power(fracblow::FracOrder(alpha),
                                                        fracblow::FracOrder(beta), gamma, m, b,
                                                        source_scale)};
    });
    return st == FB_OK ? p : nullptr;
}

fb_problem* fb_problem_new_zero(double alpha, double beta, double b) {
    fb_problem* p = nullptr;
    const fb_status st = guarded([&] {
        p = new fb_problem{fracblow::ProblemSpec::zero_rhs(fracblow::FracOrder(alpha),
                                                           fracblow::FracOrder(beta), b)};
    });
    return st == FB_OK ? p : nullptr;
}

fb_problem* fb_problem_new_manufactured(double alpha, double beta, double b, double c1,
                                        double c2, double delta) {
    fb_problem* p = nullptr;
    const fb_status st = guarded([&] {
        const fracblow::FracOrder a(alpha), bt(beta);
        p = new fb_problem{fracblow::ProblemSpec::manufactured(
            a, bt, b, fracblow::manufactured_rhs(a, bt, c1, c2, delta))};
    });
    return st == FB_OK ? p : nullptr;
}

void fb_problem_free(fb_problem* p) { delete p; }

fb_status fb_solve(const fb_problem* p, double t_end, size_t n, double cap,
                   fb_trajectory** out) {
    if (!p || !out) return FB_ERR_INVALID;
    return guarded([&] { *out = new fb_trajectory{fracblow::solve(p->spec, t_end, n, cap)}; });
}

void fb_trajectory_free(fb_trajectory* t) { delete t; }

int fb_trajectory_status(const fb_trajectory* t) {
    return t ? encode_status(t->traj.status) : FB_STATUS_STAGNATED;
}

size_t fb_trajectory_nodes(const fb_trajectory* t) { return t ? t->traj.grid.n + 1 : 0; }

fb_status fb_trajectory_times(const fb_trajectory* t, double* buf, size_t len) {
    if (!t || !buf) return FB_ERR_INVALID;
    if (len < t->traj.grid.n + 1) {
        set_error("fb_trajectory_times: buffer too small");
        return FB_ERR_INVALID;
    }
    for (size_t j = 0; j <= t->traj.grid.n; ++j) buf[j] = t->traj.grid.t(j);
    return FB_OK;
}

fb_status fb_trajectory_values(const fb_trajectory* t, double* buf, size_t len) {
    if (!t || !buf) return FB_ERR_INVALID;
    if (len < t->traj.grid.n + 1) {
        set_error("fb_trajectory_values: buffer too small");
        return FB_ERR_INVALID;
    }
    for (size_t j = 0; j <= t->traj.grid.n; ++j) buf[j] = t->traj.grid.value(j);
    return FB_OK;
}

fb_status fb_trajectory_t_escape(const fb_trajectory* t, double* out) {
    if (!t || !out) return FB_ERR_INVALID;
    if (!t->traj.t_escape) {
        set_error("trajectory has no escape node");
        return FB_ERR_DOMAIN;
    }
    *out = *t->traj.t_escape;
    return FB_OK;
}

fb_status fb_estimate_blowup_time(const fb_trajectory* t, double m, double* t_star,
                                  double* fit_quality) {
    if (!t || !t_star || !fit_quality) return FB_ERR_INVALID;
    return guarded([&] {
        const fracblow::BlowupFit fit = fracblow::estimate_blowup_time(t->traj, m);
        *t_star = fit.t_star;
        *fit_quality = fit.fit_quality;
    });
}

fb_status fb_scan_run(double alpha, double beta, double b, const double* gammas,
                      size_t n_gamma, const double* ms, size_t n_m, double horizon, size_t n,
                      double cap, int threads, fb_scan** out) {
    if (!gammas || !ms || !out) return FB_ERR_INVALID;
    return guarded([&] {
        *out = new fb_scan{fracblow::scan(fracblow::FracOrder(alpha), fracblow::FracOrder(beta),
                                          b, std::vector<double>(gammas, gammas + n_gamma),
                                          std::vector<double>(ms, ms + n_m), horizon, n, cap,
                                          threads)};
    });
}

void fb_scan_free(fb_scan* s) { delete s; }

size_t fb_scan_size(const fb_scan* s) { return s ? s->cells.size() : 0; }

fb_status fb_scan_get(const fb_scan* s, size_t idx, fb_scan_cell* out) {
    if (!s || !out) return FB_ERR_INVALID;
    if (idx >= s->cells.size()) {
        set_error("fb_scan_get: index out of range");
        return FB_ERR_INVALID;
    }
    const fracblow::ScanCell& c = s->cells[idx];
    out->gamma = c.gamma;
    out->m = c.m;
    out->status = encode_status(c.report.status);
    out->in_theorem_range = c.in_theorem_range ? 1 : 0;
    out->has_escape = c.report.t_escape.has_value() ? 1 : 0;
    out->t_escape = c.report.t_escape.value_or(0.0);
    out->has_estimate = c.report.t_star_estimate.has_value() ? 1 : 0;
    out->t_star_estimate = c.report.t_star_estimate.value_or(0.0);
    out->fit_quality = c.report.fit_quality.value_or(0.0);
    return FB_OK;
}

}  // extern "C"
