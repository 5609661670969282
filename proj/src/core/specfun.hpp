#pragma once

#include <cstddef>

namespace fracblow {

// Truncation control for series evaluations.
struct SeriesAccuracy {
    double abs_tol = 1e-14;
    int max_terms = 2000;

    SeriesAccuracy() = default;
    SeriesAccuracy(double tol, int terms);
};

// Gamma function for real x away from the poles at 0, -1, -2, ...
double gamma_fn(double x);

// log Gamma for x > 0.
double lgamma_fn(double x);

// 1/Gamma(x), defined as 0 at the poles.  Used by the fractional power
// rules, where a pole in the denominator means the term vanishes.
double reciprocal_gamma(double x);

// Regularized incomplete beta I_x(p, q), x in [0,1], p,q > 0.
double incomplete_beta(double x, double p, double q);

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum z^k / Gamma(a k + b)
// by direct series summation.  a, b > 0.
double mittag_leffler(double a, double b, double z, const SeriesAccuracy& acc = {});

namespace detail {

// I_x(p,q) with a precomputed log-beta prefactor; core of incomplete_beta.
double ibeta_core(double x, double p, double q, double ln_beta_pq);

// ln B(p, q)
double lbeta(double p, double q);

}  // namespace detail

}  // namespace fracblow
