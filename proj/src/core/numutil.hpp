#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fracblow {

// Composite Simpson with panel doubling until two successive levels agree
// to tol (mixed absolute/relative: |I2 - I1| <= tol * (1 + |I2|)).
// Throws accuracy_error when max_doublings is exhausted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_doublings = 18, int initial_panels = 8);

// Golden-section minimization of a unimodal function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter = 200);

// Least-squares slope of log(y) against log(x); inputs must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// Ordinary least-squares slope/intercept of y against x.
struct LinearFit {
    double slope;
    double intercept;
    double r2;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace fracblow
