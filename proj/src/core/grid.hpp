#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace fracblow {

// Fractional order in [0, 1].  Order 0 is the identity for both the
// integral and the derivative; individual operations tighten the range
// in their own preconditions.
struct FracOrder {
    double value;
    explicit FracOrder(double v);
};

// A function f(t) = (t - t0)^sigma * z(t) on a uniform grid, with the
// regular part z sampled at t0 + j h, j = 0..n.  sigma = 0 is an ordinary
// grid function; sigma < 0 encodes an endpoint singularity whose strength
// and leading coefficient are (sigma, z[0]).
struct SingularGridFunction {
    double t0 = 0.0;
    double h = 0.0;
    std::size_t n = 0;         // number of steps; z holds n+1 samples
    double sigma = 0.0;
    std::vector<double> z;

    // Left-endpoint analytics for operator outputs whose sample at t0 is
    // singular: the value behaves like left_coeff * (t-t0)^left_exponent.
    double left_exponent = std::numeric_limits<double>::quiet_NaN();
    double left_coeff = std::numeric_limits<double>::quiet_NaN();

    SingularGridFunction() = default;
    SingularGridFunction(double t0_, double h_, std::size_t n_, double sigma_,
                         std::vector<double> z_);

    double t(std::size_t j) const { return t0 + static_cast<double>(j) * h; }

    // Sample of the represented f at node j.  At j = 0 this is the limit:
    // 0 for sigma > 0, z[0] for sigma = 0, and +-inf for sigma < 0 with
    // z[0] != 0.
    double value(std::size_t j) const;

    // Piecewise-linear interpolation of z times the singular factor,
    // clamped to the grid extent.
    double eval(double s) const;

    std::size_t size() const { return z.size(); }
};

// Grid with z given by a callable of t.
template <typename F>
SingularGridFunction make_grid(double t0, double h, std::size_t n, double sigma, F&& zf) {
    std::vector<double> z(n + 1);
    for (std::size_t j = 0; j <= n; ++j) z[j] = zf(t0 + static_cast<double>(j) * h);
    return SingularGridFunction(t0, h, n, sigma, std::move(z));
}

}  // namespace fracblow
