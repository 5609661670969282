#include "core/grid.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace fracblow {

FracOrder::FracOrder(double v) : value(v) {
    if (!(v >= 0.0) || !(v <= 1.0))
        throw domain_error("FracOrder: order must lie in [0, 1]");
}

SingularGridFunction::SingularGridFunction(double t0_, double h_, std::size_t n_,
                                           double sigma_, std::vector<double> z_)
    : t0(t0_), h(h_), n(n_), sigma(sigma_), z(std::move(z_)) {
    if (!(h > 0.0)) throw domain_error("SingularGridFunction: h must be positive");
    if (n < 1) throw domain_error("SingularGridFunction: need at least one step");
    if (!(sigma > -1.0)) throw domain_error("SingularGridFunction: sigma must exceed -1");
    if (z.size() != n + 1)
        throw domain_error("SingularGridFunction: z must hold n+1 samples");
}

double SingularGridFunction::value(std::size_t j) const {
    if (j == 0) {
        if (sigma > 0.0) return 0.0;
        if (sigma == 0.0) return z[0];
        if (z[0] == 0.0) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), z[0]);
    }
    return std::pow(t(j) - t0, sigma) * z[j];
}

double SingularGridFunction::eval(double s) const {
    const double end = t(n);
    if (s <= t0) return value(0);
    if (s >= end) s = end;
    const double x = (s - t0) / h;
    std::size_t k = static_cast<std::size_t>(x);
    if (k >= n) k = n - 1;
    const double w = x - static_cast<double>(k);
    const double zr = z[k] * (1.0 - w) + z[k + 1] * w;
    if (sigma == 0.0) return zr;
    return std::pow(s - t0, sigma) * zr;
}

}  // namespace fracblow
