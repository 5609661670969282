#include "core/oracles.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace fracblow {

double power_ode_blowup_time(double b, double m) {
    if (!(b > 0.0)) throw domain_error("power_ode: b must be positive");
    if (!(m > 1.0)) throw domain_error("power_ode: m must exceed 1");
    return std::pow(b, 1.0 - m) / (m - 1.0);
}

double power_ode(double b, double m, double t) {
    const double t_star = power_ode_blowup_time(b, m);
    if (!(t < t_star)) throw domain_error("power_ode: t at or past the blow-up time");
    const double c = std::pow(b, 1.0 - m) / (1.0 - m);
    return std::pow((1.0 - m) * (t + c), 1.0 / (1.0 - m));
}

double bernoulli_blowup_time(double b, double m) {
    if (!(b > 1.0)) throw domain_error("bernoulli: blow-up requires b > 1");
    if (!(m > 1.0)) throw domain_error("bernoulli: m must exceed 1");
    return std::log1p(-std::pow(b, 1.0 - m)) / (1.0 - m);
}

double bernoulli(double b, double m, double t) {
    if (!(b >= 1.0)) throw domain_error("bernoulli: b must be >= 1");
    if (!(m > 1.0)) throw domain_error("bernoulli: m must exceed 1");
    if (!(t >= 0.0)) throw domain_error("bernoulli: t must be nonnegative");
    const double w0 = std::pow(b, 1.0 - m) - 1.0;
    if (w0 == 0.0) return 1.0;  // equilibrium
    if (!(t < bernoulli_blowup_time(b, m)))
        throw domain_error("bernoulli: t at or past the blow-up time");
    return std::pow(1.0 + w0 * std::exp((m - 1.0) * t), 1.0 / (1.0 - m));
}

double ml_linear(FracOrder alpha, FracOrder beta, double b, double t,
                 const SeriesAccuracy& acc) {
    const double a = alpha.value;
    const double bt = beta.value;
    if (!(a > bt)) throw domain_error("ml_linear: requires alpha > beta");
    if (!(t > 0.0)) throw domain_error("ml_linear: t must be positive");
    if (b == 0.0) return 0.0;
    const double d = a - bt;
    return b * std::pow(t, a - 1.0) * mittag_leffler(d, a, -std::pow(t, d), acc);
}

ThresholdSpec::ThresholdSpec(double gamma_, double order_low_)
    : gamma(gamma_), order_low(order_low_) {
    if (!(order_low > 0.0) || !(order_low <= 1.0))
        throw domain_error("ThresholdSpec: order_low must lie in (0, 1]");
}

double threshold_m_star(const ThresholdSpec& th) {
    if (th.order_low == 1.0) return std::numeric_limits<double>::infinity();
    return (th.gamma + 1.0) / (1.0 - th.order_low);
}

}  // namespace fracblow
