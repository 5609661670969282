#pragma once

#include "core/grid.hpp"
#include "core/specfun.hpp"

namespace fracblow {

// Closed form for y' = y^m, y(0) = b > 0, m > 1:
//   y(t) = [(1-m)(t + c)]^(1/(1-m)),  c = b^(1-m)/(1-m),
// valid before the blow-up time -c = b^(1-m)/(m-1).
double power_ode(double b, double m, double t);
double power_ode_blowup_time(double b, double m);

// Closed form for y' + y = y^m, y(0) = b >= 1, m > 1:
//   y(t) = [1 + (b^(1-m) - 1) exp((m-1) t)]^(1/(1-m)).
// For b > 1 this blows up at ln(1 - b^(1-m))/(1-m); for b = 1 it is the
// equilibrium y = 1.
double bernoulli(double b, double m, double t);
double bernoulli_blowup_time(double b, double m);

// Exact solution of the linear two-term problem with zero source,
//   y(t) = b t^(alpha-1) E_{alpha-beta, alpha}(-t^(alpha-beta)),
// summed through the Mittag-Leffler series.  Requires alpha > beta.
double ml_linear(FracOrder alpha, FracOrder beta, double b, double t,
                 const SeriesAccuracy& acc = {});

// Parameters of the nonexistence threshold: the lowest derivative order
// present in the problem and the source exponent gamma.
struct ThresholdSpec {
    double gamma;
    double order_low;

    ThresholdSpec(double gamma_, double order_low_);
};

// Largest source power covered by the nonexistence range (1, m*]:
// m* = (gamma + 1)/(1 - order_low).  At order_low = 1 the range is all
// m > 1, reported as +infinity.
double threshold_m_star(const ThresholdSpec& th);

}  // namespace fracblow
