#pragma once

#include "core/fracops.hpp"
#include "core/grid.hpp"

namespace fracblow {

// Unit-scale cutoff profile Phi(u): identically 1 on [0, 1/2], 0 on
// [1, inf), and s(2u-1)^lambda in between with the reversed smoothstep
// s(v) = 1 - 3v^2 + 2v^3.  Near u = 1, Phi ~ c (1-u)^(2 lambda) and
// Phi' ~ (1-u)^(2 lambda - 1), so |Phi'|/Phi^p is bounded iff
// 2 lambda (1 - p) >= 1; the constructor enforces that.
struct CutoffProfile {
    int lambda;
    double p;

    CutoffProfile(int lambda_, double p_);
};

struct ProfileSample {
    double value;
    double derivative;
};

// Phi(u) and Phi'(u) for u >= 0.
ProfileSample profile_eval(const CutoffProfile& prof, double u);

// |Phi'(u)| / Phi(u)^p, with the limit value at the support boundary.
double profile_ratio(const CutoffProfile& prof, double u);

// Smallest smoothness power used with exponent p = 1/m: max(2, ceil(m/(m-1))).
int choose_lambda(double m);

// sup over [1/2, 1) of |Phi'|/Phi^p by dense sampling plus golden-section
// refinement.
double k1_bound(const CutoffProfile& prof);

// Rescaled-cutoff integral with the inner right-sided fractional integral:
//   I(T) = int_{T/2}^T ( I_{T-}^{1-alpha} |phi'|/phi^p )^m (t) dt,
// phi(t) = Phi(t/T), so phi' carries a 1/T factor.
double fractional_cutoff_integral(FracOrder alpha, double m, const CutoffProfile& prof,
                                  double T, const QuadratureBudget& budget = {});

// Classical analogue without the inner integral:
//   int_{T/2}^T ( |phi'|/phi^p )^m (t) dt.
double classical_cutoff_integral(double m, const CutoffProfile& prof, double T,
                                 const QuadratureBudget& budget = {});

// Closed-form upper bounds and their exact T-scaling exponents.
enum class BoundKind { fractional, classical };

struct CutoffBound {
    double bound;      // K_{alpha,m} T^(1-alpha m)  or  (1/2) K1^m T^(1-m)
    double exponent;   // 1 - alpha m               or  1 - m
};

// fractional: bound = K1^m / (2^(m(1-alpha)+1) Gamma(2-alpha)^m [m(1-alpha)+1]) * T^(1-alpha m)
// classical:  bound = (1/2) K1^m T^(1-m); alpha is ignored.
CutoffBound cutoff_bound(BoundKind kind, double alpha, double m, double k1, double T);

}  // namespace fracblow
