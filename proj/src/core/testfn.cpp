#include "core/testfn.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/numutil.hpp"
#include "core/specfun.hpp"

namespace fracblow {

CutoffProfile::CutoffProfile(int lambda_, double p_) : lambda(lambda_), p(p_) {
    if (lambda < 1) throw domain_error("CutoffProfile: lambda must be a positive integer");
    if (!(p >= 0.0) || !(p < 1.0)) throw domain_error("CutoffProfile: p must lie in [0, 1)");
    if (2.0 * lambda * (1.0 - p) < 1.0 - 1e-12)
        throw domain_error("CutoffProfile: need 2 lambda (1 - p) >= 1 for a bounded ratio");
}

ProfileSample profile_eval(const CutoffProfile& prof, double u) {
    if (!(u >= 0.0)) throw domain_error("profile_eval: u must be nonnegative");
    if (u <= 0.5) return {1.0, 0.0};
    if (u >= 1.0) return {0.0, 0.0};
    const double v = 2.0 * u - 1.0;
    const double s = 1.0 - 3.0 * v * v + 2.0 * v * v * v;
    const double ds = 6.0 * v * (v - 1.0);  // s'(v), nonpositive on [0,1]
    const double powm1 = prof.lambda == 1 ? 1.0 : std::pow(s, prof.lambda - 1);
    return {powm1 * s, prof.lambda * powm1 * ds * 2.0};
}

double profile_ratio(const CutoffProfile& prof, double u) {
    if (!(u >= 0.0)) throw domain_error("profile_ratio: u must be nonnegative");
    if (u >= 1.0) {
        // ratio ~ (1-u)^(2 lambda (1-p) - 1); nonzero limit only at equality
        const double margin = 2.0 * prof.lambda * (1.0 - prof.p) - 1.0;
        if (std::abs(margin) <= 1e-12)
            return 2.0 * prof.lambda * std::pow(12.0, prof.lambda * (1.0 - prof.p));
        return 0.0;
    }
    const ProfileSample s = profile_eval(prof, u);
    if (s.derivative == 0.0) return 0.0;
    if (prof.p == 0.0) return std::abs(s.derivative);
    return std::abs(s.derivative) / std::pow(s.value, prof.p);
}

int choose_lambda(double m) {
    if (!(m > 1.0)) throw domain_error("choose_lambda: m must exceed 1");
    const double m_prime = m / (m - 1.0);
    const int lam = static_cast<int>(std::ceil(m_prime - 1e-12));
    return std::max(2, lam);
}

double k1_bound(const CutoffProfile& prof) {
    if (2.0 * prof.lambda * (1.0 - prof.p) < 1.0 - 1e-12)
        throw domain_error("k1_bound: ratio unbounded for this profile");
    constexpr int kSamples = 30000;
    const double hi = 1.0 - 1e-12;
    double best_u = 0.75;
    double best = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double u = 0.5 + (hi - 0.5) * i / kSamples;
        const double r = profile_ratio(prof, u);
        if (r > best) {
            best = r;
            best_u = u;
        }
    }
    const double du = (hi - 0.5) / kSamples;
    const double lo_u = std::max(0.5, best_u - du);
    const double hi_u = std::min(hi, best_u + du);
    const double refined =
        golden_min([&](double u) { return -profile_ratio(prof, u); }, lo_u, hi_u, 1e-14);
    return std::max(best, profile_ratio(prof, refined));
}

double fractional_cutoff_integral(FracOrder alpha, double m, const CutoffProfile& prof,
                                  double T, const QuadratureBudget& budget) {
    const double a = alpha.value;
    if (!(a > 0.0) || !(a < 1.0))
        throw domain_error("fractional_cutoff_integral: alpha must lie in (0, 1)");
    if (!(m > 0.0)) throw domain_error("fractional_cutoff_integral: m must be positive");
    if (!(T > 0.0)) throw domain_error("fractional_cutoff_integral: T must be positive");

    // |phi'(s)|/phi(s)^p at scale T; the rescaling contributes the 1/T factor.
    auto ratio_scaled = [&](double s) { return profile_ratio(prof, s / T) / T; };

    QuadratureBudget inner = budget;
    inner.abs_tol = budget.abs_tol * 0.1 * std::max(1.0, 1.0 / T);

    auto integrand = [&](double t) {
        if (t >= T) return 0.0;
        const double inner_val =
            rl_right_integral_at(FracOrder(1.0 - a), ratio_scaled, t, T, inner);
        return std::pow(inner_val, m);
    };
    const double tol = budget.abs_tol;
    return adaptive_simpson(integrand, 0.5 * T, T, tol, budget.max_refinements);
}

double classical_cutoff_integral(double m, const CutoffProfile& prof, double T,
                                 const QuadratureBudget& budget) {
    if (!(m > 0.0)) throw domain_error("classical_cutoff_integral: m must be positive");
    if (!(T > 0.0)) throw domain_error("classical_cutoff_integral: T must be positive");
    auto integrand = [&](double t) {
        return std::pow(profile_ratio(prof, t / T) / T, m);
    };
    return adaptive_simpson(integrand, 0.5 * T, T, budget.abs_tol, budget.max_refinements);
}

CutoffBound cutoff_bound(BoundKind kind, double alpha, double m, double k1, double T) {
    if (!(k1 != 0.0)) throw domain_error("cutoff_bound: K1 must be nonzero");
    if (!(m > 0.0)) throw domain_error("cutoff_bound: m must be positive");
    if (!(T > 0.0)) throw domain_error("cutoff_bound: T must be positive");
    if (kind == BoundKind::classical) {
        const double expo = 1.0 - m;
        return {0.5 * std::copysign(std::pow(std::abs(k1), m), k1) * std::pow(T, expo), expo};
    }
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw domain_error("cutoff_bound: alpha must lie in (0, 1) for the fractional bound");
    const double one_ma = m * (1.0 - alpha);
    const double k1m = std::copysign(std::pow(std::abs(k1), m), k1);
    const double denom =
        std::pow(2.0, one_ma + 1.0) * std::pow(gamma_fn(2.0 - alpha), m) * (one_ma + 1.0);
    const double expo = 1.0 - alpha * m;
    return {k1m / denom * std::pow(T, expo), expo};
}

}  // namespace fracblow
