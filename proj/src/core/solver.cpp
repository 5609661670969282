#include "core/solver.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/specfun.hpp"

namespace fracblow {

ProblemSpec::ProblemSpec(FracOrder alpha_, FracOrder beta_, double b_)
    : alpha(alpha_), beta(beta_), b(b_) {
    if (!(alpha.value > 0.0))
        throw domain_error("ProblemSpec: alpha must be positive");
    if (!(beta.value <= alpha.value))
        throw domain_error("ProblemSpec: requires beta <= alpha");
    if (!(b >= 0.0)) throw domain_error("ProblemSpec: b must be nonnegative");
}

ProblemSpec ProblemSpec::power(FracOrder alpha, FracOrder beta, double gamma, double m,
                               double b, double source_scale) {
    ProblemSpec s(alpha, beta, b);
    if (!(m > 1.0)) throw domain_error("ProblemSpec: power source needs m > 1");
    s.gamma = gamma;
    s.m = m;
    s.mode = RhsMode::power_source;
    s.source_scale = source_scale;
    return s;
}

ProblemSpec ProblemSpec::zero_rhs(FracOrder alpha, FracOrder beta, double b) {
    ProblemSpec s(alpha, beta, b);
    s.mode = RhsMode::zero;
    return s;
}

ProblemSpec ProblemSpec::manufactured(FracOrder alpha, FracOrder beta, double b,
                                      std::vector<PowerTerm> terms) {
    ProblemSpec s(alpha, beta, b);
    s.mode = RhsMode::manufactured;
    s.manufactured_terms = std::move(terms);
    return s;
}

double ProblemSpec::source_value(double t, double y) const {
    switch (mode) {
        case RhsMode::zero:
            return 0.0;
        case RhsMode::power_source:
            return source_scale * std::pow(t, gamma) * std::pow(std::abs(y), m);
        case RhsMode::manufactured: {
            double acc = 0.0;
            for (const PowerTerm& pt : manufactured_terms)
                acc += pt.coeff * std::pow(t, pt.exponent);
            return acc;
        }
    }
    return 0.0;
}

VolterraForm to_volterra(const ProblemSpec& spec) {
    const double a = spec.alpha.value;
    const double bt = spec.beta.value;
    // Applying I^alpha: each derivative term contributes
    //   I^alpha D^sigma y = I^(alpha-sigma) y - [I^(1-sigma) y](0) t^(alpha-1)/Gamma(alpha).
    // For sigma = beta < alpha the bracket vanishes (the integral of a
    // C_{1-alpha} function of higher order is continuous and 0 at 0); for
    // beta = alpha it equals b, so the forcing appears twice.
    const double doubling = (bt == a) ? 2.0 : 1.0;
    return {doubling * spec.b * reciprocal_gamma(a), a - 1.0, a - bt, a};
}

namespace {

struct NodeSolution {
    enum class Kind { converged, no_root, failed } kind;
    double zeta = 0.0;
};

// Solve L z + Cd z - Cs |z|^m = R for the continuation root: damped fixed
// point from the previous value, bisection on a bracket as fallback.  For a
// convex source (m > 1, Cs > 0) the equation loses its root once the history
// R exceeds the fold maximum; that is reported as Kind::no_root.
NodeSolution solve_node(double L, double Cd, double Cs, double m, double R,
                        double z_prev, double zeta_div) {
    const double lin = L + Cd;
    if (Cs == 0.0) return {NodeSolution::Kind::converged, R / lin};

    auto g = [&](double zeta) { return (R + Cs * std::pow(std::abs(zeta), m)) / lin; };
    auto residual = [&](double zeta) {
        return lin * zeta - Cs * std::pow(std::abs(zeta), m) - R;
    };
    // fold of the left side on the positive branch
    const double zeta_fold = std::pow(lin / (Cs * m), 1.0 / (m - 1.0));
    const bool root_exists_pos = residual(zeta_fold) >= 0.0;

    double zeta = z_prev;
    double theta = 1.0;
    double prev_res = std::abs(residual(zeta));
    for (int it = 0; it < 50; ++it) {
        const double znext = zeta + theta * (g(zeta) - zeta);
        if (!std::isfinite(znext) || std::abs(znext) > zeta_div) {
            if (R > 0.0 && !root_exists_pos) return {NodeSolution::Kind::no_root, 0.0};
            break;
        }
        if (std::abs(znext - zeta) <= 1e-12 * (1.0 + std::abs(znext)))
            return {NodeSolution::Kind::converged, znext};
        const double res = std::abs(residual(znext));
        if (res > prev_res) theta = std::max(0.0625, theta * 0.5);
        prev_res = res;
        zeta = znext;
    }

    // bisection fallback on a bracketed sign change
    double lo, hi;
    if (R >= 0.0) {
        if (!root_exists_pos) return {NodeSolution::Kind::no_root, 0.0};
        lo = 0.0;
        hi = zeta_fold;  // residual(lo) = -R <= 0 <= residual(hi)
    } else {
        // root on the negative side: residual(0) = -R > 0 and residual -> -inf
        lo = -std::max(1.0, 2.0 * std::abs(R) / lin);
        int guard = 0;
        while (residual(lo) > 0.0 && guard++ < 200) lo *= 2.0;
        if (residual(lo) > 0.0) return {NodeSolution::Kind::failed, 0.0};
        hi = 0.0;
    }
    double flo = residual(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= 1e-13 * (1.0 + std::abs(lo))) break;
    }
    const double root = 0.5 * (lo + hi);
    if (!std::isfinite(root)) return {NodeSolution::Kind::failed, 0.0};
    return {NodeSolution::Kind::converged, root};
}

Trajectory make_truncated(const ProblemSpec& spec, double h, std::vector<double> z,
                          std::size_t steps, SolveStatus status,
                          std::optional<double> t_escape, double cap, double t_end) {
    z.resize(steps + 1);
    Trajectory traj{SingularGridFunction(0.0, h, steps, spec.alpha.value - 1.0, std::move(z)),
                    status, t_escape, cap, t_end};
    return traj;
}

}  // namespace

Trajectory solve(const ProblemSpec& spec, double t_end, std::size_t n, double cap) {
    if (!(t_end > 0.0)) throw domain_error("solve: t_end must be positive");
    if (n < 16) throw domain_error("solve: need n >= 16");
    if (!(cap > std::abs(spec.b))) throw domain_error("solve: cap must exceed |b|");

    const double a = spec.alpha.value;
    const double sigma = a - 1.0;
    const double h = t_end / static_cast<double>(n);
    const VolterraForm vf = to_volterra(spec);
    const bool identity_damping = (vf.damping_order == 0.0);
    const bool power = (spec.mode == RhsMode::power_source);

    // y == 0 solves the homogeneous power problem exactly
    if (power && spec.b == 0.0)
        return make_truncated(spec, h, std::vector<double>(n + 1, 0.0), n,
                              SolveStatus::completed, std::nullopt, cap, t_end);

    const double sigma_f = power ? spec.gamma + spec.m * sigma : 0.0;
    if (power && !(sigma_f > -1.0))
        throw domain_error("solve: source exponent gamma + m (alpha - 1) must exceed -1");

    std::optional<detail::ConvolutionWeights> damp_w;
    if (!identity_damping) damp_w.emplace(sigma, vf.damping_order, h);
    std::optional<detail::ConvolutionWeights> src_w;
    if (power) src_w.emplace(sigma_f, vf.source_order, h);

    const double inv_gamma_damp = identity_damping ? 0.0 : reciprocal_gamma(vf.damping_order);
    const double inv_gamma_src = reciprocal_gamma(vf.source_order);

    std::vector<double> z(n + 1, 0.0);
    std::vector<double> w_src(power ? n + 1 : 0, 0.0);  // |z_k|^m history
    std::vector<double> row(n + 1, 0.0);

    z[0] = spec.b * reciprocal_gamma(a);
    if (power) w_src[0] = std::pow(std::abs(z[0]), spec.m);

    for (std::size_t j = 1; j <= n; ++j) {
        const double t = h * static_cast<double>(j);
        const double t_sigma = std::pow(t, sigma);
        double R = vf.forcing_coeff * std::pow(t, vf.forcing_exponent);
        double Cd = 0.0;

        if (!identity_damping) {
            damp_w->row(j, row);
            double hist = 0.0;
            for (std::size_t k = 0; k < j; ++k) hist += row[k] * z[k];
            R -= hist * inv_gamma_damp;
            Cd = row[j] * inv_gamma_damp;
        }

        double Cs = 0.0;
        if (power) {
            src_w->row(j, row);
            double hist = 0.0;
            for (std::size_t k = 0; k < j; ++k) hist += row[k] * w_src[k];
            R += spec.source_scale * hist * inv_gamma_src;
            Cs = spec.source_scale * row[j] * inv_gamma_src;
        } else if (spec.mode == RhsMode::manufactured) {
            double s_exact = 0.0;
            for (const PowerTerm& pt : spec.manufactured_terms)
                s_exact += pt.coeff * gamma_fn(pt.exponent + 1.0) *
                           reciprocal_gamma(pt.exponent + 1.0 + a) * std::pow(t, pt.exponent + a);
            R += s_exact;
        }

        const double L = t_sigma * (identity_damping ? 2.0 : 1.0);
        const double zeta_cap = cap / t_sigma;
        const NodeSolution sol =
            solve_node(L, Cd, Cs, spec.m, R, z[j - 1], 10.0 * std::max(1.0, zeta_cap));

        if (sol.kind == NodeSolution::Kind::no_root)
            return make_truncated(spec, h, std::move(z), j - 1, SolveStatus::blowup, t, cap,
                                  t_end);
        if (sol.kind == NodeSolution::Kind::failed)
            return make_truncated(spec, h, std::move(z), j - 1, SolveStatus::stagnated,
                                  std::nullopt, cap, t_end);

        z[j] = sol.zeta;
        if (power) w_src[j] = std::pow(std::abs(z[j]), spec.m);
        if (std::abs(t_sigma * z[j]) > cap)
            return make_truncated(spec, h, std::move(z), j, SolveStatus::blowup, t, cap, t_end);
    }
    return make_truncated(spec, h, std::move(z), n, SolveStatus::completed, std::nullopt, cap,
                          t_end);
}

SingularGridFunction residual(const ProblemSpec& spec, const Trajectory& traj) {
    if (traj.status != SolveStatus::completed)
        throw domain_error("residual: trajectory must be completed");
    const SingularGridFunction& y = traj.grid;
    const std::size_t n = y.n;

    auto derivative_samples = [&](double order) -> std::vector<double> {
        if (order == 0.0) {
            std::vector<double> d(n + 1);
            for (std::size_t j = 0; j <= n; ++j) d[j] = y.value(j);
            return d;
        }
        if (order == 1.0) {
            std::vector<double> d(n + 1, 0.0);
            for (std::size_t j = 1; j < n; ++j)
                d[j] = (y.value(j + 1) - y.value(j - 1)) / (2.0 * y.h);
            d[n] = (3.0 * y.value(n) - 4.0 * y.value(n - 1) + y.value(n - 2)) / (2.0 * y.h);
            d[0] = std::numeric_limits<double>::quiet_NaN();
            return d;
        }
        return rl_left_derivative_grid(FracOrder(order), y).z;
    };

    const std::vector<double> da = derivative_samples(spec.alpha.value);
    const std::vector<double> db = derivative_samples(spec.beta.value);
    std::vector<double> r(n + 1, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 1; j <= n; ++j)
        r[j] = da[j] + db[j] - spec.source_value(y.t(j), y.value(j));
    return SingularGridFunction(y.t0, y.h, n, 0.0, std::move(r));
}

std::vector<PowerTerm> manufactured_rhs(FracOrder alpha, FracOrder beta, double c1,
                                        double c2, double delta) {
    const double a = alpha.value;
    const double bt = beta.value;
    if (!(delta > 0.0)) throw domain_error("manufactured_rhs: delta must be positive");
    if (std::abs(delta - (a - 1.0)) < 1e-12)
        throw domain_error("manufactured_rhs: delta must differ from alpha - 1");
    std::vector<PowerTerm> terms;
    const double gd1 = gamma_fn(delta + 1.0);
    if (c2 != 0.0) {
        // D^alpha t^delta and D^beta t^delta
        terms.push_back({c2 * gd1 * reciprocal_gamma(delta + 1.0 - a), delta - a});
        terms.push_back({c2 * gd1 * reciprocal_gamma(delta + 1.0 - bt), delta - bt});
    }
    if (c1 != 0.0) {
        // D^beta t^(alpha-1); the D^alpha term vanishes identically
        const double coeff = c1 * gamma_fn(a) * reciprocal_gamma(a - bt);
        if (coeff != 0.0) terms.push_back({coeff, a - 1.0 - bt});
    }
    return terms;
}

double manufactured_regular_part(FracOrder alpha, double c1, double c2, double delta,
                                 double t) {
    return c1 + c2 * std::pow(t, delta - alpha.value + 1.0);
}

}  // namespace fracblow
