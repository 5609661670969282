#include "core/fracops.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "core/errors.hpp"
#include "core/specfun.hpp"

namespace fracblow {

QuadratureBudget::QuadratureBudget(double tol, int refinements)
    : abs_tol(tol), max_refinements(refinements) {
    if (!(tol > 0.0)) throw domain_error("QuadratureBudget: abs_tol must be positive");
    if (refinements < 1) throw domain_error("QuadratureBudget: max_refinements must be >= 1");
}

double rl_power_rule(RLKind kind, FracOrder order, double mu, double t) {
    if (!(mu > -1.0)) throw domain_error("rl_power_rule: mu must exceed -1");
    if (!(t > 0.0)) throw domain_error("rl_power_rule: t must be positive");
    const double a = order.value;
    if (kind == RLKind::integral) {
        if (a == 0.0) return std::pow(t, mu);
        return gamma_fn(mu + 1.0) / gamma_fn(mu + 1.0 + a) * std::pow(t, mu + a);
    }
    if (a == 0.0) return std::pow(t, mu);
    const double denom_arg = mu + 1.0 - a;
    if (std::abs(denom_arg) <= 1e-12) return 0.0;  // mu = order - 1 annihilates
    if (!(denom_arg > 0.0))
        throw domain_error("rl_power_rule: derivative case needs mu - order > -1");
    return gamma_fn(mu + 1.0) * reciprocal_gamma(denom_arg) * std::pow(t, mu - a);
}

namespace detail {

ConvolutionWeights::ConvolutionWeights(double sigma, double q, double h)
    : sigma_(sigma), q_(q), h_(h), p_(sigma + 1.0) {
    if (!(sigma > -1.0)) throw domain_error("ConvolutionWeights: sigma must exceed -1");
    if (!(q > 0.0) || !(q <= 1.0))
        throw domain_error("ConvolutionWeights: kernel order must lie in (0, 1]");
    if (!(h > 0.0)) throw domain_error("ConvolutionWeights: h must be positive");
    kernel_trivial_ = (q_ == 1.0);
    weight_trivial_ = (sigma_ == 0.0);
    if (!kernel_trivial_ && !weight_trivial_) {
        ln_beta_pq_ = fracblow::detail::lbeta(p_, q_);
        beta_pq_ = std::exp(ln_beta_pq_);
        beta_p1q_ = beta_pq_ * p_ / (p_ + q_);
    } else {
        // still needed for the row prefactor bookkeeping below
        beta_pq_ = std::exp(fracblow::detail::lbeta(p_, q_));
        beta_p1q_ = beta_pq_ * p_ / (p_ + q_);
    }
}

void ConvolutionWeights::regularized_pair(double x, double& gp, double& gpp) const {
    if (x <= 0.0) {
        gp = gpp = 0.0;
        return;
    }
    if (x >= 1.0) {
        gp = gpp = 1.0;
        return;
    }
    if (kernel_trivial_) {
        // I_x(p, 1) = x^p
        gp = std::pow(x, p_);
        gpp = gp * x;
        return;
    }
    if (weight_trivial_) {
        // p = 1: I_x(1, q) = 1 - (1-x)^q, and the contiguous relation with
        // B(1, q) = 1/q gives I_x(2, q) = I_x(1,q) - q x (1-x)^q.
        const double omxq = std::pow(1.0 - x, q_);
        gp = 1.0 - omxq;
        gpp = gp - q_ * x * omxq;
        return;
    }
    gp = fracblow::detail::ibeta_core(x, p_, q_, ln_beta_pq_);
    const double front = std::exp(p_ * std::log(x) + q_ * std::log1p(-x) - ln_beta_pq_);
    gpp = gp - front / p_;
}

void ConvolutionWeights::row(std::size_t j, std::span<double> w) const {
    if (j < 1) throw domain_error("ConvolutionWeights: node index must be >= 1");
    if (w.size() < j + 1) throw domain_error("ConvolutionWeights: weight buffer too small");
    const double t = static_cast<double>(j) * h_;
    const double prefac = std::pow(t, q_ + sigma_);
    const double jd = static_cast<double>(j);
    for (std::size_t k = 0; k <= j; ++k) w[k] = 0.0;
    double gp_prev = 0.0, gpp_prev = 0.0;
    for (std::size_t k = 0; k < j; ++k) {
        double gp, gpp;
        regularized_pair(static_cast<double>(k + 1) / jd, gp, gpp);
        const double p0 = beta_pq_ * (gp - gp_prev);
        const double p1 = beta_p1q_ * (gpp - gpp_prev);
        const double e = jd * p1 - static_cast<double>(k) * p0;
        w[k] += prefac * (p0 - e);
        w[k + 1] += prefac * e;
        gp_prev = gp;
        gpp_prev = gpp;
    }
}

}  // namespace detail

namespace {

// Leading coefficient of I^q [t^sigma z] near 0: z(0) Gamma(sigma+1)/Gamma(sigma+q+1),
// multiplying t^(sigma+q).
double integral_leading_coeff(const SingularGridFunction& f, double q) {
    return f.z[0] * gamma_fn(f.sigma + 1.0) * reciprocal_gamma(f.sigma + q + 1.0);
}

}  // namespace

SingularGridFunction rl_left_integral_grid(FracOrder order, const SingularGridFunction& f) {
    const double q = order.value;
    if (!(q > 0.0)) throw domain_error("rl_left_integral_grid: order must lie in (0, 1]");
    if (f.n < 1) throw domain_error("rl_left_integral_grid: empty grid");

    const double inv_gamma_q = reciprocal_gamma(q);
    detail::ConvolutionWeights cw(f.sigma, q, f.h);
    std::vector<double> w(f.n + 1);
    std::vector<double> vals(f.n + 1, 0.0);
    for (std::size_t j = 1; j <= f.n; ++j) {
        cw.row(j, w);
        double acc = 0.0;
        for (std::size_t k = 0; k <= j; ++k) acc += w[k] * f.z[k];
        vals[j] = acc * inv_gamma_q;
    }

    const double s_out = f.sigma + q;
    const double lead = integral_leading_coeff(f, q);
    if (s_out >= -1e-14) {
        // bounded result: plain samples with the analytic limit at node 0
        vals[0] = (s_out > 1e-14) ? 0.0 : lead;
        SingularGridFunction out(f.t0, f.h, f.n, 0.0, std::move(vals));
        out.left_exponent = s_out;
        out.left_coeff = lead;
        return out;
    }
    // still singular at the origin: carry the regular part
    for (std::size_t j = 1; j <= f.n; ++j) vals[j] /= std::pow(f.t(j) - f.t0, s_out);
    vals[0] = lead;
    SingularGridFunction out(f.t0, f.h, f.n, s_out, std::move(vals));
    out.left_exponent = s_out;
    out.left_coeff = lead;
    return out;
}

SingularGridFunction rl_left_derivative_grid(FracOrder order, const SingularGridFunction& f) {
    const double a = order.value;
    if (!(a > 0.0) || !(a < 1.0))
        throw domain_error("rl_left_derivative_grid: order must lie in (0, 1)");
    if (f.n < 3) throw domain_error("rl_left_derivative_grid: need at least 3 steps");
    if (f.sigma + (1.0 - a) < -1e-14)
        throw domain_error("rl_left_derivative_grid: f.sigma + (1 - order) must be >= 0");

    const SingularGridFunction g = rl_left_integral_grid(FracOrder(1.0 - a), f);
    const std::size_t n = f.n;
    std::vector<double> d(n + 1, 0.0);
    for (std::size_t j = 1; j < n; ++j) d[j] = (g.z[j + 1] - g.z[j - 1]) / (2.0 * f.h);
    d[n] = (3.0 * g.z[n] - 4.0 * g.z[n - 1] + g.z[n - 2]) / (2.0 * f.h);

    // node 0 from the analytic leading power t^(sigma - order)
    const double e0 = f.sigma - a;
    const double coeff = f.z[0] * gamma_fn(f.sigma + 1.0) * reciprocal_gamma(f.sigma + 1.0 - a);
    if (coeff == 0.0 || e0 > 1e-14) {
        d[0] = 0.0;
    } else if (std::abs(e0) <= 1e-14) {
        d[0] = coeff;
    } else {
        d[0] = std::copysign(std::numeric_limits<double>::infinity(), coeff);
    }
    SingularGridFunction out(f.t0, f.h, n, 0.0, std::move(d));
    out.left_exponent = e0;
    out.left_coeff = coeff;
    return out;
}

double rl_right_integral_at(FracOrder order, const std::function<double(double)>& g,
                            double t, double b, const QuadratureBudget& budget) {
    const double q = order.value;
    if (!(q > 0.0)) throw domain_error("rl_right_integral_at: order must lie in (0, 1]");
    if (!(b > t)) throw domain_error("rl_right_integral_at: need b > t");

    const double inv_gamma_q = reciprocal_gamma(q);
    const double len = b - t;
    // product integration on N uniform panels, kernel moments exact
    auto level = [&](int npanels) {
        const double hh = len / npanels;
        double acc = 0.0;
        double gv_prev = g(t);
        double tau_prev = 0.0;
        double tau_prev_q = 0.0;
        double tau_prev_q1 = 0.0;
        for (int i = 1; i <= npanels; ++i) {
            const double tau = hh * i;
            const double tau_q = std::pow(tau, q);
            const double tau_q1 = tau_q * tau;
            const double gv = g(t + tau);
            const double m0 = (tau_q - tau_prev_q) / q;
            const double m1 = (tau_q1 - tau_prev_q1) / (q + 1.0);
            // linear interpolant in tau: g ~ gv_prev + slope (tau - tau_prev)
            const double slope = (gv - gv_prev) / hh;
            acc += gv_prev * m0 + slope * (m1 - tau_prev * m0);
            gv_prev = gv;
            tau_prev = tau;
            tau_prev_q = tau_q;
            tau_prev_q1 = tau_q1;
        }
        return acc * inv_gamma_q;
    };

    int npanels = 8;
    double prev = level(npanels);
    for (int r = 0; r < budget.max_refinements; ++r) {
        npanels *= 2;
        const double cur = level(npanels);
        if (std::abs(cur - prev) <= budget.abs_tol) return cur;
        prev = cur;
    }
    throw accuracy_error("rl_right_integral_at: refinement budget exhausted", prev);
}

IbpResult integration_by_parts_check(FracOrder order, const SingularGridFunction& phi,
                                     const SingularGridFunction& psi,
                                     const QuadratureBudget& budget) {
    if (phi.n != psi.n || phi.h != psi.h || phi.t0 != psi.t0)
        throw domain_error("integration_by_parts_check: grids must match");
    const std::size_t n = phi.n;
    if (n < 2 || (n % 2) != 0)
        throw domain_error("integration_by_parts_check: need an even number of steps");

    const double b = phi.t(n);
    const SingularGridFunction ipsi = rl_left_integral_grid(order, psi);

    // composite Simpson over the grid nodes
    auto simpson_nodes = [&](const std::function<double(std::size_t)>& fj) {
        double sum = fj(0) + fj(n);
        for (std::size_t j = 1; j < n; ++j) sum += (j & 1 ? 4.0 : 2.0) * fj(j);
        return sum * phi.h / 3.0;
    };

    const double lhs =
        simpson_nodes([&](std::size_t j) { return phi.value(j) * ipsi.value(j); });

    auto phi_eval = [&](double s) { return phi.eval(s); };
    const double rhs = simpson_nodes([&](std::size_t j) {
        if (j == n) return 0.0;  // right integral over an empty interval
        const double tj = phi.t(j);
        return psi.value(j) * rl_right_integral_at(order, phi_eval, tj, b, budget);
    });
    return {lhs, rhs};
}

}  // namespace fracblow
