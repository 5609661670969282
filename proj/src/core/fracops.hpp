#pragma once

#include <functional>
#include <span>

#include "core/grid.hpp"

namespace fracblow {

enum class RLKind { integral, derivative };

// Tolerance/effort budget for adaptive quadrature.
struct QuadratureBudget {
    double abs_tol = 1e-8;
    int max_refinements = 20;

    QuadratureBudget() = default;
    QuadratureBudget(double tol, int refinements);
};

// Analytic Riemann-Liouville action on the power function t^mu (left
// endpoint 0):
//   integral:   Gamma(mu+1)/Gamma(mu+1+order) t^(mu+order)
//   derivative: Gamma(mu+1)/Gamma(mu+1-order) t^(mu-order),
// which is identically 0 when mu = order - 1.
double rl_power_rule(RLKind kind, FracOrder order, double mu, double t);

// Left-sided fractional integral of order in (0, 1] on the grid, by
// product integration: z is interpolated piecewise-linearly and the
// kernel-and-weight moments (t-s)^(order-1) s^sigma are integrated
// exactly through incomplete-beta increments.
SingularGridFunction rl_left_integral_grid(FracOrder order, const SingularGridFunction& f);

// Left-sided fractional derivative of order in (0, 1) via differencing of
// the (1-order) integral: centered at interior nodes, one-sided at the
// right boundary.  Requires f.sigma + (1 - order) >= 0 so the inner
// integral is continuous; the node-0 sample is the analytic limit, stored
// non-finite when singular (with the exponent/coefficient pair recorded in
// left_exponent/left_coeff).
SingularGridFunction rl_left_derivative_grid(FracOrder order, const SingularGridFunction& f);

// Right-sided fractional integral (1/Gamma(order)) int_t^b (s-t)^(order-1) g(s) ds
// by product integration with exact kernel moments on a uniformly refined
// mesh; refinement stops when two levels agree to budget.abs_tol.
double rl_right_integral_at(FracOrder order, const std::function<double(double)>& g,
                            double t, double b, const QuadratureBudget& budget = {});

// Both sides of the fractional integration-by-parts identity
//   int phi (I_left^order psi) dt  =  int psi (I_right^order phi) dt
// over the common grid of phi and psi, each by composite quadrature.
struct IbpResult {
    double lhs;
    double rhs;
};
IbpResult integration_by_parts_check(FracOrder order, const SingularGridFunction& phi,
                                     const SingularGridFunction& psi,
                                     const QuadratureBudget& budget = {});

namespace detail {

// Weight engine for one convolution family: fixed kernel order q and
// endpoint exponent sigma, uniform step h.  row(j, w) fills w[0..j] with
// weights such that
//   int_0^{t_j} (t_j - s)^(q-1) s^sigma l(s) ds = sum_k w[k] l(t_k)
// for l piecewise linear on the grid (exact for the singular factors).
// The 1/Gamma(q) normalization is NOT included.
class ConvolutionWeights {
public:
    ConvolutionWeights(double sigma, double q, double h);

    void row(std::size_t j, std::span<double> w) const;

    double sigma() const { return sigma_; }
    double order() const { return q_; }

private:
    // I_x(p, q) and I_x(p+1, q); the second via the contiguous relation
    // I_x(p+1,q) = I_x(p,q) - x^p (1-x)^q / (p B(p,q)).
    void regularized_pair(double x, double& gp, double& gpp) const;

    double sigma_, q_, h_, p_;
    double ln_beta_pq_ = 0.0;
    double beta_pq_ = 0.0;    // B(p, q)
    double beta_p1q_ = 0.0;   // B(p+1, q)
    bool kernel_trivial_ = false;   // q == 1
    bool weight_trivial_ = false;   // sigma == 0
};

}  // namespace detail

}  // namespace fracblow
