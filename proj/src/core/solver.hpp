#pragma once

#include <optional>
#include <vector>

#include "core/fracops.hpp"
#include "core/grid.hpp"

namespace fracblow {

// One power-law term c * t^e of a source given in closed form.
struct PowerTerm {
    double coeff;
    double exponent;
};

enum class RhsMode {
    zero,          // f = 0
    power_source,  // f = source_scale * t^gamma |y|^m
    manufactured,  // f = fixed sum of power terms (no y dependence)
};

// The two-term problem D^alpha y + D^beta y = f(t, y) with the weighted
// initial condition I^(1-alpha) y(0) = b, posed on orders
// 0 <= beta <= alpha <= 1.  beta = 0 means the lower term is y itself.
struct ProblemSpec {
    FracOrder alpha;
    FracOrder beta;
    double gamma = 0.0;
    double m = 2.0;
    double b = 0.0;
    RhsMode mode = RhsMode::zero;
    double source_scale = 1.0;
    std::vector<PowerTerm> manufactured_terms;

    ProblemSpec(FracOrder alpha_, FracOrder beta_, double b_);

    static ProblemSpec power(FracOrder alpha, FracOrder beta, double gamma, double m,
                             double b, double source_scale = 1.0);
    static ProblemSpec zero_rhs(FracOrder alpha, FracOrder beta, double b);
    static ProblemSpec manufactured(FracOrder alpha, FracOrder beta, double b,
                                    std::vector<PowerTerm> terms);

    double m_prime() const { return m / (m - 1.0); }

    // Source value f(t, y); uses the combined exponent form for the power
    // source so small t with gamma < 0 or alpha < 1 cannot overflow.
    double source_value(double t, double y) const;
};

// Data of the equivalent integral equation
//   y(t) = forcing_coeff t^forcing_exponent - (I^damping_order y)(t)
//          + (I^source_order f(., y))(t).
// For alpha = beta the left side carries y twice (I^0 = identity), and the
// initial-condition term enters once per derivative, doubling the forcing.
struct VolterraForm {
    double forcing_coeff;     // b/Gamma(alpha), doubled when alpha = beta
    double forcing_exponent;  // alpha - 1
    double damping_order;     // alpha - beta, 0 allowed
    double source_order;      // alpha
};

VolterraForm to_volterra(const ProblemSpec& spec);

enum class SolveStatus { completed, blowup, stagnated };

// Numerical solution y = t^(alpha-1) z on a uniform grid.  The grid holds
// the regular part z on the nodes actually reached.
struct Trajectory {
    SingularGridFunction grid;
    SolveStatus status = SolveStatus::completed;
    std::optional<double> t_escape;  // first node where |y| crossed the cap
    double cap = 0.0;
    double t_end = 0.0;              // requested horizon
};

// Advance the Volterra form by implicit product integration: at each node
// the scalar equation collecting the current-node weights of both
// convolutions plus the source is solved for z_j.  |y| > cap flags blow-up;
// a node equation that loses its root (the implicit step has no solution
// below the cap, the discrete signature of escape in finite time) is also
// reported as blow-up at that node.  A nonlinear solve that fails without
// such evidence yields status stagnated.
Trajectory solve(const ProblemSpec& spec, double t_end, std::size_t n, double cap);

// Grid samples of D^alpha y + D^beta y - f(t, y) on interior nodes, by
// direct substitution through the grid derivative operators.
SingularGridFunction residual(const ProblemSpec& spec, const Trajectory& traj);

// Forcing for the manufactured target y(t) = c1 t^(alpha-1) + c2 t^delta:
// D^alpha y + D^beta y computed analytically through the power rule (the
// D^alpha t^(alpha-1) term vanishes).
std::vector<PowerTerm> manufactured_rhs(FracOrder alpha, FracOrder beta, double c1,
                                        double c2, double delta);

// The manufactured target itself, as the regular part z(t) = c1 + c2 t^(delta-alpha+1).
double manufactured_regular_part(FracOrder alpha, double c1, double c2, double delta,
                                 double t);

}  // namespace fracblow
