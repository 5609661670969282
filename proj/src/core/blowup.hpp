#pragma once

#include <optional>
#include <vector>

#include "core/solver.hpp"

namespace fracblow {

struct BlowupReport {
    SolveStatus status = SolveStatus::completed;
    std::optional<double> t_escape;
    std::optional<double> t_star_estimate;
    std::optional<double> fit_quality;  // R^2 of the extrapolation fit
};

// Classify a trajectory against the cap.  Escape recorded at the first
// stored node beyond the cap, or at the solver's own escape node when the
// implicit step lost solvability.
BlowupReport detect(const Trajectory& traj, double cap);

// Blow-up time by fitting log|y| against log(t* - t) with the slope
// -1/(m-1) of the power-law escape profile, minimizing the least-squares
// residual over t*.  The window is the last (up to 20, at least 8) finite
// nodes with |y| below sqrt(cap).
struct BlowupFit {
    double t_star;
    double fit_quality;
};
BlowupFit estimate_blowup_time(const Trajectory& traj, double m);

struct ScanCell {
    double gamma;
    double m;
    BlowupReport report;
    bool in_theorem_range;  // computed from the threshold formula, never observed
};

// One solve + detect per (gamma, m) pair with the power source, row-major
// gamma then m.  Individual cell failures are recorded as stagnated.  Cells
// are independent; threads > 1 evaluates them concurrently with results
// merged in grid order.
std::vector<ScanCell> scan(FracOrder alpha, FracOrder beta, double b,
                           const std::vector<double>& gamma_grid,
                           const std::vector<double>& m_grid, double horizon,
                           std::size_t n, double cap, int threads = 1);

// The analytic theorem-range flag: gamma > -beta and 1 < m <= m*(gamma, beta),
// with the range unbounded above when beta = 1.
bool in_theorem_range(double alpha, double beta, double gamma, double m);

}  // namespace fracblow
