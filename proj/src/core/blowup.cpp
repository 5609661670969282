#include "core/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "core/errors.hpp"
#include "core/numutil.hpp"
#include "core/oracles.hpp"

namespace fracblow {

BlowupReport detect(const Trajectory& traj, double cap) {
    BlowupReport rep;
    if (traj.status == SolveStatus::stagnated) {
        rep.status = SolveStatus::stagnated;
        return rep;
    }
    for (std::size_t j = 0; j <= traj.grid.n; ++j) {
        const double y = traj.grid.value(j);
        if (j > 0 && std::abs(y) > cap) {
            rep.status = SolveStatus::blowup;
            rep.t_escape = traj.grid.t(j);
            return rep;
        }
    }
    if (traj.status == SolveStatus::blowup) {
        rep.status = SolveStatus::blowup;
        rep.t_escape = traj.t_escape;
        return rep;
    }
    rep.status = SolveStatus::completed;
    return rep;
}

BlowupFit estimate_blowup_time(const Trajectory& traj, double m) {
    if (traj.status != SolveStatus::blowup)
        throw domain_error("estimate_blowup_time: trajectory did not blow up");
    if (!(m > 1.0)) throw domain_error("estimate_blowup_time: m must exceed 1");

    const SingularGridFunction& g = traj.grid;
    const double trust = std::sqrt(traj.cap);

    // tail window: last nodes with finite 0 < |y| <= sqrt(cap)
    std::vector<double> ts, ys;
    for (std::size_t jj = g.n + 1; jj-- > 1;) {
        const double y = std::abs(g.value(jj));
        if (!std::isfinite(y) || y > trust) {
            if (!ts.empty()) break;
            continue;
        }
        if (y <= 0.0) break;
        ts.push_back(g.t(jj));
        ys.push_back(y);
        if (ts.size() >= 20) break;
    }
    if (ts.size() < 8)
        throw estimation_error("estimate_blowup_time: fewer than 8 usable tail nodes");
    std::reverse(ts.begin(), ts.end());
    std::reverse(ys.begin(), ys.end());

    const double slope = -1.0 / (m - 1.0);
    std::vector<double> ly(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) ly[i] = std::log(ys[i]);

    const double t_last = ts.back();
    const double span = t_last - ts.front();
    auto ssr = [&](double t_star) {
        double mean = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i)
            mean += ly[i] - slope * std::log(t_star - ts[i]);
        mean /= static_cast<double>(ts.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double r = ly[i] - slope * std::log(t_star - ts[i]) - mean;
            acc += r * r;
        }
        return acc;
    };

    double lo = t_last + 1e-9 * std::max(span, g.h);
    double hi = t_last + 10.0 * std::max(span, g.h);
    if (traj.t_escape) lo = std::max(lo, *traj.t_escape - g.h);
    if (traj.t_end > 0.0) hi = std::min(std::max(hi, lo + g.h), 1.1 * traj.t_end);

    // coarse scan, then golden refinement around the best candidate
    constexpr int kCoarse = 96;
    double best = lo, best_val = ssr(lo);
    for (int i = 1; i <= kCoarse; ++i) {
        const double cand = lo + (hi - lo) * i / kCoarse;
        const double v = ssr(cand);
        if (v < best_val) {
            best_val = v;
            best = cand;
        }
    }
    const double step = (hi - lo) / kCoarse;
    const double t_star = golden_min(ssr, std::max(lo, best - step),
                                     std::min(hi, best + step), 1e-12 * std::max(1.0, hi));

    double sst = 0.0;
    {
        double mean = 0.0;
        for (double v : ly) mean += v;
        mean /= static_cast<double>(ly.size());
        for (double v : ly) sst += (v - mean) * (v - mean);
    }
    const double r2 = sst > 0.0 ? 1.0 - ssr(t_star) / sst : 1.0;
    return {t_star, r2};
}

bool in_theorem_range(double alpha, double beta, double gamma, double m) {
    (void)alpha;
    if (!(m > 1.0)) return false;
    if (beta == 1.0) return gamma > -1.0;
    if (!(gamma > -beta)) return false;
    const double m_star = threshold_m_star(ThresholdSpec(gamma, beta));
    return m <= m_star + 1e-12;
}

namespace {

ScanCell run_cell(FracOrder alpha, FracOrder beta, double b, double gamma, double m,
                  double horizon, std::size_t n, double cap) {
    ScanCell cell{gamma, m, {}, in_theorem_range(alpha.value, beta.value, gamma, m)};
    try {
        const ProblemSpec spec = ProblemSpec::power(alpha, beta, gamma, m, b);
        const Trajectory traj = solve(spec, horizon, n, cap);
        cell.report = detect(traj, cap);
        if (cell.report.status == SolveStatus::blowup) {
            try {
                const BlowupFit fit = estimate_blowup_time(traj, m);
                if (fit.fit_quality >= 0.0) {
                    cell.report.t_star_estimate = fit.t_star;
                    cell.report.fit_quality = fit.fit_quality;
                }
            } catch (const estimation_error&) {
                // keep the blow-up classification without an extrapolated time
            }
        }
    } catch (const std::exception&) {
        cell.report = {};
        cell.report.status = SolveStatus::stagnated;
    }
    return cell;
}

}  // namespace

std::vector<ScanCell> scan(FracOrder alpha, FracOrder beta, double b,
                           const std::vector<double>& gamma_grid,
                           const std::vector<double>& m_grid, double horizon,
                           std::size_t n, double cap, int threads) {
    if (gamma_grid.empty() || m_grid.empty()) throw domain_error("scan: empty grid");
    if (!(beta.value <= alpha.value)) throw domain_error("scan: requires beta <= alpha");
    for (double m : m_grid)
        if (!(m > 1.0)) throw domain_error("scan: every m must exceed 1");

    const std::size_t total = gamma_grid.size() * m_grid.size();
    std::vector<ScanCell> cells(total);
    auto compute = [&](std::size_t idx) {
        const double gamma = gamma_grid[idx / m_grid.size()];
        const double m = m_grid[idx % m_grid.size()];
        return run_cell(alpha, beta, b, gamma, m, horizon, n, cap);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < total; ++i) cells[i] = compute(i);
        return cells;
    }
    std::vector<std::future<ScanCell>> futures(total);
    // simple bounded fan-out; cells are independent and merged in grid order
    std::size_t launched = 0, collected = 0;
    const std::size_t window = static_cast<std::size_t>(threads);
    while (collected < total) {
        while (launched < total && launched - collected < window) {
            futures[launched] = std::async(std::launch::async, compute, launched);
            ++launched;
        }
        cells[collected] = futures[collected].get();
        ++collected;
    }
    return cells;
}

}  // namespace fracblow
