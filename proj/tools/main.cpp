// fracblow CLI: lemma verification, single solves, parameter scans, and
// closed-form oracle queries over the fracblow C API.
//
// Exit codes: 0 success, 1 computation/I-O error, 2 validation error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracblow/fracblow.h"
#include "emit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitValidation = 2;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(fb_status st, const std::string& what) {
    if (st == FB_OK) return;
    const std::string msg = what + ": " + fb_last_error();
    if (st == FB_ERR_DOMAIN || st == FB_ERR_INVALID) fail(kExitValidation, msg);
    fail(kExitComputation, msg);
}

// "a,b,c" or "lo:hi:count"
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
            fail(kExitValidation, "bad grid '" + s + "': expected lo:hi:count");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(kExitValidation, "bad numeric list entry '" + tok + "'");
        }
    }
    if (out.empty()) fail(kExitValidation, "empty numeric list '" + s + "'");
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = sxx - sx * sx / n;
    return (sxy - sx * sy / n) / denom;
}

const char* status_text(int s) {
    switch (s) {
        case FB_STATUS_COMPLETED: return "completed";
        case FB_STATUS_BLOWUP: return "blowup";
        case FB_STATUS_STAGNATED: return "stagnated";
    }
    return "stagnated";
}

struct CommonOut {
    std::string emit = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOut& c) {
    cmd->add_option("--emit", c.emit, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out_path, "output path (default: stdout)");
    cmd->set_config("--config", "", "flat key = value file; flags override file values");
}

void emit_or_fail(const cli::Table& t, const CommonOut& c) {
    if (!cli::emit_table(t, c.emit, c.out_path))
        fail(kExitComputation, "cannot write output to '" + c.out_path + "'");
}

// ---- verify-lemmas -------------------------------------------------------

struct VerifyArgs {
    double alpha = 0.5;
    double m = 2.0;
    std::string t_list = "1,10,100";
    int lemma = 8;
    double p = -1.0;      // default 1/m
    int lambda = 0;       // default choose_lambda(m)
    double abs_tol = 1e-8;
    bool negate_k1 = false;
    CommonOut out;
};

int run_verify(const VerifyArgs& a) {
    if (!(a.m > 1.0)) fail(kExitValidation, "verify-lemmas: m must exceed 1");
    const std::vector<double> ts = parse_grid(a.t_list);
    for (double T : ts)
        if (!(T > 0.0)) fail(kExitValidation, "verify-lemmas: every T must be positive");
    const double p = a.p >= 0.0 ? a.p : 1.0 / a.m;
    int lambda = a.lambda;
    if (lambda <= 0) check(fb_choose_lambda(a.m, &lambda), "choose_lambda");

    double k1 = 0.0;
    check(fb_k1_bound(lambda, p, &k1), "k1_bound");
    if (a.negate_k1) k1 = -k1;  // deliberate corruption; the run must then fail

    std::vector<double> integrals(ts.size());
    std::vector<double> bounds(ts.size());
    bool all_ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double iv = 0.0, bound = 0.0, expo = 0.0;
        if (a.lemma == 8) {
            check(fb_cutoff_integral_fractional(a.alpha, a.m, lambda, p, ts[i], a.abs_tol, &iv),
                  "cutoff integral");
            check(fb_cutoff_bound(0, a.alpha, a.m, k1, ts[i], &bound, &expo), "cutoff bound");
        } else if (a.lemma == 9) {
            check(fb_cutoff_integral_classical(a.m, lambda, p, ts[i], a.abs_tol, &iv),
                  "cutoff integral");
            check(fb_cutoff_bound(1, a.alpha, a.m, k1, ts[i], &bound, &expo), "cutoff bound");
        } else {
            fail(kExitValidation, "verify-lemmas: --lemma must be 8 or 9");
        }
        integrals[i] = iv;
        bounds[i] = bound;
        if (!(iv <= bound)) all_ok = false;
    }

    cli::Cell slope = cli::Cell::none();
    if (ts.size() >= 2) slope = cli::Cell(loglog_slope(ts, integrals));

    cli::Table table;
    table.columns = {"T", "I_of_T", "bound", "exponent_fit"};
    for (std::size_t i = 0; i < ts.size(); ++i)
        table.rows.push_back({cli::Cell(ts[i]), cli::Cell(integrals[i]), cli::Cell(bounds[i]), slope});
    emit_or_fail(table, a.out);
    if (!all_ok) {
        std::cerr << "verify-lemmas: inequality I(T) <= bound violated\n";
        return kExitComputation;
    }
    return kExitOk;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
    double alpha = 0.9;
    double beta = 0.45;
    double gamma = 0.0;
    double m = 2.0;
    double b = 1.0;
    double source_scale = 1.0;
    std::string rhs = "power";
    double c1 = 0.0, c2 = 0.0, delta = 1.0;
    double t_end = 50.0;
    std::size_t n = 2048;
    double cap = 1e8;
    CommonOut out;
};

int run_solve(const SolveArgs& a) {
    fb_problem* prob = nullptr;
    if (a.rhs == "power")
        prob = fb_problem_new_power(a.alpha, a.beta, a.gamma, a.m, a.b, a.source_scale);
    else if (a.rhs == "zero")
        prob = fb_problem_new_zero(a.alpha, a.beta, a.b);
    else if (a.rhs == "manufactured")
        prob = fb_problem_new_manufactured(a.alpha, a.beta, a.b, a.c1, a.c2, a.delta);
    else
        fail(kExitValidation, "solve: --rhs must be power, zero or manufactured");
    if (!prob) fail(kExitValidation, std::string("solve: ") + fb_last_error());

    fb_trajectory* traj = nullptr;
    const fb_status st = fb_solve(prob, a.t_end, a.n, a.cap, &traj);
    fb_problem_free(prob);
    check(st, "solve");

    const int status = fb_trajectory_status(traj);
    cli::Cell t_escape = cli::Cell::none();
    cli::Cell t_star = cli::Cell::none();
    cli::Cell quality = cli::Cell::none();
    double te = 0.0;
    if (fb_trajectory_t_escape(traj, &te) == FB_OK) t_escape = cli::Cell(te);
    if (status == FB_STATUS_BLOWUP && a.m > 1.0) {
        double ts = 0.0, r2 = 0.0;
        if (fb_estimate_blowup_time(traj, a.m, &ts, &r2) == FB_OK && r2 >= 0.0) {
            t_star = cli::Cell(ts);
            quality = cli::Cell(r2);
        }
    }

    // one-line JSON summary, then the trajectory table
    cli::Table summary;
    summary.columns = {"status", "t_escape", "t_star_estimate", "fit_quality"};
    summary.rows.push_back({cli::Cell(status_text(status)), t_escape, t_star, quality});
    std::string line = cli::to_json(summary);
    // single object, not a rows wrapper
    const std::size_t lb = line.find('[');
    const std::size_t rb = line.rfind(']');
    std::cout << line.substr(lb + 1, rb - lb - 1) << "\n";

    const std::size_t nodes = fb_trajectory_nodes(traj);
    std::vector<double> times(nodes), values(nodes);
    check(fb_trajectory_times(traj, times.data(), nodes), "trajectory times");
    check(fb_trajectory_values(traj, values.data(), nodes), "trajectory values");
    fb_trajectory_free(traj);

    cli::Table table;
    table.columns = {"t", "y"};
    for (std::size_t j = 0; j < nodes; ++j)
        table.rows.push_back({cli::Cell(times[j]), cli::Cell(values[j])});
    emit_or_fail(table, a.out);
    return kExitOk;
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
    double alpha = 0.9;
    double beta = 0.5;
    double b = 1.0;
    std::string gamma_grid = "0:2:9";
    std::string m_grid = "1.25:4:12";
    double horizon = 50.0;
    std::size_t n = 2048;
    double cap = 1e8;
    int threads = 1;
    CommonOut out;
};

int run_scan(const ScanArgs& a) {
    const std::vector<double> gammas = parse_grid(a.gamma_grid);
    const std::vector<double> ms = parse_grid(a.m_grid);
    fb_scan* scan = nullptr;
    check(fb_scan_run(a.alpha, a.beta, a.b, gammas.data(), gammas.size(), ms.data(), ms.size(),
                      a.horizon, a.n, a.cap, a.threads, &scan),
          "scan");
    cli::Table table;
    table.columns = {"gamma", "m", "in_theorem_range", "status",
                     "t_escape", "t_star_estimate", "fit_quality"};
    const std::size_t total = fb_scan_size(scan);
    for (std::size_t i = 0; i < total; ++i) {
        fb_scan_cell c;
        check(fb_scan_get(scan, i, &c), "scan cell");
        std::vector<cli::Cell> row;
        row.emplace_back(c.gamma);
        row.emplace_back(c.m);
        row.emplace_back(c.in_theorem_range ? "true" : "false");
        row.emplace_back(status_text(c.status));
        row.push_back(c.has_escape ? cli::Cell(c.t_escape) : cli::Cell::none());
        row.push_back(c.has_estimate ? cli::Cell(c.t_star_estimate) : cli::Cell::none());
        row.push_back(c.has_estimate ? cli::Cell(c.fit_quality) : cli::Cell::none());
        table.rows.push_back(std::move(row));
    }
    fb_scan_free(scan);
    emit_or_fail(table, a.out);
    return kExitOk;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
    double b = 2.0;
    double m = 2.0;
    double alpha = 0.9;
    double beta = 0.45;
    double gamma = 0.0;
    std::optional<double> t;
    CommonOut out;
};

int run_oracle(const std::string& which, const OracleArgs& a) {
    cli::Table table;
    if (which == "bernoulli" || which == "power-ode") {
        const bool bern = which == "bernoulli";
        double t_star = 0.0;
        check(bern ? fb_bernoulli_blowup_time(a.b, a.m, &t_star)
                   : fb_power_ode_blowup_time(a.b, a.m, &t_star),
              which);
        if (a.t) {
            double v = 0.0;
            check(bern ? fb_bernoulli(a.b, a.m, *a.t, &v) : fb_power_ode(a.b, a.m, *a.t, &v),
                  which);
            table.columns = {"blowup_time", "value"};
            table.rows.push_back({cli::Cell(t_star), cli::Cell(v)});
        } else {
            table.columns = {"blowup_time"};
            table.rows.push_back({cli::Cell(t_star)});
        }
    } else if (which == "ml-linear") {
        if (!a.t) fail(kExitValidation, "oracle ml-linear: --t is required");
        double v = 0.0;
        check(fb_ml_linear(a.alpha, a.beta, a.b, *a.t, &v), "ml-linear");
        table.columns = {"value"};
        table.rows.push_back({cli::Cell(v)});
    } else if (which == "threshold") {
        double m_star = 0.0;
        check(fb_threshold_m_star(a.gamma, a.beta, &m_star), "threshold");
        table.columns = {"m_star"};
        table.rows.push_back({std::isfinite(m_star) ? cli::Cell(m_star) : cli::Cell("inf")});
    } else {
        fail(kExitValidation, "oracle: unknown kind '" + which + "'");
    }
    emit_or_fail(table, a.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracblow: fractional-calculus operators, a two-term fractional"
                 " initial-value solver, and blow-up threshold scans"};
    app.require_subcommand(1);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand(
        "verify-lemmas", "check the cutoff-integral bounds and their T-scaling");
    verify->add_option("--alpha", va.alpha, "fractional order in (0,1)")->capture_default_str();
    verify->add_option("--m", va.m, "source exponent, > 1")->capture_default_str();
    verify->add_option("--T", va.t_list, "T values: comma list or lo:hi:count")
        ->capture_default_str();
    verify->add_option("--lemma", va.lemma, "8 = fractional bound, 9 = classical bound")
        ->capture_default_str();
    verify->add_option("--p", va.p, "ratio exponent (default 1/m)");
    verify->add_option("--lambda", va.lambda, "profile smoothness power (default from m)");
    verify->add_option("--abs-tol", va.abs_tol, "quadrature tolerance")->capture_default_str();
    verify->add_flag("--negate-k1", va.negate_k1,
                     "corrupt the bound on purpose (harness self-test; the run fails)");
    add_common(verify, va.out);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "integrate one problem and report blow-up");
    solve->add_option("--alpha", sa.alpha, "order of the leading derivative, in (0,1]")
        ->capture_default_str();
    solve->add_option("--beta", sa.beta, "order of the lower derivative, in [0,alpha]")
        ->capture_default_str();
    solve->add_option("--gamma", sa.gamma, "source exponent of t")->capture_default_str();
    solve->add_option("--m", sa.m, "source power of |y|")->capture_default_str();
    solve->add_option("--b", sa.b, "weighted initial value")->capture_default_str();
    solve->add_option("--source-scale", sa.source_scale, "multiplier of the power source")
        ->capture_default_str();
    solve->add_option("--rhs", sa.rhs, "power | zero | manufactured")->capture_default_str();
    solve->add_option("--c1", sa.c1, "manufactured target: coefficient of t^(alpha-1)")
        ->capture_default_str();
    solve->add_option("--c2", sa.c2, "manufactured target: coefficient of t^delta")
        ->capture_default_str();
    solve->add_option("--delta", sa.delta, "manufactured target exponent")->capture_default_str();
    solve->add_option("--t-end", sa.t_end, "horizon")->capture_default_str();
    solve->add_option("--n", sa.n, "grid steps, >= 16")->capture_default_str();
    solve->add_option("--cap", sa.cap, "blow-up cap on |y|")->capture_default_str();
    add_common(solve, sa.out);

    ScanArgs sc;
    CLI::App* scan = app.add_subcommand("scan", "solve over a (gamma, m) grid");
    scan->add_option("--alpha", sc.alpha, "order of the leading derivative")->capture_default_str();
    scan->add_option("--beta", sc.beta, "order of the lower derivative")->capture_default_str();
    scan->add_option("--b", sc.b, "weighted initial value")->capture_default_str();
    scan->add_option("--gamma-grid", sc.gamma_grid, "comma list or lo:hi:count")
        ->capture_default_str();
    scan->add_option("--m-grid", sc.m_grid, "comma list or lo:hi:count, every m > 1")
        ->capture_default_str();
    scan->add_option("--horizon", sc.horizon, "per-cell horizon")->capture_default_str();
    scan->add_option("--n", sc.n, "grid steps per cell")->capture_default_str();
    scan->add_option("--cap", sc.cap, "blow-up cap")->capture_default_str();
    scan->add_option("--threads", sc.threads, "concurrent cells (output order is fixed)")
        ->capture_default_str();
    add_common(scan, sc.out);

    OracleArgs oa;
    CLI::App* oracle = app.add_subcommand("oracle", "closed-form reference values");
    oracle->require_subcommand(1);
    std::vector<std::string> kinds = {"bernoulli", "power-ode", "ml-linear", "threshold"};
    std::vector<CLI::App*> oracle_cmds;
    for (const std::string& kind : kinds) {
        CLI::App* cmd = oracle->add_subcommand(kind);
        cmd->add_option("--b", oa.b, "initial value")->capture_default_str();
        cmd->add_option("--m", oa.m, "source exponent")->capture_default_str();
        cmd->add_option("--alpha", oa.alpha, "leading order")->capture_default_str();
        cmd->add_option("--beta", oa.beta, "lower order")->capture_default_str();
        cmd->add_option("--gamma", oa.gamma, "source exponent of t")->capture_default_str();
        double tv = 0.0;
        cmd->add_option_function<double>(
            "--t", [&oa](const double& v) { oa.t = v; }, "evaluation time");
        (void)tv;
        add_common(cmd, oa.out);
        oracle_cmds.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*verify) return run_verify(va);
        if (*solve) return run_solve(sa);
        if (*scan) return run_scan(sc);
        for (std::size_t i = 0; i < oracle_cmds.size(); ++i)
            if (*oracle_cmds[i]) return run_oracle(kinds[i], oa);
        return kExitValidation;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
