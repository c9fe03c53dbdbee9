// fvweno command-line driver: run benchmark problems, produce convergence
// and long-time error tables, sweep the ACM robustness parameter and time
// the per-step cost of the weight mappings.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fvweno/harness.hpp"
#include "fvweno/problems.hpp"

using namespace fvweno;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitInvariantFailure = 4;

struct CommonOpts {
    std::string problem;
    std::string scheme = "js";
    int nx = 0, ny = 0;
    double cfl = -1.0;
    double t_end = -1.0;
    double epsilon = 1e-40;
    int acm_k = 2;
    double acm_amp = 20.0;
    double acm_delta = 1e-6;
    double acm_cfs_fraction = 0.1;
    int pm_k = 6;
    std::string out_dir = ".";
};

void add_scheme_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scheme", o.scheme, "weight mapping: js, m, pm6 or acm")
        ->check(CLI::IsMember({"js", "m", "pm6", "acm"}));
    cmd->add_option("--epsilon", o.epsilon, "smoothness-indicator denominator guard");
    cmd->add_option("--acm-k", o.acm_k, "ACM transition sharpness exponent k");
    cmd->add_option("--acm-A", o.acm_amp, "ACM transition scale factor A");
    cmd->add_option("--acm-delta", o.acm_delta, "ACM transition half-width delta");
    cmd->add_option("--acm-cfs-fraction", o.acm_cfs_fraction,
                    "CFS_s as a fraction of the ideal weight d_s");
    cmd->add_option("--pm-k", o.pm_k, "PM mapping exponent parameter (default 6)");
}

void add_mesh_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--nx", o.nx, "cells in x");
    cmd->add_option("--ny", o.ny, "cells in y (2D problems)");
    cmd->add_option("--cfl", o.cfl, "CFL number override");
    cmd->add_option("--t-end", o.t_end, "output time override");
}

WeightConfig weight_config(const CommonOpts& o) {
    WeightConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.pm_k = o.pm_k;
    cfg.acm.k = o.acm_k;
    cfg.acm.amp = o.acm_amp;
    cfg.acm.delta = o.acm_delta;
    cfg.acm.cfs_fraction = o.acm_cfs_fraction;
    if (o.scheme == "js") cfg.scheme = Scheme::JS;
    else if (o.scheme == "m") cfg.scheme = Scheme::M;
    else if (o.scheme == "pm6") cfg.scheme = Scheme::PM6;
    else if (o.scheme == "acm") cfg.scheme = Scheme::ACM;
    else throw CLI::ValidationError("--scheme", "unknown scheme " + o.scheme);
    return cfg;
}

std::string out_path(const CommonOpts& o, const std::string& file) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / file).string();
}

void print_failure(const RunResult& r) {
    std::printf("blow-up detected: %s = %s at cell (%d, %d), t = %.6g, step %ld, stage %d\n",
                r.failure.quantity.c_str(), format_full(r.failure.value).c_str(),
                r.failure.cell_i, r.failure.cell_j, r.failure.time, r.failure.step,
                r.failure.rk_stage);
}

int cmd_run(const CommonOpts& o, double slice_y, bool has_slice_y) {
    const ProblemSpec& spec = lookup(o.problem);
    const WeightConfig cfg = weight_config(o);
    const int nx = o.nx > 0 ? o.nx : spec.domain.nx;
    const int ny = o.ny > 0 ? o.ny : spec.domain.ny;
    RunResult r = run_problem(spec, cfg, nx, ny, o.cfl, o.t_end);

    if (spec.dim() == 2)
        std::printf("%s (%s), %dx%d cells: %s after %ld steps to t = %.6g\n",
                    spec.name.c_str(), scheme_name(cfg.scheme), nx, ny,
                    r.completed ? "completed" : "stopped", r.stats.steps, r.t_final);
    else
        std::printf("%s (%s), %d cells: %s after %ld steps to t = %.6g\n", spec.name.c_str(),
                    scheme_name(cfg.scheme), nx, r.completed ? "completed" : "stopped",
                    r.stats.steps, r.t_final);
    std::printf("  min rho = %.6g, min p = %.6g, wall %.2fs (%.4g s per RK step)\n",
                r.stats.min_rho, r.stats.min_pressure, r.stats.wall_seconds,
                r.stats.steps ? r.stats.stage_seconds / double(r.stats.steps) : 0.0);

    char name[160];
    if (spec.dim() == 1) {
        std::snprintf(name, sizeof name, "%s_%s_N%d.dat", spec.name.c_str(),
                      scheme_name(cfg.scheme), nx);
        const std::string path = out_path(o, name);
        write_slice(path, r.field, spec.equation);
        std::printf("  wrote %s\n", path.c_str());
    } else {
        std::snprintf(name, sizeof name, "%s_%s_%dx%d.dat", spec.name.c_str(),
                      scheme_name(cfg.scheme), nx, ny);
        const std::string path = out_path(o, name);
        write_field2d(path, r.field, r.t_final);
        std::printf("  wrote %s\n", path.c_str());
        if (has_slice_y) {
            const GridSpec& g = r.field.grid();
            int j = int((slice_y - g.y0) / g.dy());
            j = std::max(0, std::min(g.ny - 1, j));
            std::snprintf(name, sizeof name, "%s_%s_%dx%d_y%.4g.dat", spec.name.c_str(),
                          scheme_name(cfg.scheme), nx, ny, slice_y);
            const std::string spath = out_path(o, name);
            write_slice_row(spath, r.field, spec.equation, j);
            std::printf("  wrote %s\n", spath.c_str());
        }
    }
    if (!r.completed) {
        print_failure(r);
        return kExitBlowUp;
    }
    return 0;
}

int cmd_converge(const CommonOpts& o, std::vector<int> meshes) {
    const ProblemSpec& spec = lookup(o.problem);
    const WeightConfig cfg = weight_config(o);
    if (meshes.empty()) meshes = spec.mesh_levels;
    if (meshes.empty())
        throw CLI::ValidationError("--meshes", "no mesh sequence for " + spec.name);
    ConvergenceTable t = convergence_study(spec, cfg, meshes, o.cfl, o.t_end);
    const std::string text = format_convergence(t);
    std::fputs(text.c_str(), stdout);
    char name[160];
    std::snprintf(name, sizeof name, "converge_%s_%s.csv", spec.name.c_str(),
                  scheme_name(cfg.scheme));
    write_convergence_csv(out_path(o, name), t);
    return 0;
}

int cmd_longtime(const CommonOpts& o, std::vector<double> times) {
    const ProblemSpec& spec = lookup(o.problem.empty() ? "lae-sine9" : o.problem);
    const WeightConfig cfg = weight_config(o);
    if (times.empty()) times = spec.output_times;
    const int n = o.nx > 0 ? o.nx : spec.domain.nx;
    auto rows = long_time_study(spec, cfg, n, times);
    std::string csv = "t,L1,L2,Linf\n";
    for (const auto& row : rows) {
        if (row.blew_up) {
            csv += format_full(row.t) + ",blow-up,,\n";
            continue;
        }
        csv += format_full(row.t) + "," + format_full(row.norms.l1) + "," +
               format_full(row.norms.l2) + "," + format_full(row.norms.linf) + "\n";
    }
    std::fputs(csv.c_str(), stdout);
    char name[160];
    std::snprintf(name, sizeof name, "longtime_%s_%s_N%d.csv", spec.name.c_str(),
                  scheme_name(cfg.scheme), n);
    std::ofstream(out_path(o, name)) << csv;
    return 0;
}

int cmd_sweep_cfs(const CommonOpts& o, std::vector<double> fractions) {
    const ProblemSpec& spec = lookup(o.problem.empty() ? "blastwave" : o.problem);
    if (fractions.empty())
        fractions = {0.001, 0.01, 0.095, 0.099, 0.0999, 0.1, 0.3, 0.5, 0.7, 0.9};
    const int n = o.nx > 0 ? o.nx : spec.domain.nx;
    std::string csv = "cfs_fraction,status,steps,t_reached,detail\n";
    for (double f : fractions) {
        CommonOpts oo = o;
        oo.scheme = "acm";
        oo.acm_cfs_fraction = f;
        const WeightConfig cfg = weight_config(oo);
        RunResult r = run_problem(spec, cfg, n, o.ny, o.cfl, o.t_end);
        std::string detail;
        if (!r.completed)
            detail = r.failure.quantity + "=" + format_full(r.failure.value) + "@cell " +
                     std::to_string(r.failure.cell_i);
        csv += format_full(f) + std::string(",") + (r.completed ? "completed" : "blow-up") +
               "," + std::to_string(r.stats.steps) + "," + format_full(r.t_final) + "," +
               detail + "\n";
    }
    std::fputs(csv.c_str(), stdout);
    char name[160];
    std::snprintf(name, sizeof name, "sweep_cfs_%s_N%d.csv", spec.name.c_str(), n);
    std::ofstream(out_path(o, name)) << csv;
    return 0;
}

int cmd_time(const CommonOpts& o, int repeats, long max_steps) {
    const ProblemSpec& spec = lookup(o.problem);
    const int nx = o.nx > 0 ? o.nx : spec.domain.nx;
    const int ny = o.ny > 0 ? o.ny : spec.domain.ny;
    TimingReport rep = timing_study(spec, {Scheme::JS, Scheme::M, Scheme::PM6, Scheme::ACM},
                                    nx, ny, repeats, max_steps, o.t_end);
    if (rep.short_run_warning)
        std::fprintf(stderr, "warning: fewer than 100 RK stages timed; "
                             "T(X) may be resolution-limited\n");
    const std::string text = format_timing(rep);
    std::fputs(text.c_str(), stdout);
    char name[160];
    std::snprintf(name, sizeof name, "timing_%s_%dx%d.csv", spec.name.c_str(), nx, ny);
    write_timing_csv(out_path(o, name), rep);
    return 0;
}

int cmd_list() {
    for (const auto& p : catalog()) {
        std::string mesh = std::to_string(p.domain.nx);
        if (p.dim() == 2) mesh += "x" + std::to_string(p.domain.ny);
        std::printf("%-14s %-8s default %-10s t_end=%-8g %s\n", p.name.c_str(),
                    p.equation == Equation::Advection   ? "advect"
                    : p.equation == Equation::Euler1D ? "euler1d"
                                                      : "euler2d",
                    mesh.c_str(), p.t_end, p.description.c_str());
    }
    return 0;
}

// Quick library self-check of the central invariants.
int run_invariant_suite() {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };

    {
        bool ok = true;
        AcmParams ap;
        for (double d : {0.1, 0.6, 0.3}) {
            AcmMap acm(d, ap);
            const std::function<double(double)> maps[3] = {
                [d](double w) { return map_m(w, d); },
                [d](double w) { return map_pm(w, d, 6); },
                [&acm](double w) { return acm(w); }};
            for (const auto& g : maps) {
                ok &= std::fabs(g(0.0)) <= 1e-14;
                ok &= std::fabs(g(d) - d) <= 1e-14;
                ok &= std::fabs(g(1.0) - 1.0) <= 1e-14;
                double prev = g(0.0);
                for (int i = 1; i <= 1000; ++i) {
                    const double v = g(i / 1000.0);
                    ok &= v >= prev - 1e-14;
                    prev = v;
                }
            }
        }
        report("mapping fixed points and monotonicity", ok);
    }
    {
        bool ok = true;
        AcmParams ap;
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (double d : {0.1, 0.6, 0.3}) {
            AcmMap acm(d, ap);
            for (int i = 0; i < 20000; ++i) {
                const double w = dist(rng);
                if (acm(w) != acm.full(w)) ok = false;
            }
        }
        report("ACM shortcut/full-formula equivalence", ok);
    }
    {
        bool ok = true;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> rho(0.1, 5.0), vel(-3.0, 3.0), pres(0.05, 10.0);
        for (int it = 0; it < 500; ++it) {
            const Cons2D a = prim_to_cons(Prim2D{rho(rng), vel(rng), vel(rng), pres(rng)});
            const Cons2D b = prim_to_cons(Prim2D{rho(rng), vel(rng), vel(rng), pres(rng)});
            const EigenSystem<4> e = eigensystem_x(roe_average(a, b));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double acc = 0.0;
                    for (int n = 0; n < 4; ++n) acc += e.L[i][n] * e.R[n][j];
                    if (std::fabs(acc - (i == j ? 1.0 : 0.0)) > 1e-12) ok = false;
                }
        }
        report("characteristic decomposition L*R = I", ok);
    }
    {
        const double lambda = -0.9, dt = 0.04, u0 = 2.0, z = lambda * dt;
        const double u1 = u0 + dt * lambda * u0;
        const double u2 = 0.75 * u0 + 0.25 * u1 + 0.25 * dt * lambda * u1;
        const double un = (1.0 / 3.0) * u0 + (2.0 / 3.0) * u2 + (2.0 / 3.0) * dt * lambda * u2;
        const double taylor = u0 * (1.0 + z + z * z / 2.0 + z * z * z / 6.0);
        report("SSP-RK3 third-order stage algebra",
               std::fabs(un - taylor) <= 1e-14 * std::fabs(u0));
    }
    {
        GridSpec g{1, -1.0, 1.0, 0.0, 1.0, 50, 1};
        Field u(g, 1);
        for (int i = 0; i < 50; ++i) u.at(0, i) = std::sin(M_PI * g.xc(i));
        double before = 0.0;
        for (int i = 0; i < 50; ++i) before += u.at(0, i);
        StepContext ctx;
        ctx.eq = Equation::Advection;
        ctx.bc.left.kind = ctx.bc.right.kind = BcKind::Periodic;
        ctx.cfl = 0.5;
        ctx.t_end = 1e9;
        ctx.max_steps = 50;
        RunResult r = run_loop(u, ctx);
        double after = 0.0;
        for (int i = 0; i < 50; ++i) after += r.field.at(0, i);
        report("periodic conservation over 50 steps",
               r.completed && std::fabs(after - before) <= 1e-12);
    }
    std::printf("%s\n", failures == 0 ? "invariant suite: all checks passed"
                                      : "invariant suite: FAILURES detected");
    return failures == 0 ? 0 : kExitInvariantFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fvweno: fifth-order mapped-WENO finite-volume solver"};
    app.set_config("--config", "", "read options from a [section] key = value file");
    app.require_subcommand(0, 1);

    bool seed_check = false;
    app.add_flag("--seed-check", seed_check, "run the library invariant suite and exit");

    CommonOpts o;
    double slice_y = 0.0;

    CLI::App* c_run = app.add_subcommand("run", "run one simulation and write its field/slice")->configurable();
    c_run->add_option("--problem", o.problem, "benchmark name (see `list`)")->required();
    add_mesh_flags(c_run, o);
    add_scheme_flags(c_run, o);
    c_run->add_option("--out-dir", o.out_dir, "output directory");
    CLI::Option* optslice =
        c_run->add_option("--slice-y", slice_y, "also write the row nearest this y");

    CLI::App* c_conv = app.add_subcommand("converge", "mesh-refinement error/order table")->configurable();
    std::vector<int> meshes;
    c_conv->add_option("--problem", o.problem, "advection benchmark")->required();
    add_mesh_flags(c_conv, o);
    add_scheme_flags(c_conv, o);
    c_conv->add_option("--meshes", meshes, "cell counts (default: the problem's ladder)");
    c_conv->add_option("--out-dir", o.out_dir, "output directory");

    CLI::App* c_long = app.add_subcommand("longtime", "errors at a series of output times")->configurable();
    std::vector<double> times;
    c_long->add_option("--problem", o.problem, "advection benchmark (default lae-sine9)");
    add_mesh_flags(c_long, o);
    add_scheme_flags(c_long, o);
    c_long->add_option("--times", times, "output times (default: the problem's list)");
    c_long->add_option("--out-dir", o.out_dir, "output directory");

    CLI::App* c_sweep = app.add_subcommand("sweep-cfs", "ACM robustness sweep over CFS fractions")->configurable();
    std::vector<double> fractions;
    c_sweep->add_option("--problem", o.problem, "benchmark (default blastwave)");
    add_mesh_flags(c_sweep, o);
    add_scheme_flags(c_sweep, o);
    c_sweep->add_option("--fractions", fractions, "cfs_fraction values to sweep");
    c_sweep->add_option("--out-dir", o.out_dir, "output directory");

    CLI::App* c_time = app.add_subcommand("time", "per-RK-step cost of all four schemes")->configurable();
    int repeats = 3;
    long max_steps = -1;
    c_time->add_option("--problem", o.problem, "benchmark name")->required();
    add_mesh_flags(c_time, o);
    add_scheme_flags(c_time, o);
    c_time->add_option("--repeats", repeats, "identical runs per scheme (default 3)");
    c_time->add_option("--max-steps", max_steps, "truncate each run after this many steps");
    c_time->add_option("--out-dir", o.out_dir, "output directory");

    CLI::App* c_list = app.add_subcommand("list", "print the benchmark catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (seed_check) return run_invariant_suite();
        if (c_run->parsed()) return cmd_run(o, slice_y, optslice->count() > 0);
        if (c_conv->parsed()) return cmd_converge(o, meshes);
        if (c_long->parsed()) return cmd_longtime(o, times);
        if (c_sweep->parsed()) return cmd_sweep_cfs(o, fractions);
        if (c_time->parsed()) return cmd_time(o, repeats, max_steps);
        if (c_list->parsed()) return cmd_list();
        std::fputs(app.help().c_str(), stdout);
        return 0;
    } catch (const NotFoundError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        return kExitBlowUp;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
