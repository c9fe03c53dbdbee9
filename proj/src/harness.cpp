#include "fvweno/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fvweno {

ErrorNorms error_norms(const Field& numeric, const Field& exact, int comp) {
    const GridSpec& g = numeric.grid();
    const GridSpec& ge = exact.grid();
    if (g.dim != ge.dim || g.nx != ge.nx || (g.dim == 2 && g.ny != ge.ny))
        throw MeshMismatchError("error_norms: fields live on different meshes");
    const double measure = g.dim == 2 ? g.dx() * g.dy() : g.dx();
    ErrorNorms n;
    double sum1 = 0.0, sum2 = 0.0;
    const int ny = g.dim == 2 ? g.ny : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (g.dim == 2 && !numeric.is_fluid(i, j)) continue;
            const double e = (g.dim == 2 ? numeric.at(comp, i, j) : numeric.at(comp, i)) -
                             (g.dim == 2 ? exact.at(comp, i, j) : exact.at(comp, i));
            sum1 += std::fabs(e);
            sum2 += e * e;
            n.linf = std::fmax(n.linf, std::fabs(e));
        }
    n.l1 = measure * sum1;
    n.l2 = std::sqrt(measure * sum2);
    return n;
}

namespace {

Field exact_advection_field(const ProblemSpec& spec, const GridSpec& g, double t) {
    Field f(g, 1);
    for (int i = 0; i < g.nx; ++i)
        f.at(0, i) = advection_exact(spec, g.xc(i), t);
    return f;
}

double order_of(double e_prev, double e_cur, double h_prev, double h_cur) {
    return std::log(e_prev / e_cur) / std::log(h_prev / h_cur);
}

} // namespace

ConvergenceTable convergence_study(const ProblemSpec& spec, const WeightConfig& weights,
                                   const std::vector<int>& meshes,
                                   double cfl_override, double t_end_override) {
    if (spec.equation != Equation::Advection)
        throw InvalidInputError("convergence_study: exact solution required (advection only)");
    ConvergenceTable table;
    const double t_end = t_end_override > 0.0 ? t_end_override : spec.t_end;
    for (int n : meshes) {
        ConvergenceRow row;
        row.h = (spec.domain.x1 - spec.domain.x0) / n;
        RunResult r = run_problem(spec, weights, n, 0, cfl_override, t_end);
        if (!r.completed) {
            row.blew_up = true;
            table.rows.push_back(row);
            continue;
        }
        const Field ex = exact_advection_field(spec, r.field.grid(), t_end);
        const ErrorNorms e = error_norms(r.field, ex);
        row.l1 = e.l1;
        row.l2 = e.l2;
        row.linf = e.linf;
        if (table.rows.size() >= 1 && !table.rows.back().blew_up) {
            const ConvergenceRow& prev = table.rows.back();
            row.order1 = order_of(prev.l1, row.l1, prev.h, row.h);
            row.order2 = order_of(prev.l2, row.l2, prev.h, row.h);
            row.order_inf = order_of(prev.linf, row.linf, prev.h, row.h);
        }
        table.rows.push_back(row);
    }
    return table;
}

std::vector<LongTimeRow> long_time_study(const ProblemSpec& spec, const WeightConfig& weights,
                                         int n, const std::vector<double>& times) {
    std::vector<LongTimeRow> rows;
    for (double t : times) {
        LongTimeRow row;
        row.t = t;
        RunResult r = run_problem(spec, weights, n, 0, -1.0, t);
        if (!r.completed) {
            row.blew_up = true;
            rows.push_back(row);
            continue;
        }
        const Field ex = exact_advection_field(spec, r.field.grid(), t);
        row.norms = error_norms(r.field, ex);
        rows.push_back(row);
    }
    return rows;
}

TimingReport timing_study(const ProblemSpec& spec, const std::vector<Scheme>& schemes,
                          int nx, int ny, int repeats, long max_steps,
                          double t_end_override) {
    TimingReport report;
    double t_js = -1.0;
    for (Scheme s : schemes) {
        TimingRow row;
        row.scheme = s;
        report.rows.push_back(row);
    }
    // Repeats are interleaved across schemes so slow clock/load drift on a
    // shared machine biases every scheme equally.
    for (int rep = 0; rep < repeats; ++rep) {
        for (std::size_t k = 0; k < schemes.size(); ++k) {
            WeightConfig cfg;
            cfg.scheme = schemes[k];
            RunResult r = run_problem(spec, cfg, nx, ny, -1.0, t_end_override, max_steps);
            if (!r.completed)
                throw BlowUpError("timing_study: run blew up", r.failure.cell_i,
                                  r.failure.cell_j, r.failure.time, r.failure.rk_stage,
                                  r.failure.quantity, r.failure.value);
            report.rows[k].repeats.push_back(r.stats.stage_seconds / double(r.stats.steps));
            report.rows[k].stages = r.stats.stages;
            if (r.stats.stages < 100) report.short_run_warning = true;
        }
    }
    for (auto& row : report.rows) {
        double sum = 0.0;
        for (double v : row.repeats) sum += v;
        row.t_mean = sum / double(row.repeats.size());
        std::vector<double> sorted = row.repeats;
        std::sort(sorted.begin(), sorted.end());
        row.t_median = sorted[sorted.size() / 2];
        if (row.scheme == Scheme::JS) t_js = row.t_mean;
    }
    // Extra cost P(X) relative to JS and the reduced mapping cost of each
    // scheme against WENO-M / WENO-PM6.
    double p_m = 0.0, p_pm6 = 0.0;
    for (auto& row : report.rows) {
        if (t_js > 0.0)
            row.extra_pct = (row.t_mean - t_js) / t_js * 100.0;
        if (row.scheme == Scheme::M) p_m = row.extra_pct;
        if (row.scheme == Scheme::PM6) p_pm6 = row.extra_pct;
    }
    for (auto& row : report.rows) {
        if (row.scheme == Scheme::JS) continue;
        if (p_m != 0.0) row.reduced_vs_m_pct = (p_m - row.extra_pct) / p_m * 100.0;
        if (p_pm6 != 0.0) row.reduced_vs_pm6_pct = (p_pm6 - row.extra_pct) / p_pm6 * 100.0;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Output artifacts
// ---------------------------------------------------------------------------

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_slice(const std::string& path, const Field& f, Equation eq) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path);
    const GridSpec& g = f.grid();
    if (eq == Equation::Advection) {
        out << "# x u\n";
        for (int i = 0; i < g.nx; ++i)
            out << format_full(g.xc(i)) << ' ' << format_full(f.at(0, i)) << '\n';
        return;
    }
    out << "# x rho u p E\n";
    for (int i = 0; i < g.nx; ++i) {
        const Cons1D c = f.cons1(i);
        out << format_full(g.xc(i)) << ' ' << format_full(c.rho) << ' '
            << format_full(c.mx / c.rho) << ' ' << format_full(pressure(c)) << ' '
            << format_full(c.E) << '\n';
    }
}

void write_slice_row(const std::string& path, const Field& f, Equation eq, int j) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path);
    const GridSpec& g = f.grid();
    if (eq != Equation::Euler2D) throw InvalidInputError("write_slice_row: 2D Euler field expected");
    out << "# x rho u v p E\n";
    for (int i = 0; i < g.nx; ++i) {
        const Cons2D c = f.cons2(i, j);
        out << format_full(g.xc(i)) << ' ' << format_full(c.rho) << ' '
            << format_full(c.mx / c.rho) << ' ' << format_full(c.my / c.rho) << ' '
            << format_full(pressure(c)) << ' ' << format_full(c.E) << '\n';
    }
}

void write_field2d(const std::string& path, const Field& f, double t) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path);
    const GridSpec& g = f.grid();
    out << g.nx << ' ' << g.ny << ' ' << format_full(g.x0) << ' ' << format_full(g.y0)
        << ' ' << format_full(g.dx()) << ' ' << format_full(g.dy()) << ' '
        << format_full(t) << '\n';
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Cons2D c = f.cons2(i, j);
            out << i << ' ' << j << ' ' << format_full(c.rho) << ' '
                << format_full(c.mx / c.rho) << ' ' << format_full(c.my / c.rho) << ' '
                << format_full(pressure(c)) << ' ' << format_full(c.E) << '\n';
        }
}

SliceData read_slice(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open " + path);
    SliceData data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string name;
            while (hs >> name) data.columns.push_back(name);
            continue;
        }
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) data.rows.push_back(std::move(row));
    }
    return data;
}

Field2DData read_field2d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open " + path);
    Field2DData d;
    in >> d.nx >> d.ny >> d.x0 >> d.y0 >> d.dx >> d.dy >> d.t;
    double i, j, rho, u, v, p, E;
    while (in >> i >> j >> rho >> u >> v >> p >> E)
        d.rows.push_back({i, j, rho, u, v, p, E});
    return d;
}

std::string format_convergence(const ConvergenceTable& table) {
    std::ostringstream out;
    out << "h,L1,order1,L2,order2,Linf,orderInf\n";
    for (const auto& r : table.rows) {
        if (r.blew_up) {
            out << format_full(r.h) << ",blow-up,,,,,\n";
            continue;
        }
        out << format_full(r.h) << ',' << format_full(r.l1) << ',' << format_full(r.order1)
            << ',' << format_full(r.l2) << ',' << format_full(r.order2) << ','
            << format_full(r.linf) << ',' << format_full(r.order_inf) << '\n';
    }
    return out.str();
}

std::string format_timing(const TimingReport& report) {
    std::ostringstream out;
    out << "scheme,T_mean,T_median,P_pct,reduced_vs_M_pct,reduced_vs_PM6_pct\n";
    for (const auto& r : report.rows) {
        out << scheme_name(r.scheme) << ',' << format_full(r.t_mean) << ','
            << format_full(r.t_median) << ',' << format_full(r.extra_pct) << ','
            << format_full(r.reduced_vs_m_pct) << ',' << format_full(r.reduced_vs_pm6_pct)
            << '\n';
    }
    return out.str();
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path);
    out << format_convergence(table);
}

void write_timing_csv(const std::string& path, const TimingReport& report) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path);
    out << format_timing(report);
}

} // namespace fvweno
