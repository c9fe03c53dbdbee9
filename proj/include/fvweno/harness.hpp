#ifndef FVWENO_HARNESS_HPP_
#define FVWENO_HARNESS_HPP_

// Error norms, convergence tables, timing measurements and the text output
// formats (slice files, 2D field dumps, CSV tables).

#include <iosfwd>
#include <string>
#include <vector>

#include "fvweno/problems.hpp"

namespace fvweno {

struct ErrorNorms {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// L1 = h sum|e|, L2 = sqrt(h sum e^2), Linf = max|e| over one component
// (2D cell measure is dx*dy).  Both fields must share a mesh.
ErrorNorms error_norms(const Field& numeric, const Field& exact, int comp = 0);

struct ConvergenceRow {
    double h = 0.0;
    double l1 = 0.0, order1 = 0.0;
    double l2 = 0.0, order2 = 0.0;
    double linf = 0.0, order_inf = 0.0;
    bool blew_up = false;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

// Errors and orders of an advection problem against its exact solution on a
// mesh sequence; orders use log(e_prev/e_cur)/log(h_prev/h_cur).
ConvergenceTable convergence_study(const ProblemSpec& spec, const WeightConfig& weights,
                                   const std::vector<int>& meshes,
                                   double cfl_override = -1.0, double t_end_override = -1.0);

struct LongTimeRow {
    double t = 0.0;
    ErrorNorms norms;
    bool blew_up = false;
};

// Errors at a series of output times on one mesh (long-time behavior).
std::vector<LongTimeRow> long_time_study(const ProblemSpec& spec, const WeightConfig& weights,
                                         int n, const std::vector<double>& times);

struct TimingRow {
    Scheme scheme = Scheme::JS;
    double t_mean = 0.0;   // seconds per Runge-Kutta step (3 stages)
    double t_median = 0.0;
    double extra_pct = 0.0;         // P(X) relative to the JS row
    double reduced_vs_m_pct = 0.0;  // (P(M) - P(X)) / P(M) * 100
    double reduced_vs_pm6_pct = 0.0;
    std::vector<double> repeats;    // per-repeat T(X)
    long stages = 0;
};

struct TimingReport {
    std::vector<TimingRow> rows;
    bool short_run_warning = false; // fewer than 100 stages timed
};

// Per-RK-step cost of each scheme on one problem/mesh, averaged over
// `repeats` identical runs.  max_steps > 0 truncates each run (the metric is
// a per-stage average, so truncation only reduces averaging).
TimingReport timing_study(const ProblemSpec& spec, const std::vector<Scheme>& schemes,
                          int nx, int ny, int repeats, long max_steps = -1,
                          double t_end_override = -1.0);

// ---------------------------------------------------------------------------
// Output artifacts
// ---------------------------------------------------------------------------

// 1D slice: "# x <var...>" header, one row per cell, 17 significant digits.
// For Euler fields the variables are the primitives (rho u [v] p) plus E.
void write_slice(const std::string& path, const Field& f, Equation eq);
// Extracts row j of a 2D field as a slice along x.
void write_slice_row(const std::string& path, const Field& f, Equation eq, int j);

// 2D field dump: header "nx ny x0 y0 dx dy t", then "i j rho u v p E" rows
// in row-major (j outer) order.
void write_field2d(const std::string& path, const Field& f, double t);

struct SliceData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
SliceData read_slice(const std::string& path);

struct Field2DData {
    int nx = 0, ny = 0;
    double x0 = 0, y0 = 0, dx = 0, dy = 0, t = 0;
    std::vector<std::vector<double>> rows; // i j rho u v p E
};
Field2DData read_field2d(const std::string& path);

void write_convergence_csv(const std::string& path, const ConvergenceTable& table);
void write_timing_csv(const std::string& path, const TimingReport& report);
std::string format_convergence(const ConvergenceTable& table);
std::string format_timing(const TimingReport& report);

// 17-significant-digit decimal form (round-trips to the same double).
std::string format_full(double v);

} // namespace fvweno

#endif
