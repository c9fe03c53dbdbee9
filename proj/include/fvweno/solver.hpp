#ifndef FVWENO_SOLVER_HPP_
#define FVWENO_SOLVER_HPP_

// Finite-volume spatial operator on uniform grids, SSP-RK3 time stepping and
// the run loop with blow-up detection.
//
// The 2D operator is dimension-by-dimension (one midpoint flux per face).
// The y-sweep reuses the x-sweep kernel on a transposed field with the two
// momentum components exchanged; the Euler equations are invariant under
// that relabeling, so both sweeps share one code path (and symmetric data
// stays symmetric to the last bit).

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fvweno/euler.hpp"
#include "fvweno/grid.hpp"
#include "fvweno/reconstruction.hpp"
#include "fvweno/weights.hpp"

namespace fvweno {

enum class Equation { Advection, Euler1D, Euler2D };

// ---------------------------------------------------------------------------
// Row flux kernels
// ---------------------------------------------------------------------------

// Scalar advection (f(u) = u) fluxes along one ghosted row.
// u has n + 2*ng entries; fhat receives the n + 1 interface fluxes.
template <Scheme S>
inline void row_fluxes_advection(const double* u, int n, const WeightTables& wt,
                                 double alpha, double* fhat) {
    for (int k = 0; k <= n; ++k) {
        const double a = weno_face<S>(u + k, wt);
        const double rev[5] = {u[k + 5], u[k + 4], u[k + 3], u[k + 2], u[k + 1]};
        const double b = weno_face<S>(rev, wt);
        fhat[k] = 0.5 * (a + b - alpha * (b - a));
    }
}

// Characteristic-wise Euler fluxes along one ghosted row (M = 3 or 4).
// comp[c] points at the ghosted row of component c; fhat[c] receives the
// n + 1 interface fluxes of component c.
template <int M, Scheme S>
inline void row_fluxes_euler(const double* const comp[M], int n, const WeightTables& wt,
                             double alpha, double* const fhat[M]) {
    for (int k = 0; k <= n; ++k) {
        double cells[6][M];
        for (int c = 0; c < M; ++c)
            for (int m = 0; m < 6; ++m)
                cells[m][c] = comp[c][k + m];

        RoeState roe;
        if constexpr (M == 3) {
            roe = roe_average(Cons1D{cells[2][0], cells[2][1], cells[2][2]},
                              Cons1D{cells[3][0], cells[3][1], cells[3][2]});
        } else {
            roe = roe_average(Cons2D{cells[2][0], cells[2][1], cells[2][2], cells[2][3]},
                              Cons2D{cells[3][0], cells[3][1], cells[3][2], cells[3][3]});
        }

        double ul[M], ur[M];
        if (__builtin_expect(roe.degenerate, 0)) {
            // Characteristic basis undefined: reconstruct the raw components.
            double win[5][2 * M];
            for (int i = 0; i < 5; ++i)
                for (int c = 0; c < M; ++c) {
                    win[i][c] = cells[i][c];
                    win[i][M + c] = cells[5 - i][c];
                }
            double faces[2 * M];
            weno_face_lanes<2 * M, S>(win, wt, faces);
            for (int c = 0; c < M; ++c) {
                ul[c] = faces[c];
                ur[c] = faces[M + c];
            }
        } else {
            EigenSystem<M> eig;
            if constexpr (M == 3)
                eig = eigensystem(roe);
            else
                eig = eigensystem_x(roe);
            reconstruct_characteristic_with<M, S>(cells, eig, wt, ul, ur);
        }

        double fl[M], fr[M];
        if constexpr (M == 3) {
            const auto a = physical_flux(Cons1D{ul[0], ul[1], ul[2]});
            const auto b = physical_flux(Cons1D{ur[0], ur[1], ur[2]});
            for (int c = 0; c < 3; ++c) { fl[c] = a[c]; fr[c] = b[c]; }
        } else {
            const auto a = physical_flux(Cons2D{ul[0], ul[1], ul[2], ul[3]}, Axis::X);
            const auto b = physical_flux(Cons2D{ur[0], ur[1], ur[2], ur[3]}, Axis::X);
            for (int c = 0; c < 4; ++c) { fl[c] = a[c]; fr[c] = b[c]; }
        }

        for (int c = 0; c < M; ++c)
            fhat[c][k] = 0.5 * (fl[c] + fr[c] - alpha * (ur[c] - ul[c]));
    }
}

// ---------------------------------------------------------------------------
// Boundary conditions, wave speeds, transposes
// ---------------------------------------------------------------------------

void fill_ghosts(Field& f, const BcSet& bc, Equation eq, double t);

// Largest |u_n| + c over fluid cells (1 for advection).
double max_wave_speed(const Field& f, Equation eq, Axis axis);

// dt from the CFL number; the caller clips the final step to t_end.
double compute_dt(const GridSpec& g, double cfl, double alpha_x, double alpha_y);

// Transposed copy with momentum components exchanged (Euler2D) so the
// y-sweep is the x-sweep of the transposed field.
void transpose_swap(const Field& src, Field& dst, Equation eq);
void add_transposed(Field& dst, const Field& src, Equation eq);

// ---------------------------------------------------------------------------
// Spatial operators
// ---------------------------------------------------------------------------

template <Scheme S>
inline void spatial_operator_1d_t(const Field& w, const WeightTables& wt, Equation eq,
                                  double alpha, Field& out) {
    const int n = w.grid().nx;
    const double inv_dx = 1.0 / w.grid().dx();
    if (eq == Equation::Advection) {
        std::vector<double> fhat(n + 1);
        row_fluxes_advection<S>(w.row(0, 0), n, wt, alpha, fhat.data());
        for (int i = 0; i < n; ++i)
            out.at(0, i) = -(fhat[i + 1] - fhat[i]) * inv_dx;
        return;
    }
    std::vector<double> fbuf(std::size_t(3) * (n + 1));
    double* fhat[3] = {fbuf.data(), fbuf.data() + (n + 1), fbuf.data() + 2 * (n + 1)};
    const double* comp[3] = {w.row(0, 0), w.row(1, 0), w.row(2, 0)};
    row_fluxes_euler<3, S>(comp, n, wt, alpha, fhat);
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < n; ++i)
            out.at(c, i) = -(fhat[c][i + 1] - fhat[c][i]) * inv_dx;
}

// Scratch buffers for the 2D operator (transposed field and tendencies).
struct SweepScratch {
    Field transposed;
    Field transposed_tend;
    std::vector<double> flux;
};

// x-sweep of a 2D field into `out` (+='s nothing; overwrites).
template <Scheme S>
inline void sweep_rows_2d(const Field& w, const WeightTables& wt, Equation eq,
                          double alpha, double inv_dx, Field& out,
                          std::vector<double>& fluxbuf) {
    const int n = w.grid().nx;
    const int ny = w.grid().ny;
    if (eq == Equation::Advection) {
        fluxbuf.resize(n + 1);
        for (int j = 0; j < ny; ++j) {
            row_fluxes_advection<S>(w.row(0, j), n, wt, alpha, fluxbuf.data());
            for (int i = 0; i < n; ++i)
                out.at(0, i, j) = -(fluxbuf[i + 1] - fluxbuf[i]) * inv_dx;
        }
        return;
    }
    fluxbuf.resize(std::size_t(4) * (n + 1));
    double* fhat[4] = {fluxbuf.data(), fluxbuf.data() + (n + 1),
                       fluxbuf.data() + 2 * (n + 1), fluxbuf.data() + 3 * (n + 1)};
    for (int j = 0; j < ny; ++j) {
        const double* comp[4] = {w.row(0, j), w.row(1, j), w.row(2, j), w.row(3, j)};
        row_fluxes_euler<4, S>(comp, n, wt, alpha, fhat);
        for (int c = 0; c < 4; ++c)
            for (int i = 0; i < n; ++i)
                out.at(c, i, j) = -(fhat[c][i + 1] - fhat[c][i]) * inv_dx;
    }
}

// Per-problem geometry hooks (forward-facing step).
struct GeometryHooks {
    // Fill internal wall ghost layers read by a sweep along `axis`.
    std::function<void(Field&, Axis)> wall_fill;
    // Applied after every RK stage (corner treatment).
    std::function<void(Field&)> post_stage_fix;
};

template <Scheme S>
inline void spatial_operator_2d_t(Field& w, const WeightTables& wt, Equation eq,
                                  double alpha_x, double alpha_y, Field& out,
                                  SweepScratch& scratch, const GeometryHooks& geom) {
    if (geom.wall_fill) geom.wall_fill(w, Axis::X);
    sweep_rows_2d<S>(w, wt, eq, alpha_x, 1.0 / w.grid().dx(), out, scratch.flux);

    if (geom.wall_fill) geom.wall_fill(w, Axis::Y);
    transpose_swap(w, scratch.transposed, eq);
    const GridSpec& tg = scratch.transposed.grid();
    if (scratch.transposed_tend.grid().nx != tg.nx ||
        scratch.transposed_tend.grid().ny != tg.ny ||
        scratch.transposed_tend.ncomp() != w.ncomp())
        scratch.transposed_tend = Field(tg, w.ncomp());
    sweep_rows_2d<S>(scratch.transposed, wt, eq, alpha_y, 1.0 / w.grid().dy(),
                     scratch.transposed_tend, scratch.flux);
    add_transposed(out, scratch.transposed_tend, eq);

    if (w.has_mask()) {
        for (int j = 0; j < w.grid().ny; ++j)
            for (int i = 0; i < w.grid().nx; ++i)
                if (!w.is_fluid(i, j))
                    for (int c = 0; c < w.ncomp(); ++c)
                        out.at(c, i, j) = 0.0;
    }
}

// Runtime-dispatch wrappers for tests and callers without a fixed scheme.
void spatial_operator_1d(const Field& w, const WeightConfig& cfg, Equation eq,
                         double alpha, Field& out);
void spatial_operator_2d(Field& w, const WeightConfig& cfg, Equation eq,
                         double alpha_x, double alpha_y, Field& out,
                         const GeometryHooks& geom = {});

// ---------------------------------------------------------------------------
// Time stepping and the run loop
// ---------------------------------------------------------------------------

struct BlowUpReport {
    bool blew_up = false;
    double time = 0.0;
    long step = 0;
    int rk_stage = 0;
    int cell_i = -1, cell_j = -1;
    std::string quantity;
    double value = 0.0;
};

struct RunStats {
    long steps = 0;
    long stages = 0;
    double stage_seconds = 0.0; // RK stage bodies only (timing mode metric)
    double wall_seconds = 0.0;
    double min_rho = std::numeric_limits<double>::infinity();
    double min_pressure = std::numeric_limits<double>::infinity();
};

struct RunResult {
    Field field;
    double t_final = 0.0;
    bool completed = false;
    RunStats stats;
    BlowUpReport failure;
};

struct StepContext {
    Equation eq = Equation::Advection;
    BcSet bc;
    GeometryHooks geom;
    WeightConfig weights;
    double cfl = 0.5;
    double t_end = 1.0;
    long max_steps = -1;           // stop early when >= 0 (timing runs)
    bool record_stage_time = false;
    std::function<void(const Field&, double, long)> on_step; // after each step
};

RunResult run_loop(Field initial, const StepContext& ctx);

} // namespace fvweno

#endif
