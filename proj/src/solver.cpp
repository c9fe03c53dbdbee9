#include "fvweno/solver.hpp"

#include <algorithm>
#include <cmath>

namespace fvweno {

namespace {

int normal_momentum_comp(Equation eq, Axis axis) {
    if (eq == Equation::Euler1D) return 1;
    if (eq == Equation::Euler2D) return axis == Axis::X ? 1 : 2;
    return -1; // scalar: nothing to negate
}

void impose_state(Field& f, int i, int j, const std::array<double, 4>& s, int ncomp) {
    for (int c = 0; c < ncomp; ++c) {
        if (f.grid().dim == 2)
            f.at(c, i, j) = s[c];
        else
            f.at(c, i) = s[c];
    }
}

} // namespace

void fill_ghosts(Field& f, const BcSet& bc, Equation eq, double t) {
    const GridSpec& g = f.grid();
    const int nc = f.ncomp();
    const int ng = GridSpec::ng;

    auto fill_x_side = [&](const BoundaryCondition& side, bool left, int j) {
        const int n = g.nx;
        for (int k = 1; k <= ng; ++k) {
            const int gi = left ? -k : n - 1 + k;
            switch (side.kind) {
                case BcKind::Periodic:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, gi, j) = left ? f.at(c, n - k, j) : f.at(c, k - 1, j);
                    break;
                case BcKind::Transmissive:
                case BcKind::Outflow:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, gi, j) = left ? f.at(c, 0, j) : f.at(c, n - 1, j);
                    break;
                case BcKind::Reflective: {
                    const int mi = left ? k - 1 : n - k;
                    const int mneg = normal_momentum_comp(eq, Axis::X);
                    for (int c = 0; c < nc; ++c)
                        f.at(c, gi, j) = (c == mneg) ? -f.at(c, mi, j) : f.at(c, mi, j);
                    break;
                }
                case BcKind::Inflow:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, gi, j) = side.state[c];
                    break;
                case BcKind::TimeDependent: {
                    const double y = g.dim == 2 ? g.yc(j) : 0.0;
                    const auto s = side.imposed(y, t);
                    if (s) {
                        for (int c = 0; c < nc; ++c)
                            f.at(c, gi, j) = (*s)[c];
                    } else {
                        const int mi = left ? k - 1 : n - k;
                        const int mneg = normal_momentum_comp(eq, Axis::X);
                        for (int c = 0; c < nc; ++c)
                            f.at(c, gi, j) = (c == mneg) ? -f.at(c, mi, j) : f.at(c, mi, j);
                    }
                    break;
                }
            }
        }
    };

    auto fill_y_side = [&](const BoundaryCondition& side, bool bottom, int i) {
        const int n = g.ny;
        for (int k = 1; k <= ng; ++k) {
            const int gj = bottom ? -k : n - 1 + k;
            switch (side.kind) {
                case BcKind::Periodic:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, i, gj) = bottom ? f.at(c, i, n - k) : f.at(c, i, k - 1);
                    break;
                case BcKind::Transmissive:
                case BcKind::Outflow:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, i, gj) = bottom ? f.at(c, i, 0) : f.at(c, i, n - 1);
                    break;
                case BcKind::Reflective: {
                    const int mj = bottom ? k - 1 : n - k;
                    const int mneg = normal_momentum_comp(eq, Axis::Y);
                    for (int c = 0; c < nc; ++c)
                        f.at(c, i, gj) = (c == mneg) ? -f.at(c, i, mj) : f.at(c, i, mj);
                    break;
                }
                case BcKind::Inflow:
                    for (int c = 0; c < nc; ++c)
                        f.at(c, i, gj) = side.state[c];
                    break;
                case BcKind::TimeDependent: {
                    const auto s = side.imposed(g.xc(i), t);
                    if (s) {
                        for (int c = 0; c < nc; ++c)
                            f.at(c, i, gj) = (*s)[c];
                    } else {
                        const int mj = bottom ? k - 1 : n - k;
                        const int mneg = normal_momentum_comp(eq, Axis::Y);
                        for (int c = 0; c < nc; ++c)
                            f.at(c, i, gj) = (c == mneg) ? -f.at(c, i, mj) : f.at(c, i, mj);
                    }
                    break;
                }
            }
        }
    };

    if (g.dim == 1) {
        fill_x_side(bc.left, true, 0);
        fill_x_side(bc.right, false, 0);
        return;
    }
    for (int j = 0; j < g.ny; ++j) {
        fill_x_side(bc.left, true, j);
        fill_x_side(bc.right, false, j);
    }
    for (int i = 0; i < g.nx; ++i) {
        fill_y_side(bc.bottom, true, i);
        fill_y_side(bc.top, false, i);
    }
}

double max_wave_speed(const Field& f, Equation eq, Axis axis) {
    if (eq == Equation::Advection)
        return 1.0;
    const GridSpec& g = f.grid();
    double alpha = 0.0;
    // Clamped sound speed: RK stage values may carry a transient pressure
    // undershoot; the bound must stay finite through it.
    auto speed = [](double rho, double p, double m) {
        return std::fabs(m / rho) + std::sqrt(std::fmax(kGamma * p / rho, 0.0));
    };
    if (eq == Equation::Euler1D) {
        for (int i = 0; i < g.nx; ++i) {
            const Cons1D c = f.cons1(i);
            alpha = std::fmax(alpha, speed(c.rho, pressure(c), c.mx));
        }
        return alpha;
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!f.is_fluid(i, j)) continue;
            const Cons2D c = f.cons2(i, j);
            alpha = std::fmax(alpha, speed(c.rho, pressure(c), axis == Axis::X ? c.mx : c.my));
        }
    return alpha;
}

double compute_dt(const GridSpec& g, double cfl, double alpha_x, double alpha_y) {
    if (g.dim == 1) {
        if (alpha_x == 0.0) return cfl * g.dx();
        return cfl * g.dx() / alpha_x;
    }
    const double denom = alpha_x / g.dx() + alpha_y / g.dy();
    if (denom == 0.0) return cfl * g.dx();
    return cfl / denom;
}

// Tiled transposes: the strided side walks cache-line-sized blocks so a
// production-mesh pass stays memory-bandwidth bound instead of thrashing.
void transpose_swap(const Field& src, Field& dst, Equation eq) {
    const GridSpec& g = src.grid();
    GridSpec tg = g;
    std::swap(tg.nx, tg.ny);
    std::swap(tg.x0, tg.y0);
    std::swap(tg.x1, tg.y1);
    if (dst.grid().nx != tg.nx || dst.grid().ny != tg.ny || dst.ncomp() != src.ncomp())
        dst = Field(tg, src.ncomp());
    const int ng = GridSpec::ng;
    const bool swap_mom = (eq == Equation::Euler2D);
    constexpr int B = 32;
    for (int c = 0; c < src.ncomp(); ++c) {
        const int cd = swap_mom ? (c == 1 ? 2 : (c == 2 ? 1 : c)) : c;
        for (int j0 = -ng; j0 < g.ny + ng; j0 += B)
            for (int i0 = -ng; i0 < g.nx + ng; i0 += B) {
                const int j1 = std::min(j0 + B, g.ny + ng);
                const int i1 = std::min(i0 + B, g.nx + ng);
                for (int j = j0; j < j1; ++j)
                    for (int i = i0; i < i1; ++i)
                        dst.at(cd, j, i) = src.at(c, i, j);
            }
    }
}

void add_transposed(Field& dst, const Field& src, Equation eq) {
    const GridSpec& g = dst.grid();
    const bool swap_mom = (eq == Equation::Euler2D);
    constexpr int B = 32;
    for (int c = 0; c < dst.ncomp(); ++c) {
        const int cs = swap_mom ? (c == 1 ? 2 : (c == 2 ? 1 : c)) : c;
        for (int j0 = 0; j0 < g.ny; j0 += B)
            for (int i0 = 0; i0 < g.nx; i0 += B) {
                const int j1 = std::min(j0 + B, g.ny);
                const int i1 = std::min(i0 + B, g.nx);
                for (int j = j0; j < j1; ++j)
                    for (int i = i0; i < i1; ++i)
                        dst.at(c, i, j) += src.at(cs, j, i);
            }
    }
}

void spatial_operator_1d(const Field& w, const WeightConfig& cfg, Equation eq,
                         double alpha, Field& out) {
    WeightTables wt(cfg);
    switch (cfg.scheme) {
        case Scheme::JS:  spatial_operator_1d_t<Scheme::JS>(w, wt, eq, alpha, out); break;
        case Scheme::M:   spatial_operator_1d_t<Scheme::M>(w, wt, eq, alpha, out); break;
        case Scheme::PM6: spatial_operator_1d_t<Scheme::PM6>(w, wt, eq, alpha, out); break;
        case Scheme::ACM: spatial_operator_1d_t<Scheme::ACM>(w, wt, eq, alpha, out); break;
    }
}

void spatial_operator_2d(Field& w, const WeightConfig& cfg, Equation eq,
                         double alpha_x, double alpha_y, Field& out,
                         const GeometryHooks& geom) {
    WeightTables wt(cfg);
    SweepScratch scratch;
    switch (cfg.scheme) {
        case Scheme::JS:
            spatial_operator_2d_t<Scheme::JS>(w, wt, eq, alpha_x, alpha_y, out, scratch, geom);
            break;
        case Scheme::M:
            spatial_operator_2d_t<Scheme::M>(w, wt, eq, alpha_x, alpha_y, out, scratch, geom);
            break;
        case Scheme::PM6:
            spatial_operator_2d_t<Scheme::PM6>(w, wt, eq, alpha_x, alpha_y, out, scratch, geom);
            break;
        case Scheme::ACM:
            spatial_operator_2d_t<Scheme::ACM>(w, wt, eq, alpha_x, alpha_y, out, scratch, geom);
            break;
    }
}

// ---------------------------------------------------------------------------
// Run loop
// ---------------------------------------------------------------------------

namespace {

// Positivity / finiteness sweep; throws BlowUpError and tracks the run
// minima.  Stage values are allowed a transient pressure undershoot
// (require_positive_pressure = false); step-end states are not.
void validate_field(const Field& f, Equation eq, double t, int stage, RunStats& stats,
                    bool require_positive_pressure) {
    const GridSpec& g = f.grid();
    if (eq == Equation::Advection) {
        for (int j = 0; j < (g.dim == 2 ? g.ny : 1); ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double v = g.dim == 2 ? f.at(0, i, j) : f.at(0, i);
                if (!std::isfinite(v))
                    throw BlowUpError("non-finite value", i, g.dim == 2 ? j : -1, t, stage,
                                      "finite", v);
            }
        return;
    }
    double min_rho = stats.min_rho;
    double min_p = stats.min_pressure;
    const int ny = g.dim == 2 ? g.ny : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (g.dim == 2 && !f.is_fluid(i, j)) continue;
            double rho, p;
            if (eq == Equation::Euler1D) {
                const Cons1D c = f.cons1(i);
                rho = c.rho;
                p = pressure(c);
                if (!std::isfinite(c.E) || !std::isfinite(c.mx))
                    throw BlowUpError("non-finite value", i, -1, t, stage, "finite", c.E);
            } else {
                const Cons2D c = f.cons2(i, j);
                rho = c.rho;
                p = pressure(c);
                if (!std::isfinite(c.E) || !std::isfinite(c.mx) || !std::isfinite(c.my))
                    throw BlowUpError("non-finite value", i, j, t, stage, "finite", c.E);
            }
            if (!(rho > 0.0))
                throw BlowUpError("nonpositive density", i, g.dim == 2 ? j : -1, t, stage,
                                  "rho", rho);
            if (require_positive_pressure) {
                if (!(p > 0.0))
                    throw BlowUpError("nonpositive pressure", i, g.dim == 2 ? j : -1, t, stage,
                                      "pressure", p);
                min_rho = std::fmin(min_rho, rho);
                min_p = std::fmin(min_p, p);
            }
        }
    if (require_positive_pressure) {
        stats.min_rho = min_rho;
        stats.min_pressure = min_p;
    }
}

template <Scheme S>
RunResult run_loop_t(Field u, const StepContext& ctx) {
    using clock = std::chrono::steady_clock;
    const auto wall_start = clock::now();

    RunResult res;
    WeightTables wt(ctx.weights);
    const GridSpec& g = u.grid();
    Field w(g, u.ncomp());
    Field l(g, u.ncomp());
    if (u.has_mask()) {
        // Stage fields share the geometry.
        w = u;
        l = Field(g, u.ncomp());
    }
    SweepScratch scratch;

    const std::size_t ncell = u.raw().size();
    double t = 0.0;

    auto eval_op = [&](Field& stage_field, double alpha_x, double alpha_y) {
        if (g.dim == 1)
            spatial_operator_1d_t<S>(stage_field, wt, ctx.eq, alpha_x, l);
        else
            spatial_operator_2d_t<S>(stage_field, wt, ctx.eq, alpha_x, alpha_y, l,
                                     scratch, ctx.geom);
    };

    try {
        validate_field(u, ctx.eq, t, 0, res.stats, true);
        bool done = (ctx.t_end <= 0.0);
        while (!done) {
            // Global LF wave speed, refreshed once per step from the
            // step-start state; stage values may carry transient pressure
            // undershoots and do not redefine the bound.
            const double ax = max_wave_speed(u, ctx.eq, Axis::X);
            const double ay = g.dim == 2 ? max_wave_speed(u, ctx.eq, Axis::Y) : 0.0;
            double dt = compute_dt(g, ctx.cfl, ax, ay);
            bool last = false;
            if (t + dt >= ctx.t_end) {
                dt = ctx.t_end - t;
                last = true;
            }

            // Stage 1: w = u + dt L(u)
            fill_ghosts(u, ctx.bc, ctx.eq, t);
            auto s0 = clock::now();
            eval_op(u, ax, ay);
            {
                double* wp = w.raw().data();
                const double* up = u.raw().data();
                const double* lp = l.raw().data();
                for (std::size_t n = 0; n < ncell; ++n)
                    wp[n] = up[n] + dt * lp[n];
            }
            res.stats.stage_seconds += std::chrono::duration<double>(clock::now() - s0).count();
            if (ctx.geom.post_stage_fix) ctx.geom.post_stage_fix(w);

            // Stage 2: w = 3/4 u + 1/4 w + 1/4 dt L(w)
            validate_field(w, ctx.eq, t, 1, res.stats, false);
            fill_ghosts(w, ctx.bc, ctx.eq, t + dt);
            s0 = clock::now();
            eval_op(w, ax, ay);
            {
                double* wp = w.raw().data();
                const double* up = u.raw().data();
                const double* lp = l.raw().data();
                for (std::size_t n = 0; n < ncell; ++n)
                    wp[n] = 0.75 * up[n] + 0.25 * wp[n] + 0.25 * dt * lp[n];
            }
            res.stats.stage_seconds += std::chrono::duration<double>(clock::now() - s0).count();
            if (ctx.geom.post_stage_fix) ctx.geom.post_stage_fix(w);

            // Stage 3: u = 1/3 u + 2/3 w + 2/3 dt L(w)
            validate_field(w, ctx.eq, t, 2, res.stats, false);
            fill_ghosts(w, ctx.bc, ctx.eq, t + 0.5 * dt);
            s0 = clock::now();
            eval_op(w, ax, ay);
            {
                double* up = u.raw().data();
                const double* wp = w.raw().data();
                const double* lp = l.raw().data();
                for (std::size_t n = 0; n < ncell; ++n)
                    up[n] = (1.0 / 3.0) * up[n] + (2.0 / 3.0) * wp[n] + (2.0 / 3.0) * dt * lp[n];
            }
            res.stats.stage_seconds += std::chrono::duration<double>(clock::now() - s0).count();
            if (ctx.geom.post_stage_fix) ctx.geom.post_stage_fix(u);

            t = last ? ctx.t_end : t + dt;
            res.stats.steps += 1;
            res.stats.stages += 3;
            validate_field(u, ctx.eq, t, 3, res.stats, false);
            if (ctx.on_step) ctx.on_step(u, t, res.stats.steps);
            if (last) done = true;
            if (ctx.max_steps >= 0 && res.stats.steps >= ctx.max_steps) done = true;
        }
        // The delivered state must be positive everywhere (a transient
        // mid-run undershoot that recovered is not a blow-up; one that
        // persists to the output time is).
        validate_field(u, ctx.eq, t, 3, res.stats, true);
        res.completed = true;
    } catch (const BlowUpError& e) {
        res.completed = false;
        res.failure.blew_up = true;
        res.failure.time = t;
        res.failure.step = res.stats.steps;
        res.failure.rk_stage = e.rk_stage;
        res.failure.cell_i = e.cell_i;
        res.failure.cell_j = e.cell_j;
        res.failure.quantity = e.quantity;
        res.failure.value = e.value;
    } catch (const DecompositionError&) {
        // Degenerate Roe sound speed: a blow-up symptom, reported as one.
        res.completed = false;
        res.failure.blew_up = true;
        res.failure.time = t;
        res.failure.step = res.stats.steps;
        res.failure.quantity = "sound-speed";
    }

    res.field = std::move(u);
    res.t_final = t;
    res.stats.wall_seconds = std::chrono::duration<double>(clock::now() - wall_start).count();
    return res;
}

} // namespace

RunResult run_loop(Field initial, const StepContext& ctx) {
    switch (ctx.weights.scheme) {
        case Scheme::JS:  return run_loop_t<Scheme::JS>(std::move(initial), ctx);
        case Scheme::M:   return run_loop_t<Scheme::M>(std::move(initial), ctx);
        case Scheme::PM6: return run_loop_t<Scheme::PM6>(std::move(initial), ctx);
        case Scheme::ACM: return run_loop_t<Scheme::ACM>(std::move(initial), ctx);
    }
    throw ConfigError("run_loop: unknown scheme");
}

} // namespace fvweno
