#include "fvweno/problems.hpp"

#include <algorithm>
#include <cmath>

namespace fvweno {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, 4> cons_array(const Prim2D& q) {
    const Cons2D c = prim_to_cons(q);
    return {c.rho, c.mx, c.my, c.E};
}

std::array<double, 4> cons_array(const Prim1D& q) {
    const Cons1D c = prim_to_cons(q);
    return {c.rho, c.mx, c.E, 0.0};
}

// Composite profile: Gaussian, square wave, sharp triangle, semi-ellipse.
double composite_ic(double x) {
    const double z = -0.7, zdelta = 0.005, a = 0.5, alpha = 10.0;
    const double beta = std::log(2.0) / (36.0 * zdelta * zdelta);
    auto G = [&](double xx, double b, double zz) { return std::exp(-b * (xx - zz) * (xx - zz)); };
    auto F = [&](double xx, double al, double aa) {
        const double v = 1.0 - al * al * (xx - aa) * (xx - aa);
        return std::sqrt(std::fmax(v, 0.0));
    };
    if (x >= -0.8 && x <= -0.6)
        return (G(x, beta, z - zdelta) + 4.0 * G(x, beta, z) + G(x, beta, z + zdelta)) / 6.0;
    if (x >= -0.4 && x <= -0.2)
        return 1.0;
    if (x >= 0.0 && x <= 0.2)
        return 1.0 - std::fabs(10.0 * (x - 0.1));
    if (x >= 0.4 && x <= 0.6)
        return (F(x, alpha, a - zdelta) + 4.0 * F(x, alpha, a) + F(x, alpha, a + zdelta)) / 6.0;
    return 0.0;
}

// Post-shock state of the double Mach reflection (Mach 10 on a 30-degree ramp).
Prim2D dmr_post_shock() {
    return {8.0, 8.25 * std::cos(kPi / 6.0), -8.25 * std::sin(kPi / 6.0), 116.5};
}
Prim2D dmr_pre_shock() { return {1.4, 0.0, 0.0, 1.0}; }

constexpr double kDmrX0 = 1.0 / 6.0;

// Forward-facing step geometry: step front at x = 0.6, top at y = 0.2.
struct StepGeometry {
    double face_x = 0.6;
    double top_y = 0.2;

    int face_i(const GridSpec& g) const { return int(std::lround((face_x - g.x0) / g.dx())); }
    int top_j(const GridSpec& g) const { return int(std::lround((top_y - g.y0) / g.dy())); }
};

void ffs_apply_geometry(Field& f) {
    const GridSpec& g = f.grid();
    StepGeometry geo;
    const int is = geo.face_i(g);
    const int js = geo.top_j(g);
    f.allocate_mask();
    for (int j = 0; j < js; ++j)
        for (int i = is; i < g.nx; ++i)
            f.mask_at(i, j) = 1;
}

// Internal wall ghosts for a sweep along `axis`: mirror the three fluid
// cells across the step face / step top with the normal momentum negated.
void ffs_wall_fill(Field& f, Axis axis) {
    const GridSpec& g = f.grid();
    StepGeometry geo;
    const int is = geo.face_i(g);
    const int js = geo.top_j(g);
    if (axis == Axis::X) {
        for (int j = 0; j < js; ++j)
            for (int k = 0; k < GridSpec::ng; ++k) {
                f.at(0, is + k, j) = f.at(0, is - 1 - k, j);
                f.at(1, is + k, j) = -f.at(1, is - 1 - k, j);
                f.at(2, is + k, j) = f.at(2, is - 1 - k, j);
                f.at(3, is + k, j) = f.at(3, is - 1 - k, j);
            }
        return;
    }
    for (int i = is; i < g.nx; ++i)
        for (int k = 0; k < GridSpec::ng; ++k) {
            f.at(0, i, js - 1 - k) = f.at(0, i, js + k);
            f.at(1, i, js - 1 - k) = f.at(1, i, js + k);
            f.at(2, i, js - 1 - k) = -f.at(2, i, js + k);
            f.at(3, i, js - 1 - k) = f.at(3, i, js + k);
        }
}

// Corner treatment: reset the four fluid cells adjacent to the step corner
// so entropy p/rho^gamma and specific total enthalpy match the cell
// diagonally below-left of the corner, keeping pressure and flow direction.
void ffs_corner_fix(Field& f) {
    const GridSpec& g = f.grid();
    StepGeometry geo;
    const int is = geo.face_i(g);
    const int js = geo.top_j(g);

    const Cons2D dc = f.cons2(is - 1, js - 1);
    if (!(dc.rho > 0.0)) return;
    const double pd = pressure(dc);
    if (!(pd > 0.0)) return;
    const double entropy_d = pd / std::pow(dc.rho, kGamma);
    const double qd2 = (dc.mx * dc.mx + dc.my * dc.my) / (dc.rho * dc.rho);
    const double enthalpy_d = kGamma * pd / ((kGamma - 1.0) * dc.rho) + 0.5 * qd2;

    const int cells[4][2] = {{is - 1, js}, {is - 1, js + 1}, {is, js}, {is + 1, js}};
    for (const auto& ij : cells) {
        const int i = ij[0], j = ij[1];
        Cons2D c = f.cons2(i, j);
        if (!(c.rho > 0.0)) continue;
        const double p = pressure(c);
        if (!(p > 0.0)) continue;
        const double rho_new = std::pow(p / entropy_d, 1.0 / kGamma);
        double q2 = 2.0 * (enthalpy_d - kGamma * p / ((kGamma - 1.0) * rho_new));
        q2 = std::fmax(q2, 0.0);
        const double uo = c.mx / c.rho, vo = c.my / c.rho;
        const double qo = std::sqrt(uo * uo + vo * vo);
        double un = 0.0, vn = 0.0;
        if (qo > 0.0) {
            const double scale = std::sqrt(q2) / qo;
            un = uo * scale;
            vn = vo * scale;
        }
        f.set(i, j, prim_to_cons(Prim2D{rho_new, un, vn, p}));
    }
}

BcSet all_sides(BcKind kind) {
    BcSet bc;
    bc.left.kind = bc.right.kind = bc.bottom.kind = bc.top.kind = kind;
    return bc;
}

} // namespace

Prim2D shock_vortex_ic(double x, double y) {
    const double g = kGamma;
    const Prim2D left{1.0, std::sqrt(g), 0.0, 1.0};
    // Right state from the printed shock relations with p_R = 1.3.
    const double pr = 1.3;
    const double rho_r = left.rho * ((g - 1.0 + (g + 1.0) * pr) / (g + 1.0 + (g - 1.0) * pr));
    const double u_r = left.u * ((1.0 - pr) / std::sqrt(g - 1.0 + pr * (g + 1.0)));
    if (x >= 0.5)
        return {rho_r, u_r, 0.0, pr};

    // Vortex perturbation superimposed on the left state.
    const double eps = 0.3, rc = 0.05, alpha = 0.204, xc = 0.25, yc = 0.5;
    const double r2 = ((x - xc) * (x - xc) + (y - yc) * (y - yc)) / (rc * rc);
    const double expf = std::exp(alpha * (1.0 - r2));
    const double dT = -(g - 1.0) / (4.0 * alpha * g) * eps * eps * std::exp(2.0 * alpha * (1.0 - r2));
    const double du = eps * ((y - yc) / rc) * expf;
    const double dv = -eps * ((x - xc) / rc) * expf;
    const double drho = left.rho * left.rho / ((g - 1.0) * left.p) * dT;
    // As printed: gamma rho_L^2 / ((gamma - 1) rho_L) * dT (the rho_L in the
    // denominator is suspected to be a typo for p_L; kept as printed).
    const double dp = g * left.rho * left.rho / ((g - 1.0) * left.rho) * dT;
    return {left.rho + drho, left.u + du, left.v + dv, left.p + dp};
}

const std::vector<ProblemSpec>& catalog() {
    static const std::vector<ProblemSpec> problems = [] {
        std::vector<ProblemSpec> v;

        // --- Linear advection accuracy tests -------------------------------
        {
            ProblemSpec p;
            p.name = "lae-sine";
            p.description = "linear advection, u0 = sin(pi x)";
            p.equation = Equation::Advection;
            p.domain = {1, -1.0, 1.0, 0.0, 1.0, 80, 1};
            p.mesh_levels = {10, 20, 40, 80, 160, 320};
            p.bc = all_sides(BcKind::Periodic);
            p.ic_scalar = [](double x) { return std::sin(kPi * x); };
            p.has_exact = true;
            p.cfl_rule_accuracy = true;
            p.t_end = 2.0;
            p.critical_point_order = 1; // first and third derivatives vanish together
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "lae-critical";
            p.description = "linear advection, u0 = sin(pi x - sin(pi x)/pi)";
            p.equation = Equation::Advection;
            p.domain = {1, -1.0, 1.0, 0.0, 1.0, 80, 1};
            p.mesh_levels = {10, 20, 40, 80, 160, 320};
            p.bc = all_sides(BcKind::Periodic);
            p.ic_scalar = [](double x) { return std::sin(kPi * x - std::sin(kPi * x) / kPi); };
            p.has_exact = true;
            p.cfl_rule_accuracy = true;
            p.t_end = 2.0;
            p.critical_point_order = 1; // non-vanishing third derivative
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "lae-composite";
            p.description = "linear advection, Gaussian/square/triangle/ellipse profile";
            p.equation = Equation::Advection;
            p.domain = {1, -1.0, 1.0, 0.0, 1.0, 200, 1};
            p.mesh_levels = {200, 400, 800};
            p.bc = all_sides(BcKind::Periodic);
            p.ic_scalar = composite_ic;
            p.has_exact = true;
            p.default_cfl = 0.1;
            p.t_end = 2.0;
            p.output_times = {2.0, 2000.0};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "lae-sine9";
            p.description = "linear advection, u0 = sin^9(pi x)";
            p.equation = Equation::Advection;
            p.domain = {1, -1.0, 1.0, 0.0, 1.0, 200, 1};
            p.mesh_levels = {200};
            p.bc = all_sides(BcKind::Periodic);
            p.ic_scalar = [](double x) { return std::pow(std::sin(kPi * x), 9.0); };
            p.has_exact = true;
            p.cfl_rule_accuracy = true;
            p.t_end = 1000.0;
            p.output_times = {1, 10, 30, 50, 100, 200, 500, 1000};
            p.critical_point_order = 8;
            v.push_back(std::move(p));
        }

        // --- 1D Euler -------------------------------------------------------
        {
            ProblemSpec p;
            p.name = "sod";
            p.description = "Sod shock tube";
            p.equation = Equation::Euler1D;
            p.domain = {1, 0.0, 1.0, 0.0, 1.0, 200, 1};
            p.bc = all_sides(BcKind::Transmissive);
            p.ic_euler1d = [](double x) {
                return x < 0.5 ? Prim1D{1.0, 0.0, 1.0} : Prim1D{0.125, 0.0, 0.1};
            };
            p.t_end = 0.25;
            p.reference = {Scheme::JS, 10000, 0.25};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "lax";
            p.description = "Lax Riemann problem";
            p.equation = Equation::Euler1D;
            p.domain = {1, -5.0, 5.0, 0.0, 1.0, 200, 1};
            p.bc = all_sides(BcKind::Transmissive);
            p.ic_euler1d = [](double x) {
                return x < 0.0 ? Prim1D{0.445, 0.698, 3.528} : Prim1D{0.5, 0.0, 0.571};
            };
            p.t_end = 1.3;
            p.reference = {Scheme::JS, 10000, 1.3};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "shu-osher";
            p.description = "Mach 3 shock-density wave interaction";
            p.equation = Equation::Euler1D;
            p.domain = {1, -5.0, 5.0, 0.0, 1.0, 300, 1};
            p.bc = all_sides(BcKind::Transmissive); // zero-gradient
            p.ic_euler1d = [](double x) {
                return x < -4.0 ? Prim1D{3.857143, 2.629369, 10.333333}
                                : Prim1D{1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
            };
            p.t_end = 1.8;
            p.reference = {Scheme::JS, 10000, 1.8};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "blastwave";
            p.description = "Woodward-Colella interacting blastwaves";
            p.equation = Equation::Euler1D;
            p.domain = {1, 0.0, 1.0, 0.0, 1.0, 400, 1};
            p.bc = all_sides(BcKind::Reflective);
            p.ic_euler1d = [](double x) {
                if (x < 0.1) return Prim1D{1.0, 0.0, 1000.0};
                if (x < 0.9) return Prim1D{1.0, 0.0, 0.01};
                return Prim1D{1.0, 0.0, 100.0};
            };
            p.t_end = 0.038;
            p.reference = {Scheme::JS, 10000, 0.038};
            v.push_back(std::move(p));
        }

        // --- 2D Euler -------------------------------------------------------
        {
            ProblemSpec p;
            p.name = "shock-vortex";
            p.description = "shock-vortex interaction";
            p.equation = Equation::Euler2D;
            p.domain = {2, 0.0, 1.0, 0.0, 1.0, 400, 400};
            p.bc = all_sides(BcKind::Transmissive);
            p.ic_euler2d = shock_vortex_ic;
            p.t_end = 0.35;
            p.reference = {Scheme::JS, 1000, 0.35};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "explosion";
            p.description = "circular explosion";
            p.equation = Equation::Euler2D;
            p.domain = {2, -1.0, 1.0, -1.0, 1.0, 400, 400};
            p.bc = all_sides(BcKind::Transmissive);
            p.ic_euler2d = [](double x, double y) {
                return std::sqrt(x * x + y * y) < 0.4 ? Prim2D{1.0, 0.0, 0.0, 1.0}
                                                      : Prim2D{0.125, 0.0, 0.0, 0.1};
            };
            p.t_end = 0.25;
            p.reference = {Scheme::JS, 1000, 0.25};
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "riemann2d";
            p.description = "four-quadrant 2D Riemann problem";
            p.equation = Equation::Euler2D;
            p.domain = {2, 0.0, 1.0, 0.0, 1.0, 1200, 1200};
            p.bc = all_sides(BcKind::Transmissive);
            p.ic_euler2d = [](double x, double y) {
                if (x >= 0.5 && y >= 0.5) return Prim2D{1.0, 0.0, -0.3, 1.0};
                if (x < 0.5 && y >= 0.5) return Prim2D{2.0, 0.0, 0.3, 1.0};
                if (x < 0.5 && y < 0.5) return Prim2D{1.0625, 0.0, 0.8145, 0.4};
                return Prim2D{0.5313, 0.0, 0.4276, 0.4};
            };
            p.t_end = 0.3;
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "dmr";
            p.description = "double Mach reflection";
            p.equation = Equation::Euler2D;
            p.domain = {2, 0.0, 3.0, 0.0, 1.0, 2000, 500};
            p.ic_euler2d = [](double x, double y) {
                return x < kDmrX0 + y / std::sqrt(3.0) ? dmr_post_shock() : dmr_pre_shock();
            };
            p.bc.left.kind = BcKind::Inflow;
            p.bc.left.state = cons_array(dmr_post_shock());
            p.bc.right.kind = BcKind::Outflow;
            p.bc.bottom.kind = BcKind::TimeDependent;
            p.bc.bottom.imposed = [](double x, double) -> std::optional<std::array<double, 4>> {
                if (x < kDmrX0) return cons_array(dmr_post_shock());
                return std::nullopt; // reflective wall
            };
            p.bc.top.kind = BcKind::TimeDependent;
            p.bc.top.imposed = [](double x, double t) -> std::optional<std::array<double, 4>> {
                const double s = kDmrX0 + (1.0 + 20.0 * t) / std::sqrt(3.0);
                return x < s ? cons_array(dmr_post_shock()) : cons_array(dmr_pre_shock());
            };
            p.t_end = 0.2;
            v.push_back(std::move(p));
        }
        {
            ProblemSpec p;
            p.name = "ffs";
            p.description = "Mach 3 forward-facing step";
            p.equation = Equation::Euler2D;
            p.domain = {2, 0.0, 3.0, 0.0, 1.0, 900, 300};
            p.ic_euler2d = [](double, double) { return Prim2D{1.4, 3.0, 0.0, 1.0}; };
            p.bc.left.kind = BcKind::Inflow;
            p.bc.left.state = cons_array(Prim2D{1.4, 3.0, 0.0, 1.0});
            p.bc.right.kind = BcKind::Outflow;
            p.bc.bottom.kind = BcKind::Reflective;
            p.bc.top.kind = BcKind::Reflective;
            p.t_end = 4.0;
            p.apply_geometry = ffs_apply_geometry;
            p.geometry_hooks.wall_fill = ffs_wall_fill;
            p.geometry_hooks.post_stage_fix = ffs_corner_fix;
            v.push_back(std::move(p));
        }
        return v;
    }();
    return problems;
}

const ProblemSpec& lookup(const std::string& name) {
    for (const auto& p : catalog())
        if (p.name == name) return p;
    throw NotFoundError("unknown problem: " + name);
}

double advection_exact(const ProblemSpec& spec, double x, double t) {
    if (spec.equation != Equation::Advection || !spec.has_exact)
        throw InvalidInputError("advection_exact: not an advection problem");
    const double len = spec.domain.x1 - spec.domain.x0;
    double xi = x - t;
    xi -= len * std::floor((xi - spec.domain.x0) / len);
    return spec.ic_scalar(xi);
}

Field init_field(const ProblemSpec& spec, int nx, int ny) {
    GridSpec g = spec.domain;
    g.nx = nx;
    if (g.dim == 2) g.ny = ny > 0 ? ny : nx;
    g.validate();
    Field f(g, spec.ncomp());
    if (spec.apply_geometry) spec.apply_geometry(f);
    switch (spec.equation) {
        case Equation::Advection:
            for (int i = 0; i < g.nx; ++i)
                f.at(0, i) = spec.ic_scalar(g.xc(i));
            break;
        case Equation::Euler1D:
            for (int i = 0; i < g.nx; ++i)
                f.set(i, prim_to_cons(spec.ic_euler1d(g.xc(i))));
            break;
        case Equation::Euler2D:
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    f.set(i, j, prim_to_cons(spec.ic_euler2d(g.xc(i), g.yc(j))));
            break;
    }
    return f;
}

double effective_cfl(const ProblemSpec& spec, double dx, double cfl_override) {
    if (cfl_override > 0.0) return cfl_override;
    if (spec.cfl_rule_accuracy) return std::pow(dx, 2.0 / 3.0);
    return spec.default_cfl;
}

RunResult run_problem(const ProblemSpec& spec, const WeightConfig& weights, int nx, int ny,
                      double cfl_override, double t_end_override, long max_steps,
                      const std::function<void(const Field&, double, long)>& on_step) {
    Field f = init_field(spec, nx, ny);
    StepContext ctx;
    ctx.eq = spec.equation;
    ctx.bc = spec.bc;
    ctx.geom = spec.geometry_hooks;
    ctx.weights = weights;
    ctx.cfl = effective_cfl(spec, f.grid().dx(), cfl_override);
    ctx.t_end = t_end_override > 0.0 ? t_end_override : spec.t_end;
    ctx.max_steps = max_steps;
    ctx.on_step = on_step;
    return run_loop(std::move(f), ctx);
}

Field restrict_field(const Field& fine, int coarse_nx, int coarse_ny) {
    const GridSpec& fg = fine.grid();
    if (coarse_nx <= 0 || fg.nx % coarse_nx != 0)
        throw InvalidInputError("restrict_field: fine nx must be an integer multiple of coarse nx");
    const int rx = fg.nx / coarse_nx;
    GridSpec cg = fg;
    cg.nx = coarse_nx;
    int ry = 1;
    if (fg.dim == 2) {
        if (coarse_ny <= 0) coarse_ny = coarse_nx;
        if (fg.ny % coarse_ny != 0)
            throw InvalidInputError("restrict_field: fine ny must be an integer multiple of coarse ny");
        ry = fg.ny / coarse_ny;
        cg.ny = coarse_ny;
    }
    Field out(cg, fine.ncomp());
    const double inv = 1.0 / (double(rx) * double(ry));
    for (int c = 0; c < fine.ncomp(); ++c)
        for (int j = 0; j < (cg.dim == 2 ? cg.ny : 1); ++j)
            for (int i = 0; i < cg.nx; ++i) {
                double acc = 0.0;
                for (int jj = 0; jj < ry; ++jj)
                    for (int ii = 0; ii < rx; ++ii)
                        acc += (cg.dim == 2) ? fine.at(c, i * rx + ii, j * ry + jj)
                                             : fine.at(c, i * rx + ii);
                if (cg.dim == 2)
                    out.at(c, i, j) = acc * inv;
                else
                    out.at(c, i) = acc * inv;
            }
    return out;
}

Field generate_reference(const ProblemSpec& spec, const ReferenceRecipe& recipe,
                         int coarse_nx, int coarse_ny) {
    if (spec.equation == Equation::Advection)
        throw InvalidInputError("generate_reference: advection has an exact solution");
    if (recipe.resolution <= coarse_nx)
        throw InvalidInputError("generate_reference: reference must be finer than the test mesh");
    WeightConfig cfg;
    cfg.scheme = recipe.scheme;
    int fine_ny = 0;
    if (spec.dim() == 2) {
        const int cy = coarse_ny > 0 ? coarse_ny : coarse_nx;
        fine_ny = recipe.resolution * cy / coarse_nx;
    }
    RunResult r = run_problem(spec, cfg, recipe.resolution, fine_ny, -1.0,
                              recipe.output_time > 0 ? recipe.output_time : spec.t_end);
    if (!r.completed)
        throw BlowUpError("generate_reference: reference run blew up", r.failure.cell_i,
                          r.failure.cell_j, r.failure.time, r.failure.rk_stage,
                          r.failure.quantity, r.failure.value);
    return restrict_field(r.field, coarse_nx, coarse_ny);
}

} // namespace fvweno
