#ifndef FVWENO_EULER_HPP_
#define FVWENO_EULER_HPP_

// Compressible Euler physics: state conversions, physical fluxes, Roe
// averages, eigensystems and the global Lax-Friedrichs numerical flux.
// Ideal polytropic gas with gamma = 1.4 throughout.

#include <array>
#include <cmath>
#include <string>

#include "fvweno/errors.hpp"
#include "fvweno/reconstruction.hpp"

namespace fvweno {

inline constexpr double kGamma = 1.4;

enum class Axis { X, Y };

// Conserved state, 1D: (rho, rho u, E); 2D: (rho, rho u, rho v, E).
struct Cons1D {
    double rho, mx, E;
};
struct Cons2D {
    double rho, mx, my, E;
};

struct Prim1D {
    double rho, u, p;
};
struct Prim2D {
    double rho, u, v, p;
};

inline double pressure(const Cons1D& c) {
    return (kGamma - 1.0) * (c.E - 0.5 * c.mx * c.mx / c.rho);
}
inline double pressure(const Cons2D& c) {
    return (kGamma - 1.0) * (c.E - 0.5 * (c.mx * c.mx + c.my * c.my) / c.rho);
}

inline Prim1D cons_to_prim(const Cons1D& c) {
    if (!(c.rho > 0.0))
        throw BlowUpError("cons_to_prim: nonpositive density", -1, -1, 0.0, -1, "rho", c.rho);
    const double p = pressure(c);
    if (!(p > 0.0))
        throw BlowUpError("cons_to_prim: nonpositive pressure", -1, -1, 0.0, -1, "pressure", p);
    return {c.rho, c.mx / c.rho, p};
}

inline Prim2D cons_to_prim(const Cons2D& c) {
    if (!(c.rho > 0.0))
        throw BlowUpError("cons_to_prim: nonpositive density", -1, -1, 0.0, -1, "rho", c.rho);
    const double p = pressure(c);
    if (!(p > 0.0))
        throw BlowUpError("cons_to_prim: nonpositive pressure", -1, -1, 0.0, -1, "pressure", p);
    return {c.rho, c.mx / c.rho, c.my / c.rho, p};
}

inline Cons1D prim_to_cons(const Prim1D& q) {
    if (!(q.rho > 0.0) || !(q.p > 0.0))
        throw InvalidInputError("prim_to_cons: nonpositive density or pressure");
    return {q.rho, q.rho * q.u, q.p / (kGamma - 1.0) + 0.5 * q.rho * q.u * q.u};
}

inline Cons2D prim_to_cons(const Prim2D& q) {
    if (!(q.rho > 0.0) || !(q.p > 0.0))
        throw InvalidInputError("prim_to_cons: nonpositive density or pressure");
    return {q.rho, q.rho * q.u, q.rho * q.v,
            q.p / (kGamma - 1.0) + 0.5 * q.rho * (q.u * q.u + q.v * q.v)};
}

inline double sound_speed(double rho, double p) { return std::sqrt(kGamma * p / rho); }

// Physical flux along the requested axis.
inline std::array<double, 3> physical_flux(const Cons1D& c) {
    const double p = pressure(c);
    const double u = c.mx / c.rho;
    return {c.mx, c.mx * u + p, u * (c.E + p)};
}

inline std::array<double, 4> physical_flux(const Cons2D& c, Axis axis) {
    const double p = pressure(c);
    if (axis == Axis::X) {
        const double u = c.mx / c.rho;
        return {c.mx, c.mx * u + p, c.my * u, u * (c.E + p)};
    }
    const double v = c.my / c.rho;
    return {c.my, c.mx * v, c.my * v + p, v * (c.E + p)};
}

// Global Lax-Friedrichs flux: f_hat(a,b) = (f(a) + f(b) - alpha (b - a)) / 2.
template <int M>
inline void lax_friedrichs_flux(const double fa[M], const double fb[M],
                                const double a[M], const double b[M],
                                double alpha, double out[M]) {
    for (int m = 0; m < M; ++m)
        out[m] = 0.5 * (fa[m] + fb[m] - alpha * (b[m] - a[m]));
}

inline std::array<double, 3> lax_friedrichs_flux(const Cons1D& a, const Cons1D& b,
                                                 double alpha) {
    const auto fa = physical_flux(a);
    const auto fb = physical_flux(b);
    const double av[3] = {a.rho, a.mx, a.E};
    const double bv[3] = {b.rho, b.mx, b.E};
    std::array<double, 3> out;
    lax_friedrichs_flux<3>(fa.data(), fb.data(), av, bv, alpha, out.data());
    return out;
}

// ---------------------------------------------------------------------------
// Roe average and eigensystems
// ---------------------------------------------------------------------------

// sqrt(rho)-weighted average of velocity and specific total enthalpy
// H = (E + p)/rho, with the Roe density sqrt(rho_L rho_R).
struct RoeState {
    double rho, u, v, H, c, p;
    bool degenerate = false; // sound speed floored (transient undershoot)
};

inline RoeState roe_average(const Cons2D& l, const Cons2D& r) {
    // Density must be positive for the sqrt weights; pressure may carry a
    // transient stage-level undershoot (it only enters through H).
    if (!(l.rho > 0.0 && r.rho > 0.0))
        throw BlowUpError("roe_average: nonpositive density", -1, -1, 0.0, -1, "rho",
                          std::fmin(l.rho, r.rho));
    const double pl = pressure(l), pr = pressure(r);
    const double sl = std::sqrt(l.rho), sr = std::sqrt(r.rho);
    const double inv = 1.0 / (sl + sr);
    RoeState s;
    s.rho = sl * sr;
    s.u = (sl * (l.mx / l.rho) + sr * (r.mx / r.rho)) * inv;
    s.v = (sl * (l.my / l.rho) + sr * (r.my / r.rho)) * inv;
    s.H = (sl * ((l.E + pl) / l.rho) + sr * ((r.E + pr) / r.rho)) * inv;
    double c2 = (kGamma - 1.0) * (s.H - 0.5 * (s.u * s.u + s.v * s.v));
    // A transient stage-level undershoot can push the averaged sound speed
    // to zero.  The state is flagged so the reconstruction can drop to the
    // component-wise path (the characteristic basis is meaningless there);
    // the run-loop blow-up conditions decide whether the solution is lost.
    if (!(c2 > 0.0)) {
        s.degenerate = true;
        c2 = 1e-12 * std::fmax(std::fabs(s.H), 1e-12);
    }
    s.c = std::sqrt(c2);
    s.p = s.rho * c2 / kGamma;
    return s;
}

inline RoeState roe_average(const Cons1D& l, const Cons1D& r) {
    return roe_average(Cons2D{l.rho, l.mx, 0.0, l.E}, Cons2D{r.rho, r.mx, 0.0, r.E});
}

// 1D eigensystem at a Roe-averaged state: eigenvalues (u-c, u, u+c).
inline EigenSystem<3> eigensystem(const RoeState& s) {
    EigenSystem<3> e;
    const double u = s.u, c = s.c, H = s.H;
    const double ic = 1.0 / c;
    const double b1 = (kGamma - 1.0) * ic * ic;
    const double b2 = 0.5 * b1 * u * u;

    e.lambda[0] = u - c;
    e.lambda[1] = u;
    e.lambda[2] = u + c;

    e.R[0][0] = 1.0;         e.R[0][1] = 1.0;          e.R[0][2] = 1.0;
    e.R[1][0] = u - c;       e.R[1][1] = u;            e.R[1][2] = u + c;
    e.R[2][0] = H - u * c;   e.R[2][1] = 0.5 * u * u;  e.R[2][2] = H + u * c;

    e.L[0][0] = 0.5 * (b2 + u * ic);
    e.L[0][1] = -0.5 * (b1 * u + ic);
    e.L[0][2] = 0.5 * b1;
    e.L[1][0] = 1.0 - b2;
    e.L[1][1] = b1 * u;
    e.L[1][2] = -b1;
    e.L[2][0] = 0.5 * (b2 - u * ic);
    e.L[2][1] = -0.5 * (b1 * u - ic);
    e.L[2][2] = 0.5 * b1;
    return e;
}

// 2D x-direction eigensystem: eigenvalues (u-c, u, u, u+c); the shear field
// carries the transverse velocity.
inline EigenSystem<4> eigensystem_x(const RoeState& s) {
    EigenSystem<4> e;
    const double u = s.u, v = s.v, c = s.c, H = s.H;
    const double q2 = u * u + v * v;
    const double ic = 1.0 / c;
    const double b1 = (kGamma - 1.0) * ic * ic;
    const double b2 = 0.5 * b1 * q2;

    e.lambda[0] = u - c;
    e.lambda[1] = u;
    e.lambda[2] = u;
    e.lambda[3] = u + c;

    e.R[0][0] = 1.0;       e.R[0][1] = 1.0;      e.R[0][2] = 0.0;  e.R[0][3] = 1.0;
    e.R[1][0] = u - c;     e.R[1][1] = u;        e.R[1][2] = 0.0;  e.R[1][3] = u + c;
    e.R[2][0] = v;         e.R[2][1] = v;        e.R[2][2] = 1.0;  e.R[2][3] = v;
    e.R[3][0] = H - u * c; e.R[3][1] = 0.5 * q2; e.R[3][2] = v;    e.R[3][3] = H + u * c;

    e.L[0][0] = 0.5 * (b2 + u * ic);
    e.L[0][1] = -0.5 * (b1 * u + ic);
    e.L[0][2] = -0.5 * b1 * v;
    e.L[0][3] = 0.5 * b1;
    e.L[1][0] = 1.0 - b2;
    e.L[1][1] = b1 * u;
    e.L[1][2] = b1 * v;
    e.L[1][3] = -b1;
    e.L[2][0] = -v;
    e.L[2][1] = 0.0;
    e.L[2][2] = 1.0;
    e.L[2][3] = 0.0;
    e.L[3][0] = 0.5 * (b2 - u * ic);
    e.L[3][1] = -0.5 * (b1 * u - ic);
    e.L[3][2] = -0.5 * b1 * v;
    e.L[3][3] = 0.5 * b1;
    return e;
}

// y-direction system: the x-direction system of the velocity-swapped state
// with the momentum rows/columns permuted.
inline EigenSystem<4> eigensystem_y(const RoeState& s) {
    RoeState sw = s;
    std::swap(sw.u, sw.v);
    const EigenSystem<4> ex = eigensystem_x(sw);
    EigenSystem<4> e;
    const int perm[4] = {0, 2, 1, 3}; // swap the two momentum slots
    for (int i = 0; i < 4; ++i) {
        e.lambda[i] = ex.lambda[i];
        for (int j = 0; j < 4; ++j) {
            e.L[i][j] = ex.L[i][perm[j]];
            e.R[i][j] = ex.R[perm[i]][j];
        }
    }
    return e;
}

inline EigenSystem<4> eigensystem(const RoeState& s, Axis axis) {
    return axis == Axis::X ? eigensystem_x(s) : eigensystem_y(s);
}

} // namespace fvweno

#endif
