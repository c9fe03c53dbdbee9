#ifndef FVWENO_RECONSTRUCTION_HPP_
#define FVWENO_RECONSTRUCTION_HPP_

// Fifth-order WENO interface values from cell averages: component-wise for
// scalars, characteristic-wise for systems.

#include <array>
#include <cmath>
#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include "fvweno/weights.hpp"

namespace fvweno {

namespace detail {
// Branch-free clamp that lowers to vmaxsd/vminsd (std::fmin/fmax keep libm
// NaN semantics and stay as calls).
inline double clamp01(double w) {
    const double lo = (w > 0.0) ? w : 0.0;
    return (lo < 1.0) ? lo : 1.0;
}

[[gnu::noinline, noreturn]] inline void throw_degenerate_weights() {
    throw DegenerateWeightsError("weno_face: all mapped weights are zero");
}

// Literal ACM route (transition bands); out of line, rarely taken.
[[gnu::noinline]] inline void acm_weights_slow(const WeightTables& wt, double w[3]);

#if defined(__AVX2__)
// Saturated-branch ACM mapping of four lanes: blend/copysign arithmetic is
// bit-identical to the affine reference expressions on the plateaus, and
// transition-band lanes divert to the literal route.
inline void acm_map_four_lanes(const WeightTables& wt, const AcmStencilConsts ac[3],
                               double delta, double* w0, double* w1, double* w2) {
    // Weights a few ulps outside [0,1] classify identically to their clamped
    // values (the transition test fires only within delta of CFS), so the
    // fast path skips clamping; the literal route clamps.  The plateau sum
    // cannot vanish: sum(omega) = 1 while sum(CFS_s) = cfs_fraction < 1, so
    // at least one weight sits at or above its CFS and maps to d_s or 1.
    double* warr[3] = {w0, w1, w2};
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d vdelta = _mm256_set1_pd(delta);
    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d slowacc = _mm256_setzero_pd();
    __m256d vin[3], g[3];
    for (int s = 0; s < 3; ++s) {
        const __m256d v = _mm256_loadu_pd(warr[s]);
        vin[s] = v;
        const __m256d d = _mm256_set1_pd(ac[s].d);
        const __m256d mlow = _mm256_cmp_pd(v, d, _CMP_LE_OQ);
        const __m256d cfs = _mm256_blendv_pd(_mm256_set1_pd(ac[s].cfs_bar),
                                             _mm256_set1_pd(ac[s].cfs), mlow);
        const __m256d x = _mm256_sub_pd(v, cfs);
        const __m256d ax = _mm256_andnot_pd(signbit, x);
        slowacc = _mm256_or_pd(slowacc, _mm256_cmp_pd(ax, vdelta, _CMP_LT_OQ));
        const __m256d sg = _mm256_or_pd(_mm256_and_pd(signbit, x), one);
        const __m256d hd = _mm256_set1_pd(ac[s].half_d);
        const __m256d glo = _mm256_add_pd(_mm256_mul_pd(hd, sg), hd);
        const __m256d gup = _mm256_add_pd(
            d, _mm256_mul_pd(_mm256_set1_pd(ac[s].one_minus_d),
                             _mm256_add_pd(_mm256_mul_pd(half, sg), half)));
        g[s] = _mm256_blendv_pd(gup, glo, mlow);
    }
    const __m256d gsum = _mm256_add_pd(_mm256_add_pd(g[0], g[1]), g[2]);
    const __m256d ginv = _mm256_div_pd(one, gsum);
    const int slowbits = _mm256_movemask_pd(slowacc);
    _mm256_storeu_pd(w0, _mm256_mul_pd(g[0], ginv));
    _mm256_storeu_pd(w1, _mm256_mul_pd(g[1], ginv));
    _mm256_storeu_pd(w2, _mm256_mul_pd(g[2], ginv));
    if (__builtin_expect(slowbits != 0, 0)) {
        double cv[3][4];
        for (int s = 0; s < 3; ++s) _mm256_storeu_pd(cv[s], vin[s]);
        for (int m = 0; m < 4; ++m) {
            if (!((slowbits >> m) & 1)) continue;
            double w[3] = {clamp01(cv[0][m]), clamp01(cv[1][m]), clamp01(cv[2][m])};
            acm_weights_slow(wt, w);
            w0[m] = w[0];
            w1[m] = w[1];
            w2[m] = w[2];
        }
    }
}
#endif

[[gnu::noinline]] inline void acm_weights_slow(const WeightTables& wt, double w[3]) {
    double g[3];
    mapped_alphas<Scheme::ACM>(wt, w, g);
    const double gsum = g[0] + g[1] + g[2];
    if (gsum == 0.0)
        throw_degenerate_weights();
    const double ginv = 1.0 / gsum;
    w[0] = g[0] * ginv;
    w[1] = g[1] * ginv;
    w[2] = g[2] * ginv;
}
} // namespace detail

struct InterfacePair {
    double left;  // u^-_{j+1/2}
    double right; // u^+_{j+1/2}
};

// Third-order substencil approximations of u(x_{j+1/2}) from the five cell
// averages u_{j-2..j+2}.  Dividing by 6.0 keeps constants exact.
inline void substencil_values_unchecked(const double s[5], double q[3]) {
    q[0] = (2.0 * s[0] - 7.0 * s[1] + 11.0 * s[2]) / 6.0;
    q[1] = (-s[1] + 5.0 * s[2] + 2.0 * s[3]) / 6.0;
    q[2] = (2.0 * s[2] + 5.0 * s[3] - s[4]) / 6.0;
}

inline std::array<double, 3> substencil_values(const std::array<double, 5>& s) {
    std::array<double, 3> q;
    substencil_values_unchecked(s.data(), q.data());
    return q;
}

// Left-biased face value under scheme S.  One smoothness/weights/mapping
// evaluation followed by the convex combination.
template <Scheme S>
inline double weno_face(const double s[5], const WeightTables& wt) {
    double q[3];
    substencil_values_unchecked(s, q);
    if (wt.force_ideal())
        return kIdealWeight[0] * q[0] + kIdealWeight[1] * q[1] + kIdealWeight[2] * q[2];

    const SmoothnessTriple b = smoothness_indicators_unchecked(s);
    const double eps = wt.epsilon();
    const double a0 = kIdealWeight[0] / ((eps + b.beta0) * (eps + b.beta0));
    const double a1 = kIdealWeight[1] / ((eps + b.beta1) * (eps + b.beta1));
    const double a2 = kIdealWeight[2] / ((eps + b.beta2) * (eps + b.beta2));
    const double ainv = 1.0 / (a0 + a1 + a2);
    double w[3] = {a0 * ainv, a1 * ainv, a2 * ainv};

    if constexpr (S == Scheme::ACM) {
        // Saturated-branch evaluation (plateaus are exact); transition bands
        // divert to the literal route.
        const double delta = wt.acm_delta();
        double g[3];
        bool slow = false;
        for (int s = 0; s < 3; ++s) {
            const AcmStencilConsts& c = wt.acm(s);
            w[s] = detail::clamp01(w[s]);
            const double mlow = (w[s] <= c.d) ? 1.0 : 0.0;
            const double x = w[s] - (mlow * c.cfs + (1.0 - mlow) * c.cfs_bar);
            slow = slow | (std::fabs(x) < delta);
            const double sg = std::copysign(1.0, x);
            const double glo = c.half_d * sg + c.half_d;
            const double gup = c.d + c.one_minus_d * (0.5 * sg + 0.5);
            g[s] = mlow * glo + (1.0 - mlow) * gup;
        }
        const double gsum = g[0] + g[1] + g[2];
        if (__builtin_expect(slow || gsum == 0.0, 0)) {
            detail::acm_weights_slow(wt, w);
        } else {
            const double ginv = 1.0 / gsum;
            w[0] = g[0] * ginv;
            w[1] = g[1] * ginv;
            w[2] = g[2] * ginv;
        }
    } else if constexpr (S != Scheme::JS) {
        w[0] = detail::clamp01(w[0]);
        w[1] = detail::clamp01(w[1]);
        w[2] = detail::clamp01(w[2]);
        double g[3];
        detail::mapped_alphas<S>(wt, w, g);
        const double gsum = g[0] + g[1] + g[2];
        if (__builtin_expect(gsum == 0.0, 0))
            detail::throw_degenerate_weights();
        const double ginv = 1.0 / gsum;
        w[0] = g[0] * ginv;
        w[1] = g[1] * ginv;
        w[2] = g[2] * ginv;
    }
    return w[0] * q[0] + w[1] * q[1] + w[2] * q[2];
}

inline double weno_face_dispatch(const double s[5], const WeightTables& wt) {
    switch (wt.scheme()) {
        case Scheme::JS:  return weno_face<Scheme::JS>(s, wt);
        case Scheme::M:   return weno_face<Scheme::M>(s, wt);
        case Scheme::PM6: return weno_face<Scheme::PM6>(s, wt);
        case Scheme::ACM: return weno_face<Scheme::ACM>(s, wt);
    }
    return 0.0;
}

// u^-_{j+1/2} from the averages u_{j-2..j+2}.
inline double reconstruct_left(const std::array<double, 5>& s, const WeightConfig& cfg) {
    WeightTables wt(cfg);
    return weno_face_dispatch(s.data(), wt);
}

// u^+_{j+1/2} from the averages u_{j-1..j+3} (the five cells centered one
// cell to the right of the interface).  By mirror symmetry about x_{j+1/2}
// this is the left-biased reconstruction of the reversed stencil.
inline double reconstruct_right(const std::array<double, 5>& s, const WeightConfig& cfg) {
    const std::array<double, 5> rev = {s[4], s[3], s[2], s[1], s[0]};
    return reconstruct_left(rev, cfg);
}

// ---------------------------------------------------------------------------
// Characteristic-wise reconstruction for systems
// ---------------------------------------------------------------------------

// Left/right eigenvector matrices of the flux Jacobian at one interface.
template <int M>
struct EigenSystem {
    double L[M][M];
    double R[M][M];
    double lambda[M];
};

// Lane-parallel WENO face value: all M characteristic fields advance through
// the same per-lane operation chain (the loops vectorize across fields; each
// lane performs exactly the scalar weno_face arithmetic).
template <int M, Scheme S>
[[gnu::always_inline]] inline void weno_face_lanes(const double win[5][M],
                                                   const WeightTables& wt, double out[M]) {
    double q0[M], q1[M], q2[M];
    for (int m = 0; m < M; ++m) {
        q0[m] = (2.0 * win[0][m] - 7.0 * win[1][m] + 11.0 * win[2][m]) / 6.0;
        q1[m] = (-win[1][m] + 5.0 * win[2][m] + 2.0 * win[3][m]) / 6.0;
        q2[m] = (2.0 * win[2][m] + 5.0 * win[3][m] - win[4][m]) / 6.0;
    }
    double w0[M], w1[M], w2[M];
    if (wt.force_ideal()) {
        for (int m = 0; m < M; ++m) {
            w0[m] = kIdealWeight[0];
            w1[m] = kIdealWeight[1];
            w2[m] = kIdealWeight[2];
        }
    } else {
        const double eps = wt.epsilon();
        for (int m = 0; m < M; ++m) {
            const double b0 = (13.0 / 12.0) * detail::sq(win[0][m] - 2.0 * win[1][m] + win[2][m]) +
                              0.25 * detail::sq(win[0][m] - 4.0 * win[1][m] + 3.0 * win[2][m]);
            const double b1 = (13.0 / 12.0) * detail::sq(win[1][m] - 2.0 * win[2][m] + win[3][m]) +
                              0.25 * detail::sq(win[1][m] - win[3][m]);
            const double b2 = (13.0 / 12.0) * detail::sq(win[2][m] - 2.0 * win[3][m] + win[4][m]) +
                              0.25 * detail::sq(3.0 * win[2][m] - 4.0 * win[3][m] + win[4][m]);
            const double a0 = kIdealWeight[0] / ((eps + b0) * (eps + b0));
            const double a1 = kIdealWeight[1] / ((eps + b1) * (eps + b1));
            const double a2 = kIdealWeight[2] / ((eps + b2) * (eps + b2));
            const double ainv = 1.0 / (a0 + a1 + a2);
            w0[m] = a0 * ainv;
            w1[m] = a1 * ainv;
            w2[m] = a2 * ainv;
        }
        if constexpr (S == Scheme::ACM) {
            // Saturated-branch evaluation in pure blend/copysign arithmetic:
            // on the plateaus every product is by exactly +-1 or 0, so this
            // path is bit-identical to the affine reference expressions.
            // Transition-band lanes (and a degenerate sum) divert to the
            // literal route.
            const double delta = wt.acm_delta();
            const AcmStencilConsts ac[3] = {wt.acm(0), wt.acm(1), wt.acm(2)};
            double* warr[3] = {w0, w1, w2};
#if defined(__AVX2__)
            if constexpr (M % 4 == 0) {
                for (int base = 0; base < M; base += 4)
                    detail::acm_map_four_lanes(wt, ac, delta, w0 + base, w1 + base,
                                               w2 + base);
            } else
#endif
            {
                for (int m = 0; m < M; ++m) {
                    double v[3], g[3];
                    bool slow = false;
                    for (int s = 0; s < 3; ++s) {
                        v[s] = detail::clamp01(warr[s][m]);
                        const double mlow = (v[s] <= ac[s].d) ? 1.0 : 0.0;
                        const double x = v[s] - (mlow * ac[s].cfs +
                                                 (1.0 - mlow) * ac[s].cfs_bar);
                        slow = slow | (std::fabs(x) < delta);
                        const double sg = std::copysign(1.0, x);
                        const double glo = ac[s].half_d * sg + ac[s].half_d;
                        const double gup =
                            ac[s].d + ac[s].one_minus_d * (0.5 * sg + 0.5);
                        g[s] = mlow * glo + (1.0 - mlow) * gup;
                    }
                    const double gsum = g[0] + g[1] + g[2];
                    if (__builtin_expect(slow || gsum == 0.0, 0)) {
                        double w[3] = {v[0], v[1], v[2]};
                        detail::acm_weights_slow(wt, w);
                        w0[m] = w[0];
                        w1[m] = w[1];
                        w2[m] = w[2];
                    } else {
                        const double ginv = 1.0 / gsum;
                        w0[m] = g[0] * ginv;
                        w1[m] = g[1] * ginv;
                        w2[m] = g[2] * ginv;
                    }
                }
            }
        } else if constexpr (S == Scheme::M) {
            double gmin = 1.0;
            for (int m = 0; m < M; ++m) {
                const double v0 = detail::clamp01(w0[m]);
                const double v1 = detail::clamp01(w1[m]);
                const double v2 = detail::clamp01(w2[m]);
                const double g0 = map_m_unchecked(v0, kIdealWeight[0]);
                const double g1 = map_m_unchecked(v1, kIdealWeight[1]);
                const double g2 = map_m_unchecked(v2, kIdealWeight[2]);
                const double gsum = g0 + g1 + g2;
                gmin = (gsum < gmin) ? gsum : gmin; // mapped alphas are nonnegative
                const double ginv = 1.0 / gsum;
                w0[m] = g0 * ginv;
                w1[m] = g1 * ginv;
                w2[m] = g2 * ginv;
            }
            if (__builtin_expect(gmin == 0.0, 0))
                detail::throw_degenerate_weights();
        } else if constexpr (S == Scheme::PM6) {
            double gmin = 1.0;
            for (int m = 0; m < M; ++m) {
                const double v0 = detail::clamp01(w0[m]);
                const double v1 = detail::clamp01(w1[m]);
                const double v2 = detail::clamp01(w2[m]);
                const double g0 = map_pm_with(wt.pm(0), v0, kIdealWeight[0]);
                const double g1 = map_pm_with(wt.pm(1), v1, kIdealWeight[1]);
                const double g2 = map_pm_with(wt.pm(2), v2, kIdealWeight[2]);
                const double gsum = g0 + g1 + g2;
                gmin = (gsum < gmin) ? gsum : gmin;
                const double ginv = 1.0 / gsum;
                w0[m] = g0 * ginv;
                w1[m] = g1 * ginv;
                w2[m] = g2 * ginv;
            }
            if (__builtin_expect(gmin == 0.0, 0))
                detail::throw_degenerate_weights();
        }
    }
    for (int m = 0; m < M; ++m)
        out[m] = w0[m] * q0[m] + w1[m] * q1[m] + w2[m] * q2[m];
}

// Both interface states from the six cell averages u_{j-2..j+3}, projected
// onto the characteristic fields of the given interface eigensystem.
// u^- uses cells j-2..j+2, u^+ uses j-1..j+3; the smoothness indicators are
// evaluated on the projected variables.
template <int M, Scheme S>
inline void reconstruct_characteristic_with(const double cells[6][M],
                                            const EigenSystem<M>& eig,
                                            const WeightTables& wt,
                                            double out_left[M], double out_right[M]) {
    // proj[c][m]: characteristic value of field m in cell c.  Accumulating
    // over n in fixed order keeps each lane's chain identical to the scalar
    // dot product.
    double proj[6][M];
    for (int c = 0; c < 6; ++c) {
        double acc[M];
        for (int m = 0; m < M; ++m) acc[m] = eig.L[m][0] * cells[c][0];
        for (int n = 1; n < M; ++n)
            for (int m = 0; m < M; ++m) acc[m] += eig.L[m][n] * cells[c][n];
        for (int m = 0; m < M; ++m) proj[c][m] = acc[m];
    }

    // Both faces in one pass: lanes 0..M-1 carry the left-biased windows,
    // lanes M..2M-1 the mirrored right-biased ones.
    double win[5][2 * M];
    for (int i = 0; i < 5; ++i)
        for (int m = 0; m < M; ++m) {
            win[i][m] = proj[i][m];
            win[i][M + m] = proj[5 - i][m];
        }
    double faces[2 * M];
    weno_face_lanes<2 * M, S>(win, wt, faces);
    const double* wl = faces;
    const double* wr = faces + M;

    for (int n = 0; n < M; ++n) {
        double al = wl[0] * eig.R[n][0];
        double ar = wr[0] * eig.R[n][0];
        for (int m = 1; m < M; ++m) {
            al += wl[m] * eig.R[n][m];
            ar += wr[m] * eig.R[n][m];
        }
        out_left[n] = al;
        out_right[n] = ar;
    }
}

// Validating entry point (checks L*R = I to 1e-12).
template <int M>
inline void reconstruct_characteristic(const double cells[6][M],
                                       const EigenSystem<M>& eig,
                                       const WeightConfig& cfg,
                                       double out_left[M], double out_right[M]) {
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            double acc = 0.0;
            for (int n = 0; n < M; ++n)
                acc += eig.L[i][n] * eig.R[n][j];
            const double expect = (i == j) ? 1.0 : 0.0;
            if (std::fabs(acc - expect) > 1e-12)
                throw DecompositionError("reconstruct_characteristic: L*R != I");
        }
    WeightTables wt(cfg);
    switch (cfg.scheme) {
        case Scheme::JS:
            reconstruct_characteristic_with<M, Scheme::JS>(cells, eig, wt, out_left, out_right);
            break;
        case Scheme::M:
            reconstruct_characteristic_with<M, Scheme::M>(cells, eig, wt, out_left, out_right);
            break;
        case Scheme::PM6:
            reconstruct_characteristic_with<M, Scheme::PM6>(cells, eig, wt, out_left, out_right);
            break;
        case Scheme::ACM:
            reconstruct_characteristic_with<M, Scheme::ACM>(cells, eig, wt, out_left, out_right);
            break;
    }
}

} // namespace fvweno

#endif
