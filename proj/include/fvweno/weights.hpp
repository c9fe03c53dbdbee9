#ifndef FVWENO_WEIGHTS_HPP_
#define FVWENO_WEIGHTS_HPP_

// Nonlinear WENO weights: smoothness indicators, the classic JS weights, and
// the three weight mappings (WENO-M, WENO-PM6, WENO-ACM) with their
// renormalization.  Everything here is a pure function of its arguments.

#include <array>
#include <cmath>
#include <string>

#include "fvweno/errors.hpp"

namespace fvweno {

enum class Scheme { JS, M, PM6, ACM };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::JS:  return "js";
        case Scheme::M:   return "m";
        case Scheme::PM6: return "pm6";
        case Scheme::ACM: return "acm";
    }
    return "?";
}

// Ideal weights of the left-biased fifth-order scheme.
struct IdealWeights {
    static constexpr double d0 = 0.1;
    static constexpr double d1 = 0.6;
    static constexpr double d2 = 0.3;
};
inline constexpr double kIdealWeight[3] = {IdealWeights::d0, IdealWeights::d1,
                                           IdealWeights::d2};

struct SmoothnessTriple {
    double beta0, beta1, beta2;
};

struct WeightTriple {
    double w0, w1, w2;
};

// Tunables of the approximate-constant mapping.  CFS_s = cfs_fraction * d_s
// is the control factor of smoothness; delta is the half-width of the two
// transition intervals; amp (A) scales the signum-like transition shape.
struct AcmParams {
    int k = 2;
    double amp = 20.0;
    double delta = 1e-6;
    double cfs_fraction = 0.1;
};

struct WeightConfig {
    double epsilon = 1e-40;
    Scheme scheme = Scheme::JS;
    AcmParams acm;
    int pm_k = 6;
    // Freeze the nonlinear weights to the ideal weights (linear fifth-order
    // upwind scheme).  Not a CLI scheme; used by exactness checks.
    bool force_ideal = false;
};

// ---------------------------------------------------------------------------
// Smoothness indicators and JS weights
// ---------------------------------------------------------------------------

namespace detail {
inline double sq(double x) { return x * x; }
} // namespace detail

// The three quadratic forms on the substencils of {u[0..4]} ~ u_{j-2..j+2}.
inline SmoothnessTriple smoothness_indicators_unchecked(const double u[5]) {
    using detail::sq;
    SmoothnessTriple b;
    b.beta0 = (13.0 / 12.0) * sq(u[0] - 2.0 * u[1] + u[2]) +
              0.25 * sq(u[0] - 4.0 * u[1] + 3.0 * u[2]);
    b.beta1 = (13.0 / 12.0) * sq(u[1] - 2.0 * u[2] + u[3]) +
              0.25 * sq(u[1] - u[3]);
    b.beta2 = (13.0 / 12.0) * sq(u[2] - 2.0 * u[3] + u[4]) +
              0.25 * sq(3.0 * u[2] - 4.0 * u[3] + u[4]);
    return b;
}

inline SmoothnessTriple smoothness_indicators(const std::array<double, 5>& u) {
    for (double v : u)
        if (!std::isfinite(v))
            throw InvalidInputError("smoothness_indicators: non-finite stencil value");
    return smoothness_indicators_unchecked(u.data());
}

// omega_s = alpha_s / sum(alpha), alpha_s = d_s / (eps + beta_s)^2.
inline WeightTriple weights_js(const SmoothnessTriple& b, double epsilon) {
    const double a0 = IdealWeights::d0 / ((epsilon + b.beta0) * (epsilon + b.beta0));
    const double a1 = IdealWeights::d1 / ((epsilon + b.beta1) * (epsilon + b.beta1));
    const double a2 = IdealWeights::d2 / ((epsilon + b.beta2) * (epsilon + b.beta2));
    const double sum = a0 + a1 + a2;
    return {a0 / sum, a1 / sum, a2 / sum};
}

// ---------------------------------------------------------------------------
// Mapping functions
// ---------------------------------------------------------------------------

namespace detail {

// Normalized weights can land a few ulps outside [0,1]; anything further out
// is a caller bug.
inline double clamp_weight(double w, const char* who) {
    if (w < 0.0 || w > 1.0) {
        if (w >= -1e-12 && w <= 1.0 + 1e-12)
            return w < 0.0 ? 0.0 : 1.0;
        throw InvalidInputError(std::string(who) + ": weight outside [0,1]");
    }
    return w;
}

inline void check_ideal(double d, const char* who) {
    if (!(d > 0.0 && d < 1.0))
        throw InvalidInputError(std::string(who) + ": ideal weight outside (0,1)");
}

} // namespace detail

// WENO-M mapping: g(w) = w (d + d^2 - 3 d w + w^2) / (d^2 + (1 - 2d) w).
inline double map_m_unchecked(double w, double d) {
    const double num = w * (d + d * d - 3.0 * d * w + w * w);
    const double den = d * d + (1.0 - 2.0 * d) * w;
    return num / den;
}

inline double map_m(double w, double d) {
    detail::check_ideal(d, "map_m");
    return map_m_unchecked(detail::clamp_weight(w, "map_m"), d);
}

// WENO-PM mapping: g(w) = C1 (w - d)^{k+1} (w + C2) + d with branch-dependent
// constants.  Lower branch (w <= d): C1 = (-1)^k (k+1)/d^{k+1}, C2 = d/(k+1);
// upper branch: C1 = -(k+1)/(1-d)^{k+1}, C2 = (d - (k+2))/(k+1).
struct PmConstants {
    double c1_lo, c2_lo, c1_hi, c2_hi;
    double exponent; // k + 1
    int iexponent;   // k + 1
};

inline PmConstants pm_constants(double d, int k) {
    PmConstants c;
    const double kp1 = double(k) + 1.0;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c.c1_lo = sign * kp1 / std::pow(d, kp1);
    c.c2_lo = d / kp1;
    c.c1_hi = -kp1 / std::pow(1.0 - d, kp1);
    c.c2_hi = (d - (double(k) + 2.0)) / kp1;
    c.exponent = kp1;
    c.iexponent = k + 1;
    return c;
}

[[gnu::always_inline]] inline double map_pm_with(const PmConstants& c, double w, double d) {
    const double t = std::pow(w - d, c.exponent);
    const double m = (w <= d) ? 1.0 : 0.0;
    const double c1 = m * c.c1_lo + (1.0 - m) * c.c1_hi;
    const double c2 = m * c.c2_lo + (1.0 - m) * c.c2_hi;
    return c1 * t * (w + c2) + d;
}

inline double map_pm(double w, double d, int k) {
    detail::check_ideal(d, "map_pm");
    if (k < 2)
        throw InvalidInputError("map_pm: k must be >= 2");
    // Constants recomputed per call; the solver caches them for the ideal
    // weights and both paths must agree bitwise (same expressions).
    return map_pm_with(pm_constants(d, k), detail::clamp_weight(w, "map_pm"), d);
}

// Signum-like transition function: x/|x| when saturated (|x| >= delta), else
// x / ((A (delta^2 - x^2))^{k+3} + |x|).
inline double sgm(double x, double delta, double amp, int k) {
    const double ax = std::fabs(x);
    if (ax >= delta)
        return x / ax;
    return x / (std::pow(amp * (delta * delta - x * x), double(k) + 3.0) + ax);
}

// Approximate-constant mapping for one substencil.  Construction validates
// the splicing conditions once; per-call evaluation assumes validity.
//
// Outside the two delta-wide transition intervals the map is exactly
// piecewise constant {0, d, 1}, and the evaluation short-circuits to stored
// constants without calling sgm.  The stored constants are produced by the
// same affine expressions the full path uses, so both paths agree bitwise.
class AcmMap {
public:
    AcmMap(double d, const AcmParams& p) : d_(d), k_(p.k), amp_(p.amp), delta_(p.delta) {
        if (!(d > 0.0 && d < 1.0)) throw ConfigError("AcmMap: d outside (0,1)");
        if (p.k < 1) throw ConfigError("AcmMap: k must be >= 1");
        if (!(p.amp > 0.0)) throw ConfigError("AcmMap: A must be positive");
        if (!(p.delta > 0.0)) throw ConfigError("AcmMap: delta must be positive");
        if (!(p.cfs_fraction > 0.0 && p.cfs_fraction < 1.0))
            throw ConfigError("AcmMap: cfs_fraction outside (0,1)");
        cfs_ = p.cfs_fraction * d;
        cfs_bar_ = 1.0 - (1.0 - d) / d * cfs_;
        half_d_ = 0.5 * d;
        one_minus_d_ = 1.0 - d;
        // Splicing conditions (CFS + delta < d < CFSbar - delta) and the
        // boundary requirements (CFS - delta > 0, CFSbar + delta < 1).
        if (!(cfs_ > 0.0 && cfs_ < d))
            throw ConfigError("AcmMap: CFS outside (0, d)");
        if (!(cfs_bar_ > d && cfs_bar_ < 1.0))
            throw ConfigError("AcmMap: CFSbar outside (d, 1)");
        if (!(cfs_ + delta_ < d && d < cfs_bar_ - delta_))
            throw ConfigError("AcmMap: splicing condition violated");
        if (!(cfs_ - delta_ > 0.0))
            throw ConfigError("AcmMap: CFS - delta must be positive");
        if (!(cfs_bar_ + delta_ < 1.0))
            throw ConfigError("AcmMap: CFSbar + delta must be below 1");
        sat_lower_lo_ = affine_lower(-1.0); // exactly 0
        sat_lower_hi_ = affine_lower(+1.0); // exactly d
        sat_upper_lo_ = affine_upper(-1.0); // exactly d
        sat_upper_hi_ = affine_upper(+1.0); // exactly 1
    }

    // Shortcut path: the mapping is constant outside the transition bands.
    double operator()(double w) const {
        if (w <= d_) {
            const double x = w - cfs_;
            if (x <= -delta_) return sat_lower_lo_;
            if (x >= delta_) return sat_lower_hi_;
            return affine_lower(sgm(x, delta_, amp_, k_));
        }
        const double x = w - cfs_bar_;
        if (x <= -delta_) return sat_upper_lo_;
        if (x >= delta_) return sat_upper_hi_;
        return affine_upper(sgm(x, delta_, amp_, k_));
    }

    // Full-formula path (always evaluates sgm); used to check the shortcut.
    double full(double w) const {
        if (w <= d_)
            return affine_lower(sgm(w - cfs_, delta_, amp_, k_));
        return affine_upper(sgm(w - cfs_bar_, delta_, amp_, k_));
    }

    double cfs() const { return cfs_; }
    double cfs_bar() const { return cfs_bar_; }
    double delta() const { return delta_; }
    double ideal() const { return d_; }

private:
    // Lower branch: (d/2) s + d/2; upper branch: d + (1-d)(s/2 + 1/2).
    // The upper form is the printed ((1-d)/2) s + (1+d)/2 reassociated so
    // saturation lands exactly on d and 1 in floating point.
    double affine_lower(double s) const { return half_d_ * s + half_d_; }
    double affine_upper(double s) const {
        return d_ + one_minus_d_ * (0.5 * s + 0.5);
    }

    double d_;
    int k_;
    double amp_, delta_;
    double cfs_, cfs_bar_;
    double half_d_, one_minus_d_;
    double sat_lower_lo_, sat_lower_hi_, sat_upper_lo_, sat_upper_hi_;
};

inline double map_acm(double w, double d, const AcmParams& params) {
    return AcmMap(d, params)(detail::clamp_weight(w, "map_acm"));
}

// ---------------------------------------------------------------------------
// Prepared per-configuration tables (hot-path form of WeightConfig)
// ---------------------------------------------------------------------------

struct AcmStencilConsts {
    double d, cfs, cfs_bar, half_d, one_minus_d;
    double sat_lower_lo, sat_lower_hi, sat_upper_lo, sat_upper_hi;
};

class WeightTables {
public:
    explicit WeightTables(const WeightConfig& cfg) : cfg_(cfg) {
        if (!(cfg.epsilon > 0.0)) throw ConfigError("WeightConfig: epsilon must be positive");
        if (cfg.pm_k < 2) throw ConfigError("WeightConfig: pm_k must be >= 2");
        for (int s = 0; s < 3; ++s) {
            pm_[s] = pm_constants(kIdealWeight[s], cfg.pm_k);
            AcmMap m(kIdealWeight[s], cfg.acm);
            acm_[s].d = kIdealWeight[s];
            acm_[s].cfs = m.cfs();
            acm_[s].cfs_bar = m.cfs_bar();
            acm_[s].half_d = 0.5 * kIdealWeight[s];
            acm_[s].one_minus_d = 1.0 - kIdealWeight[s];
            // Saturation constants via the same affine expressions as AcmMap.
            acm_[s].sat_lower_lo = acm_[s].half_d * -1.0 + acm_[s].half_d;
            acm_[s].sat_lower_hi = acm_[s].half_d * +1.0 + acm_[s].half_d;
            acm_[s].sat_upper_lo = acm_[s].d + acm_[s].one_minus_d * (0.5 * -1.0 + 0.5);
            acm_[s].sat_upper_hi = acm_[s].d + acm_[s].one_minus_d * (0.5 * +1.0 + 0.5);
        }
    }

    const WeightConfig& config() const { return cfg_; }
    double epsilon() const { return cfg_.epsilon; }
    Scheme scheme() const { return cfg_.scheme; }
    bool force_ideal() const { return cfg_.force_ideal; }
    const PmConstants& pm(int s) const { return pm_[s]; }
    const AcmStencilConsts& acm(int s) const { return acm_[s]; }
    int acm_k() const { return cfg_.acm.k; }
    double acm_amp() const { return cfg_.acm.amp; }
    double acm_delta() const { return cfg_.acm.delta; }

private:
    WeightConfig cfg_;
    PmConstants pm_[3];
    AcmStencilConsts acm_[3];
};

namespace detail {

// Transition-band evaluation, kept out of line so the pow call inside sgm
// does not weigh down the plateau fast path.
[[gnu::noinline]] inline double acm_eval_transition(const AcmStencilConsts& c, double w,
                                                    double x, double delta, double amp,
                                                    int k) {
    if (w <= c.d)
        return c.half_d * sgm(x, delta, amp, k) + c.half_d;
    return c.d + c.one_minus_d * (0.5 * sgm(x, delta, amp, k) + 0.5);
}

// Branchless plateau evaluation: multiply-by-0/1 blends select exactly (the
// discarded term is a true 0.0 product), and copysign(1, x) is the saturated
// sgm value, feeding the same affine expressions the full path uses.  The
// delta-wide transition bands are essentially never hit, so their evaluation
// sits behind one never-taken test.
inline double acm_eval(const AcmStencilConsts& c, double w, double delta,
                       double amp, int k) {
    const double m = (w <= c.d) ? 1.0 : 0.0;
    const double x = w - (m * c.cfs + (1.0 - m) * c.cfs_bar);
    if (__builtin_expect(std::fabs(x) < delta, 0))
        return acm_eval_transition(c, w, x, delta, amp, k);
    const double s = std::copysign(1.0, x);
    const double g_lower = c.half_d * s + c.half_d;
    const double g_upper = c.d + c.one_minus_d * (0.5 * s + 0.5);
    return m * g_lower + (1.0 - m) * g_upper;
}

// Mapped alphas for the three substencils under scheme S (not JS).
template <Scheme S>
inline void mapped_alphas(const WeightTables& wt, const double w[3], double a[3]) {
    if constexpr (S == Scheme::M) {
        a[0] = map_m_unchecked(w[0], kIdealWeight[0]);
        a[1] = map_m_unchecked(w[1], kIdealWeight[1]);
        a[2] = map_m_unchecked(w[2], kIdealWeight[2]);
    } else if constexpr (S == Scheme::PM6) {
        a[0] = map_pm_with(wt.pm(0), w[0], kIdealWeight[0]);
        a[1] = map_pm_with(wt.pm(1), w[1], kIdealWeight[1]);
        a[2] = map_pm_with(wt.pm(2), w[2], kIdealWeight[2]);
    } else if constexpr (S == Scheme::ACM) {
        const double delta = wt.acm_delta();
        const double amp = wt.acm_amp();
        const int k = wt.acm_k();
        a[0] = acm_eval(wt.acm(0), w[0], delta, amp, k);
        a[1] = acm_eval(wt.acm(1), w[1], delta, amp, k);
        a[2] = acm_eval(wt.acm(2), w[2], delta, amp, k);
    }
}

} // namespace detail

// Apply the configured mapping to a weight triple and renormalize.
// JS returns the input unchanged.
inline WeightTriple apply_mapping(const WeightTriple& w, const WeightConfig& cfg) {
    if (cfg.scheme == Scheme::JS)
        return w;
    WeightTables wt(cfg);
    double win[3] = {detail::clamp_weight(w.w0, "apply_mapping"),
                     detail::clamp_weight(w.w1, "apply_mapping"),
                     detail::clamp_weight(w.w2, "apply_mapping")};
    double a[3] = {0.0, 0.0, 0.0};
    switch (cfg.scheme) {
        case Scheme::M:   detail::mapped_alphas<Scheme::M>(wt, win, a); break;
        case Scheme::PM6: detail::mapped_alphas<Scheme::PM6>(wt, win, a); break;
        case Scheme::ACM: detail::mapped_alphas<Scheme::ACM>(wt, win, a); break;
        case Scheme::JS:  break;
    }
    const double sum = a[0] + a[1] + a[2];
    if (sum == 0.0)
        throw DegenerateWeightsError("apply_mapping: all mapped weights are zero");
    return {a[0] / sum, a[1] / sum, a[2] / sum};
}

} // namespace fvweno

#endif
