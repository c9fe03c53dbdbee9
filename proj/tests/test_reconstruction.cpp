#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cstdint>
#include <random>

#include "fvweno/euler.hpp"
#include "fvweno/reconstruction.hpp"
#include "oracles.hpp"

using namespace fvweno;

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::vector<WeightConfig> all_schemes() {
    std::vector<WeightConfig> v;
    for (Scheme s : {Scheme::JS, Scheme::M, Scheme::PM6, Scheme::ACM}) {
        WeightConfig c;
        c.scheme = s;
        v.push_back(c);
    }
    return v;
}

// Exact cell averages of a polynomial on five unit cells centered at
// -2..2, and its exact value at the interface x = 1/2.
struct PolyStencil {
    std::array<double, 5> avg;
    double interface_value;
};

PolyStencil poly_stencil(const std::vector<oracle::ld>& coeff) {
    PolyStencil p;
    for (int j = 0; j < 5; ++j) {
        const oracle::ld xc = -2.0L + j;
        p.avg[j] = double(oracle::poly_cell_average(coeff, xc - 0.5L, xc + 0.5L));
    }
    p.interface_value = double(oracle::poly_eval(coeff, 0.5L));
    return p;
}

} // namespace

TEST_CASE("substencil values") {
    // Consistency on constants (coefficients sum to 1).
    const auto qc = substencil_values({1, 1, 1, 1, 1});
    CHECK(qc[0] == 1.0);
    CHECK(qc[1] == 1.0);
    CHECK(qc[2] == 1.0);
    // Linear data reproduces the interface value exactly.
    const auto ql = substencil_values({-2, -1, 0, 1, 2});
    CHECK(ql[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ql[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ql[2] == doctest::Approx(0.5).epsilon(1e-15));
    // Exact averages of a quadratic: each substencil hits the exact
    // interface value (the (4,1,0,1,4)-shaped data plus the h^2/12 shift).
    const auto p = poly_stencil({0.0L, 0.0L, 1.0L}); // u = x^2
    const auto qq = substencil_values(p.avg);
    for (int s = 0; s < 3; ++s)
        CHECK(qq[s] == doctest::Approx(p.interface_value).epsilon(1e-14));
}

TEST_CASE("polynomial exactness of every scheme on degree <= 2 data") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (const auto& cfg : all_schemes()) {
        for (int it = 0; it < 200; ++it) {
            const std::vector<oracle::ld> coeff = {oracle::ld(dist(rng)), oracle::ld(dist(rng)),
                                                   oracle::ld(dist(rng))};
            const auto p = poly_stencil(coeff);
            const double left = reconstruct_left(p.avg, cfg);
            CHECK(left == doctest::Approx(p.interface_value).epsilon(1e-12));
        }
    }
}

TEST_CASE("fifth-order linear exactness with frozen ideal weights") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    WeightConfig cfg;
    cfg.force_ideal = true;
    for (int it = 0; it < 200; ++it) {
        std::vector<oracle::ld> coeff(5);
        for (auto& c : coeff) c = dist(rng);
        const auto p = poly_stencil(coeff);
        const double left = reconstruct_left(p.avg, cfg);
        CHECK(left == doctest::Approx(p.interface_value).epsilon(1e-10));
    }
}

TEST_CASE("reconstruct_left on reference stencils") {
    for (const auto& cfg : all_schemes()) {
        CHECK(reconstruct_left({3.25, 3.25, 3.25, 3.25, 3.25}, cfg) ==
              doctest::Approx(3.25).epsilon(1e-14));
        CHECK(reconstruct_left({-2, -1, 0, 1, 2}, cfg) == doctest::Approx(0.5).epsilon(1e-13));
    }
    // Step data under JS: dominated by the smooth substencil, frozen oracle
    // value 1.305e-80 (exact-rational weights composed with the substencil
    // values 0, 1/3, 2/3).
    WeightConfig js;
    const double v = reconstruct_left({0, 0, 0, 1, 1}, js);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v == doctest::Approx(1.305e-80).epsilon(1e-9));
}

TEST_CASE("mirror symmetry of reconstruct_right") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (const auto& cfg : all_schemes()) {
        for (int it = 0; it < 1000; ++it) {
            std::array<double, 5> s;
            for (auto& x : s) x = dist(rng);
            const std::array<double, 5> rev = {s[4], s[3], s[2], s[1], s[0]};
            CHECK(same_bits(reconstruct_right(rev, cfg), reconstruct_left(s, cfg)));
        }
    }
    // Symmetric data about the interface: left and right values coincide.
    WeightConfig cfg;
    const std::array<double, 5> sym_l = {0.2, 0.7, 1.3, 1.3, 0.7};   // cells j-2..j+2
    const std::array<double, 5> sym_r = {0.7, 1.3, 1.3, 0.7, 0.2};   // cells j-1..j+3
    CHECK(same_bits(reconstruct_left(sym_l, cfg), reconstruct_right(sym_r, cfg)));
}

TEST_CASE("ENO boundedness on monotone stencils") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (const auto& cfg : all_schemes()) {
        for (int it = 0; it < 10000 / 4; ++it) {
            std::array<double, 5> s;
            double acc = dist(rng) * 10.0 - 5.0;
            const bool increasing = (it % 2) == 0;
            for (auto& x : s) {
                x = acc;
                acc += (increasing ? 1.0 : -1.0) * dist(rng);
            }
            const double v = reconstruct_left(s, cfg);
            const double lo = std::min(s[0], s[4]);
            const double hi = std::max(s[0], s[4]);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("characteristic reconstruction") {
    WeightConfig cfg;
    // Uniform flow: projection/back-projection identity.
    {
        const Cons1D s = prim_to_cons(Prim1D{1.2, 0.4, 2.0});
        const RoeState roe = roe_average(s, s);
        const EigenSystem<3> eig = eigensystem(roe);
        double cells[6][3];
        for (int c = 0; c < 6; ++c) { cells[c][0] = s.rho; cells[c][1] = s.mx; cells[c][2] = s.E; }
        double l[3], r[3];
        reconstruct_characteristic<3>(cells, eig, cfg, l, r);
        CHECK(l[0] == doctest::Approx(s.rho).epsilon(1e-13));
        CHECK(l[1] == doctest::Approx(s.mx).epsilon(1e-13));
        CHECK(l[2] == doctest::Approx(s.E).epsilon(1e-13));
        CHECK(r[0] == doctest::Approx(s.rho).epsilon(1e-13));
        CHECK(r[1] == doctest::Approx(s.mx).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(s.E).epsilon(1e-13));
    }
    // A perturbation along a single right eigenvector excites only that
    // characteristic field.
    {
        const Cons1D base = prim_to_cons(Prim1D{1.0, 0.3, 1.0});
        const RoeState roe = roe_average(base, base);
        const EigenSystem<3> eig = eigensystem(roe);
        for (int field = 0; field < 3; ++field) {
            double cells[6][3];
            for (int c = 0; c < 6; ++c) {
                const double amp = 1e-3 * c * c; // nonconstant along the stencil
                cells[c][0] = base.rho + amp * eig.R[0][field];
                cells[c][1] = base.mx + amp * eig.R[1][field];
                cells[c][2] = base.E + amp * eig.R[2][field];
            }
            // Project each cell and verify only `field` varies.
            for (int m = 0; m < 3; ++m) {
                double first = 0.0;
                for (int n = 0; n < 3; ++n) first += eig.L[m][n] * cells[0][n];
                for (int c = 1; c < 6; ++c) {
                    double w = 0.0;
                    for (int n = 0; n < 3; ++n) w += eig.L[m][n] * cells[c][n];
                    if (m != field) CHECK(w - first == doctest::Approx(0.0).epsilon(1e-10));
                }
            }
        }
    }
    // Sod initial jump: finite states bounded by the projected substencil hull.
    {
        const Cons1D left = prim_to_cons(Prim1D{1.0, 0.0, 1.0});
        const Cons1D right = prim_to_cons(Prim1D{0.125, 0.0, 0.1});
        double cells[6][3];
        for (int c = 0; c < 6; ++c) {
            const Cons1D& s = c < 3 ? left : right;
            cells[c][0] = s.rho; cells[c][1] = s.mx; cells[c][2] = s.E;
        }
        const RoeState roe = roe_average(left, right);
        const EigenSystem<3> eig = eigensystem(roe);
        double l[3], r[3];
        reconstruct_characteristic<3>(cells, eig, cfg, l, r);
        for (int n = 0; n < 3; ++n) {
            CHECK(std::isfinite(l[n]));
            CHECK(std::isfinite(r[n]));
        }
        // Oscillation bound per characteristic field: each reconstructed
        // field stays within the convex hull of its projected cell values.
        for (int m = 0; m < 3; ++m) {
            double w[6];
            for (int c = 0; c < 6; ++c) {
                w[c] = 0.0;
                for (int n = 0; n < 3; ++n) w[c] += eig.L[m][n] * cells[c][n];
            }
            double lo = w[0], hi = w[0];
            for (int c = 1; c < 6; ++c) { lo = std::min(lo, w[c]); hi = std::max(hi, w[c]); }
            double wl = 0.0, wr = 0.0;
            for (int n = 0; n < 3; ++n) { wl += eig.L[m][n] * l[n]; wr += eig.L[m][n] * r[n]; }
            const double pad = 1e-10 * (1.0 + std::fabs(hi) + std::fabs(lo));
            CHECK(wl >= lo - pad);
            CHECK(wl <= hi + pad);
            CHECK(wr >= lo - pad);
            CHECK(wr <= hi + pad);
        }
    }
    // Non-invertible eigensystem rejected.
    {
        EigenSystem<3> bad{};
        double cells[6][3] = {};
        for (int c = 0; c < 6; ++c) { cells[c][0] = 1; cells[c][1] = 0; cells[c][2] = 2.5; }
        double l[3], r[3];
        CHECK_THROWS_AS(reconstruct_characteristic<3>(cells, bad, cfg, l, r),
                        DecompositionError);
    }
}

TEST_CASE("JS face value against the composed extended-precision oracle") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    WeightConfig cfg;
    for (int it = 0; it < 3000; ++it) {
        std::array<double, 5> s;
        std::array<oracle::ld, 5> sl;
        for (int i = 0; i < 5; ++i) { s[i] = dist(rng); sl[i] = s[i]; }
        const double got = reconstruct_left(s, cfg);
        const double want = double(oracle::weno_js_face(sl, 1e-40L));
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}
