#ifndef FVWENO_GRID_HPP_
#define FVWENO_GRID_HPP_

// Uniform 1D/2D grids with three ghost layers, cell-average fields and
// boundary-condition descriptions.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fvweno/errors.hpp"
#include "fvweno/euler.hpp"

namespace fvweno {

struct GridSpec {
    int dim = 1;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    int nx = 0, ny = 1;
    static constexpr int ng = 3; // ghost width required by the 5-point stencil

    double dx() const { return (x1 - x0) / nx; }
    double dy() const { return (y1 - y0) / ny; }
    double xc(int i) const { return x0 + (i + 0.5) * dx(); } // interior index
    double yc(int j) const { return y0 + (j + 0.5) * dy(); }

    void validate() const {
        if (nx < 10 || (dim == 2 && ny < 10))
            throw ConfigError("GridSpec: need at least 10 cells per axis");
        if (!(x1 > x0) || (dim == 2 && !(y1 > y0)))
            throw ConfigError("GridSpec: empty domain");
    }
};

enum class BcKind {
    Periodic,
    Transmissive, // zero-gradient copy of the outermost interior cell
    Reflective,   // mirror with the normal momentum negated
    Inflow,       // fixed state
    Outflow,      // zero-gradient
    TimeDependent // state imposed per (coordinate, t); nullopt means reflect
};

// One side of the domain.  `state` is the inflow state (conserved);
// `imposed` drives TimeDependent sides: called with the along-side
// coordinate and time, an engaged result is imposed, nullopt reflects.
struct BoundaryCondition {
    BcKind kind = BcKind::Transmissive;
    std::array<double, 4> state{};
    std::function<std::optional<std::array<double, 4>>(double coord, double t)> imposed;
};

struct BcSet {
    BoundaryCondition left, right, bottom, top;
};

// Cell-average field over a grid, ncomp components, ghost cells included.
// Layout: comp-major, then row-major ([c][j][i]), so x-rows are contiguous.
class Field {
public:
    Field() = default;
    Field(const GridSpec& g, int ncomp) : grid_(g), ncomp_(ncomp) {
        sx_ = g.nx + 2 * GridSpec::ng;
        sy_ = (g.dim == 2) ? g.ny + 2 * GridSpec::ng : 1;
        data_.assign(std::size_t(ncomp_) * sx_ * sy_, 0.0);
    }

    const GridSpec& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    int stride_x() const { return sx_; }
    int stride_y() const { return sy_; }

    // Interior indices i in [0,nx), j in [0,ny); ghosts via negative /
    // past-the-end indices.
    double& at(int c, int i) { return data_[idx(c, i, 0)]; }
    double at(int c, int i) const { return data_[idx(c, i, 0)]; }
    double& at(int c, int i, int j) { return data_[idx(c, i, j)]; }
    double at(int c, int i, int j) const { return data_[idx(c, i, j)]; }

    double* row(int c, int j) { return &data_[idx(c, -GridSpec::ng, j)]; }
    const double* row(int c, int j) const { return &data_[idx(c, -GridSpec::ng, j)]; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    // Solid-cell mask (FFS step); empty when the whole domain is fluid.
    // Masked cells are never evolved or validated; sweeps see them only as
    // prefilled wall ghosts.
    bool has_mask() const { return !mask_.empty(); }
    void allocate_mask() { mask_.assign(std::size_t(sx_) * sy_, 0); }
    std::uint8_t& mask_at(int i, int j) { return mask_[midx(i, j)]; }
    std::uint8_t mask_at(int i, int j) const { return mask_.empty() ? 0 : mask_[midx(i, j)]; }
    bool is_fluid(int i, int j) const { return mask_at(i, j) == 0; }

    Cons1D cons1(int i) const { return {at(0, i), at(1, i), at(2, i)}; }
    Cons2D cons2(int i, int j) const {
        return {at(0, i, j), at(1, i, j), at(2, i, j), at(3, i, j)};
    }
    void set(int i, const Cons1D& c) {
        at(0, i) = c.rho; at(1, i) = c.mx; at(2, i) = c.E;
    }
    void set(int i, int j, const Cons2D& c) {
        at(0, i, j) = c.rho; at(1, i, j) = c.mx; at(2, i, j) = c.my; at(3, i, j) = c.E;
    }

private:
    std::size_t idx(int c, int i, int j) const {
        return (std::size_t(c) * sy_ + (j + (grid_.dim == 2 ? GridSpec::ng : 0))) * sx_ +
               (i + GridSpec::ng);
    }
    std::size_t midx(int i, int j) const {
        return std::size_t(j + (grid_.dim == 2 ? GridSpec::ng : 0)) * sx_ + (i + GridSpec::ng);
    }

    GridSpec grid_;
    int ncomp_ = 1;
    int sx_ = 0, sy_ = 0;
    std::vector<double> data_;
    std::vector<std::uint8_t> mask_;
};

} // namespace fvweno

#endif
