#ifndef FVWENO_PROBLEMS_HPP_
#define FVWENO_PROBLEMS_HPP_

// Benchmark catalog: initial conditions, boundary conditions, exact or
// reference solutions and per-problem default configurations.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fvweno/grid.hpp"
#include "fvweno/solver.hpp"

namespace fvweno {

// High-resolution self-solution used where no exact solution exists.
struct ReferenceRecipe {
    Scheme scheme = Scheme::JS;
    int resolution = 0; // N (1D) or N x N (2D); 0 = no recipe
    double output_time = 0.0;
};

struct ProblemSpec {
    std::string name;
    std::string description;
    Equation equation = Equation::Advection;
    GridSpec domain;                 // with the default mesh
    std::vector<int> mesh_levels;    // convergence-study meshes (advection)
    BcSet bc;
    std::function<double(double)> ic_scalar;
    std::function<Prim1D(double)> ic_euler1d;
    std::function<Prim2D(double, double)> ic_euler2d;
    bool has_exact = false;          // exact transport solution (advection)
    double default_cfl = 0.5;
    bool cfl_rule_accuracy = false;  // CFL = dx^(2/3) accuracy-test rule
    double t_end = 1.0;
    std::vector<double> output_times;
    int critical_point_order = -1;   // metadata only
    ReferenceRecipe reference;
    // Geometry (forward-facing step): mask construction and solver hooks.
    std::function<void(Field&)> apply_geometry;
    GeometryHooks geometry_hooks;

    int ncomp() const {
        switch (equation) {
            case Equation::Advection: return 1;
            case Equation::Euler1D: return 3;
            case Equation::Euler2D: return 4;
        }
        return 1;
    }
    int dim() const { return domain.dim; }
};

// The thirteen benchmark problems.
const std::vector<ProblemSpec>& catalog();
const ProblemSpec& lookup(const std::string& name);

// Periodic transport of the initial condition (advection problems only).
double advection_exact(const ProblemSpec& spec, double x, double t);

// Shock-vortex initial state at a point (exposed for verification).
Prim2D shock_vortex_ic(double x, double y);

// Cell-center sampled initial field on an nx (x ny) mesh; applies geometry.
Field init_field(const ProblemSpec& spec, int nx, int ny = 0);

// CFL for a given mesh honoring the accuracy-test rule.
double effective_cfl(const ProblemSpec& spec, double dx, double cfl_override = -1.0);

// Runs `spec` with the given weights on an nx (x ny) mesh.
RunResult run_problem(const ProblemSpec& spec, const WeightConfig& weights, int nx,
                      int ny = 0, double cfl_override = -1.0, double t_end_override = -1.0,
                      long max_steps = -1,
                      const std::function<void(const Field&, double, long)>& on_step = {});

// Fine-mesh self-solution restricted (by cell-average agglomeration) to the
// coarse mesh.  Refuses advection problems (exact solution exists) and
// non-integer refinement ratios.
Field generate_reference(const ProblemSpec& spec, const ReferenceRecipe& recipe,
                         int coarse_nx, int coarse_ny = 0);

// Cell-average agglomeration onto a coarser mesh (exact conservation).
Field restrict_field(const Field& fine, int coarse_nx, int coarse_ny = 0);

} // namespace fvweno

#endif
