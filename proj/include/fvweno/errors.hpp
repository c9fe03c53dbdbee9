#ifndef FVWENO_ERRORS_HPP_
#define FVWENO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fvweno {

// Base class for all library errors.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scalar argument is outside the documented domain (non-finite input,
// weight outside [0,1] beyond roundoff, ...).
struct InvalidInputError : SolverError {
    using SolverError::SolverError;
};

// A configuration object violates its invariants (detected at construction).
struct ConfigError : SolverError {
    using SolverError::SolverError;
};

// All mapped weights vanished; the weight triple cannot be renormalized.
struct DegenerateWeightsError : SolverError {
    using SolverError::SolverError;
};

// Characteristic decomposition failed (degenerate sound speed, L*R != I).
struct DecompositionError : SolverError {
    using SolverError::SolverError;
};

// Two fields that must share a mesh do not.
struct MeshMismatchError : SolverError {
    using SolverError::SolverError;
};

// Catalog lookup of an unknown problem name.
struct NotFoundError : SolverError {
    using SolverError::SolverError;
};

// Nonpositive density/pressure or a non-finite value appeared in the field.
// Carries enough context to produce the structured failure report.
struct BlowUpError : SolverError {
    BlowUpError(const std::string& what, int i, int j, double time, int stage,
                const std::string& quantity, double value)
        : SolverError(what), cell_i(i), cell_j(j), time(time), rk_stage(stage),
          quantity(quantity), value(value) {}

    int cell_i;
    int cell_j;           // -1 for 1D
    double time;
    int rk_stage;         // 0-based stage index within the step
    std::string quantity; // "rho", "pressure", "finite"
    double value;
};

} // namespace fvweno

#endif
