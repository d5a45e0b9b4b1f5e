/// @file solver_config.hpp
/// @brief Solver selection, tolerances, and the per-solve report.

#ifndef SPLITKRYLOV_KRYLOV_SOLVER_CONFIG_HPP
#define SPLITKRYLOV_KRYLOV_SOLVER_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "../core/types.hpp"
#include "../precond/preconditioner.hpp"

namespace splitkrylov {

enum class Method { CG, GMRES, Widlund, Rapoport, Direct };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::CG: return "cg";
        case Method::GMRES: return "gmres";
        case Method::Widlund: return "widlund";
        case Method::Rapoport: return "rapoport";
        case Method::Direct: return "direct";
    }
    return "?";
}

struct SolverConfig {
    Method method = Method::GMRES;
    real_t tol = 1e-8;              // relative residual target
    int max_iter = 1000;
    std::optional<int> restart;     // GMRES restart length
    PrecondSpec precond;            // built against the appropriate target
    std::optional<GridHint> grid_hint; // needed by multigrid preconditioners
    bool reorthogonalize = false;   // full reorthogonalization in the Lanczos kernel
    bool record_iterates = false;   // keep x_k per iteration (diagnostics/tests)

    void validate() const {
        if (!(tol > 0)) throw ConfigError("SolverConfig: tol must be positive");
        if (max_iter < 1) throw ConfigError("SolverConfig: max_iter must be >= 1");
        if (restart && *restart < 1) throw ConfigError("SolverConfig: restart must be >= 1");
    }
};

struct SolveReport {
    int iterations = 0;
    std::vector<real_t> residual_history; // relative residuals, starts at iteration 0
    bool converged = false;
    double wall_time = 0.0; // seconds
    long inner_iterations = 0;
    std::string termination; // "converged", "max_iter", "stagnated", "breakdown"
    bool stagnated = false;
    bool symmetry_degraded = false; // Widlund/Rapoport with an inexact H-solver
    // Rapoport: per-iteration relative residual in the H^{-1} norm
    std::vector<real_t> hinv_residual_history;
    std::vector<Vector> iterates; // filled when record_iterates is set
};

} // namespace splitkrylov

#endif
