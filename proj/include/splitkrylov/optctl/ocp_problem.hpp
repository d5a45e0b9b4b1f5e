/// @file ocp_problem.hpp
/// @brief Linear-quadratic OCP data: min 1/2|Cx - y_ref|^2 + lambda/2|u - u_ref|^2
/// subject to A x - B u = f.

#ifndef SPLITKRYLOV_OPTCTL_OCP_PROBLEM_HPP
#define SPLITKRYLOV_OPTCTL_OCP_PROBLEM_HPP

#include <string>

#include "../core/sparse_matrix.hpp"
#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "../krylov/solver_config.hpp"

namespace splitkrylov {

struct OcpProblem {
    SplitOperator a_split; // constraint operator, n x n
    SparseMatrix b_in;     // input operator, n x m
    SparseMatrix c_out;    // output operator, q x n
    real_t lambda_reg = 1.0;
    Vector f;     // source, length n
    Vector y_ref; // reference output, length q
    Vector u_ref; // reference control, length m

    index_t n() const { return a_split.dim(); }
    index_t m() const { return b_in.n_cols; }
    index_t q() const { return c_out.n_rows; }

    void validate() const {
        if (!(lambda_reg > 0)) throw ConfigError("OcpProblem: lambda_reg must be positive");
        if (b_in.n_rows != n()) throw DimensionError("OcpProblem: B has wrong row count");
        if (c_out.n_cols != n()) throw DimensionError("OcpProblem: C has wrong column count");
        if (static_cast<index_t>(f.size()) != n()) throw DimensionError("OcpProblem: f length");
        if (static_cast<index_t>(y_ref.size()) != q())
            throw DimensionError("OcpProblem: y_ref length");
        if (static_cast<index_t>(u_ref.size()) != m())
            throw DimensionError("OcpProblem: u_ref length");
    }
};

struct KktSolution {
    Vector x; // state
    Vector u; // control
    Vector p; // adjoint
    SolveReport outer_report;
    long inner_iterations = 0;
    real_t kkt_residual = 0.0; // Euclidean, absolute
    // PPCG: largest constraint-block residual norm seen across iterations
    real_t max_constraint_residual = 0.0;
    bool feasibility_degraded = false;
    bool symmetry_degraded = false;
};

/// Pipeline options. Effective inner tolerance policy: condensed uses
/// cgtol/10, PPCG uses a fixed 1e-6, both overridable via inner_tol.
struct OcpSolveOptions {
    SolverConfig inner;   // method/preconditioner for A and A^T solves
    real_t cgtol = 1e-6;  // outer CG relative tolerance
    int outer_max_iter = 500;
    std::optional<real_t> inner_tol;
};

} // namespace splitkrylov

#endif
