/// @file runners.hpp
/// @brief Experiment drivers behind the CLI subcommands.
///
/// Every emitted row carries a status; failures are captured per row and the
/// run continues. Rows are generated in (level, config index) order, so a
/// fixed config and seed reproduce the file byte for byte (time_s aside).

#ifndef SPLITKRYLOV_BENCH_RUNNERS_HPP
#define SPLITKRYLOV_BENCH_RUNNERS_HPP

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>

#include "../core/banded.hpp"
#include "../core/matrix_market.hpp"
#include "../core/random.hpp"
#include "../discretize/assemble.hpp"
#include "../krylov/cg.hpp"
#include "../krylov/gmres.hpp"
#include "../krylov/rapoport.hpp"
#include "../krylov/widlund.hpp"
#include "../optctl/condensed.hpp"
#include "../optctl/constraint_precond.hpp"
#include "../optctl/schur_solve.hpp"
#include "../spectra/refinement_study.hpp"
#include "experiment.hpp"
#include "table.hpp"

namespace splitkrylov {

struct RunResult {
    Table table;
    bool any_failed = false;
};

namespace detail {

inline std::string sanitize_status(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

inline std::string precond_label(const PrecondSpec& p) { return to_string(p.kind); }

inline std::string inner_label(const SolverConfig& cfg) {
    std::string label = to_string(cfg.method);
    if (cfg.method != Method::Direct && cfg.precond.kind != PrecondKind::Identity)
        label += std::string("(") + to_string(cfg.precond.kind) + ")";
    return label;
}

inline SplitOperator assemble_split_problem(const ProblemSpec& spec) {
    switch (spec.kind) {
        case ProblemKind::AdvDiff: return assemble_advdiff(spec);
        case ProblemKind::Stokes: return assemble_stokes(spec);
        case ProblemKind::Wave: return assemble_wave(spec);
        default:
            throw ConfigError(std::string("problem '") + to_string(spec.kind) +
                              "' is a block (Schur) problem; not supported here");
    }
}

inline std::optional<GridHint> grid_hint_for(const ProblemSpec& spec) {
    if (spec.kind == ProblemKind::AdvDiff) return advdiff_grid_hint(spec);
    return std::nullopt;
}

inline Vector vector_from_mm(const std::string& path) {
    const SparseMatrix m = mm_read(path);
    if (m.n_cols != 1) throw FormatError("rhs file must be an n x 1 matrix: " + path);
    Vector v = zeros(m.n_rows);
    for (index_t i = 0; i < m.n_rows; ++i) v[static_cast<std::size_t>(i)] = m.value_at(i, 0);
    return v;
}

struct SolveRowResult {
    int iterations = 0;
    real_t relres = 0.0; // recomputed unpreconditioned relative residual
    bool converged = false; // each method's own stopping criterion
    double seconds = 0.0;
};

inline SolveRowResult run_single_solve(const SplitOperator& op, const Vector& b,
                                       SolverConfig cfg, const std::optional<GridHint>& hint) {
    cfg.grid_hint = hint;
    const auto t0 = std::chrono::steady_clock::now();
    Vector x;
    SolveRowResult out;
    switch (cfg.method) {
        case Method::Direct: {
            BandedLU lu(op.a);
            x = lu.solve(b);
            out.iterations = 0;
            out.converged = true;
            break;
        }
        case Method::CG: {
            Preconditioner p;
            if (cfg.precond.kind != PrecondKind::Identity)
                p = Preconditioner::build(cfg.precond, op.a, hint);
            auto [sol, report] = cg_solve(operator_from_matrix_ref(op.a), b, cfg, p);
            x = std::move(sol);
            out.iterations = report.iterations;
            out.converged = report.converged;
            break;
        }
        case Method::GMRES: {
            Preconditioner p;
            if (cfg.precond.kind != PrecondKind::Identity) {
                const SparseMatrix& target =
                    cfg.precond.kind == PrecondKind::IncompleteLU ? op.a : op.h;
                p = Preconditioner::build(cfg.precond, target, hint);
            }
            auto [sol, report] = gmres_solve(operator_from_matrix_ref(op.a), b, cfg, p);
            x = std::move(sol);
            out.iterations = report.iterations;
            out.converged = report.converged;
            break;
        }
        case Method::Widlund: {
            auto [sol, report] = widlund_solve(op, b, cfg);
            x = std::move(sol);
            out.iterations = report.iterations;
            out.converged = report.converged;
            break;
        }
        case Method::Rapoport: {
            auto [sol, report] = rapoport_solve(op, b, cfg);
            x = std::move(sol);
            out.iterations = report.iterations;
            out.converged = report.converged;
            break;
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const real_t bnorm = norm2(b);
    out.relres = bnorm == 0.0 ? 0.0 : norm2(subtract(b, spmv(op.a, x))) / bnorm;
    if (cfg.method == Method::Direct) out.converged = out.relres <= cfg.tol;
    return out;
}

/// Built-in OCP used by the benchmark: full observation and control
/// (B = C = I), constant source, zero references.
inline OcpProblem bench_ocp(const ProblemSpec& spec, real_t lambda, real_t source) {
    OcpProblem ocp;
    index_t velocity_dofs = 0;
    switch (spec.kind) {
        case ProblemKind::AdvDiff:
            ocp.a_split = assemble_advdiff(spec);
            velocity_dofs = ocp.a_split.dim();
            break;
        case ProblemKind::Stokes: {
            ocp.a_split = assemble_stokes(spec);
            const index_t n1 = spec.cells_per_side - 1;
            velocity_dofs = 2 * n1 * n1; // source acts on the velocity only
            break;
        }
        default:
            throw ConfigError(std::string("ocp experiment supports advdiff and stokes, got '") +
                              to_string(spec.kind) + "'");
    }
    const index_t n = ocp.a_split.dim();
    ocp.b_in = SparseMatrix::identity(n);
    ocp.c_out = SparseMatrix::identity(n);
    ocp.lambda_reg = lambda;
    ocp.f = zeros(n);
    for (index_t i = 0; i < velocity_dofs; ++i) ocp.f[static_cast<std::size_t>(i)] = source;
    ocp.y_ref = zeros(n);
    ocp.u_ref = zeros(n);
    return ocp;
}

} // namespace detail

inline RunResult run_cond(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.matrix_path.empty())
        throw ConfigError("cond experiment needs a built-in problem (refinements of a matrix "
                          "file are not defined)");
    StudyConfig study;
    study.levels = cfg.refinements;
    study.targets = cfg.targets;
    if (!cfg.solvers.empty()) {
        study.inner = cfg.solvers.front();
        if (cfg.solvers.front().precond.kind != PrecondKind::Identity)
            study.precond = cfg.solvers.front().precond;
    } else {
        study.inner.method = Method::Direct;
    }
    const auto rows = refinement_study(cfg.problem, study);

    RunResult result;
    result.table.columns = {"h", "dofs", "target", "kappa2", "lambda_width", "method", "status"};
    for (const auto& r : rows) {
        const bool ok = r.status == "ok";
        result.any_failed = result.any_failed || !ok;
        result.table.add_row({format_real(r.h), format_count(r.dofs), to_string(r.target),
                              ok ? format_real(r.kappa2) : "",
                              r.lambda_width ? format_real(*r.lambda_width) : "",
                              to_string(r.method), detail::sanitize_status(r.status)});
    }
    return result;
}

inline RunResult run_solve(const ExperimentConfig& cfg) {
    cfg.validate();
    RunResult result;
    result.table.columns = {"dofs",   "method", "precond",   "iters",
                            "time_s", "final_relres", "converged", "status"};
    const std::vector<SolverConfig> solvers =
        cfg.solvers.empty() ? std::vector<SolverConfig>{SolverConfig{}} : cfg.solvers;
    const int levels = cfg.matrix_path.empty() ? cfg.refinements : 1;

    for (int level = 0; level < levels; ++level) {
        std::optional<SplitOperator> op;
        std::optional<GridHint> hint;
        std::string assembly_error;
        try {
            if (!cfg.matrix_path.empty()) {
                op = split(mm_read(cfg.matrix_path));
            } else {
                const ProblemSpec spec = cfg.problem.refined(level);
                op = detail::assemble_split_problem(spec);
                hint = detail::grid_hint_for(spec);
            }
        } catch (const Error& e) {
            assembly_error = e.what();
        }

        Vector b;
        if (op) {
            if (!cfg.rhs_path.empty()) {
                b = detail::vector_from_mm(cfg.rhs_path);
            } else if (cfg.rhs_kind == "ones") {
                b = ones(op->dim());
            } else {
                SplitMix64 rng(cfg.seed + static_cast<std::uint64_t>(level));
                b = random_vector(rng, op->dim());
            }
        }

        for (const auto& scfg : solvers) {
            std::vector<std::string> row(result.table.columns.size());
            row[1] = to_string(scfg.method);
            row[2] = detail::precond_label(scfg.precond);
            if (!assembly_error.empty()) {
                row[0] = "";
                row[3] = row[4] = row[5] = "";
                row[6] = "false";
                row[7] = detail::sanitize_status(assembly_error);
                result.any_failed = true;
                result.table.add_row(std::move(row));
                continue;
            }
            row[0] = format_count(op->dim());
            try {
                const auto r = detail::run_single_solve(*op, b, scfg, hint);
                row[3] = format_count(r.iterations);
                row[4] = format_real(r.seconds);
                row[5] = format_real(r.relres);
                row[6] = r.converged ? "true" : "false";
                row[7] = "ok";
                result.any_failed = result.any_failed || !r.converged;
            } catch (const Error& e) {
                row[6] = "false";
                row[7] = detail::sanitize_status(e.what());
                result.any_failed = true;
            }
            result.table.add_row(std::move(row));
        }
    }
    return result;
}

inline RunResult run_ocp(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.matrix_path.empty())
        throw ConfigError("ocp experiment needs a built-in problem");
    RunResult result;
    result.table.columns = {"dofs",        "mode",   "inner",     "lambda", "outer_iters",
                            "inner_iters", "time_s", "converged", "status"};
    const std::vector<SolverConfig> inners =
        cfg.ocp.inners.empty() ? std::vector<SolverConfig>{SolverConfig{.method = Method::Direct}}
                               : cfg.ocp.inners;

    for (int level = 0; level < cfg.refinements; ++level) {
        const ProblemSpec spec = cfg.problem.refined(level);
        for (OcpMode mode : cfg.ocp.modes) {
            for (real_t lambda : cfg.ocp.lambdas) {
                for (const auto& inner : inners) {
                    std::vector<std::string> row(result.table.columns.size());
                    row[1] = to_string(mode);
                    row[2] = detail::inner_label(inner);
                    row[3] = format_real(lambda);
                    try {
                        OcpProblem ocp = detail::bench_ocp(spec, lambda, cfg.ocp.source);
                        row[0] = format_count(ocp.n());
                        OcpSolveOptions opt;
                        opt.inner = inner;
                        opt.inner.grid_hint = detail::grid_hint_for(spec);
                        opt.cgtol = cfg.ocp.cgtol;
                        opt.inner_tol = cfg.ocp.inner_tol;
                        const auto t0 = std::chrono::steady_clock::now();
                        KktSolution sol;
                        switch (mode) {
                            case OcpMode::Condensed: sol = condensed_solve(ocp, opt); break;
                            case OcpMode::Ppcg: sol = ppcg_solve(ocp, opt); break;
                            case OcpMode::Schur: sol = kkt_schur_solve(ocp, opt); break;
                        }
                        const double secs = std::chrono::duration<double>(
                                                std::chrono::steady_clock::now() - t0)
                                                .count();
                        row[4] = format_count(sol.outer_report.iterations);
                        row[5] = format_count(sol.inner_iterations);
                        row[6] = format_real(secs);
                        row[7] = sol.outer_report.converged ? "true" : "false";
                        row[8] = "ok";
                        result.any_failed = result.any_failed || !sol.outer_report.converged;
                    } catch (const Error& e) {
                        row[7] = "false";
                        row[8] = detail::sanitize_status(e.what());
                        result.any_failed = true;
                    }
                    result.table.add_row(std::move(row));
                }
            }
        }
    }
    return result;
}

inline RunResult run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::Cond: return run_cond(cfg);
        case ExperimentKind::Solve: return run_solve(cfg);
        case ExperimentKind::Ocp: return run_ocp(cfg);
    }
    throw ConfigError("unknown experiment");
}

} // namespace splitkrylov

#endif
