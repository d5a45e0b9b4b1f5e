// skbench: condition-number studies, solver benchmarks, and OCP pipeline
// comparisons on the built-in structured-grid problems or Matrix Market
// inputs. Configs are JSON manifests; flags override file fields.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "splitkrylov/bench/experiment.hpp"
#include "splitkrylov/bench/runners.hpp"
#include "splitkrylov/bench/table.hpp"

namespace sk = splitkrylov;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string problem;
    std::optional<int> dim;
    std::optional<sk::index_t> cells;
    std::optional<int> refinements;
    std::string targets;
    std::string method;
    std::string precond;
    std::optional<double> drop_tol;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<int> restart;
    std::optional<double> nu;
    std::optional<double> reaction;
    std::optional<double> lambda;
    std::optional<double> cgtol;
    std::string mode;
    std::string inner;
    std::string inner_precond;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::string matrix;
    std::string rhs;
    std::string rhs_kind;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON experiment manifest");
    cmd->add_option("--problem", o.problem, "built-in problem: advdiff|stokes|oseen|wave|beam");
    cmd->add_option("--dim", o.dim, "spatial dimension");
    cmd->add_option("--cells", o.cells, "cells per side at the coarsest level");
    cmd->add_option("--refinements", o.refinements, "number of refinement levels");
    cmd->add_option("--nu", o.nu, "diffusivity / viscosity");
    cmd->add_option("--reaction", o.reaction, "reaction coefficient");
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_option("--format", o.format, "csv|json");
    cmd->add_option("--seed", o.seed, "seed for generated right-hand sides");
    cmd->add_option("--matrix", o.matrix, "Matrix Market system matrix");
    cmd->add_option("--rhs", o.rhs, "Matrix Market right-hand side (n x 1)");
}

sk::ExperimentConfig build_config(const CliOverrides& o, sk::ExperimentKind kind) {
    sk::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = sk::load_experiment_config(o.config_path);
    cfg.experiment = kind;

    if (!o.problem.empty()) {
        cfg.problem.kind = sk::problem_kind_from_string(o.problem);
        cfg.problem_given = true;
    }
    if (o.dim) cfg.problem.dim = *o.dim;
    if (o.cells) cfg.problem.cells_per_side = *o.cells;
    if (o.nu) cfg.problem.nu = *o.nu;
    if (o.reaction) cfg.problem.reaction = *o.reaction;
    if (o.refinements) cfg.refinements = *o.refinements;
    if (!o.targets.empty()) {
        cfg.targets.clear();
        std::string token;
        for (char c : o.targets + ",") {
            if (c == ',') {
                if (!token.empty()) cfg.targets.push_back(sk::study_target_from_string(token));
                token.clear();
            } else {
                token += c;
            }
        }
    }
    // for cond runs, --inner selects the method behind Schur-complement targets
    const std::string method_flag =
        !o.method.empty() ? o.method : (kind == sk::ExperimentKind::Cond ? o.inner : "");
    if (!method_flag.empty() || !o.precond.empty() || o.tol || o.max_iter || o.restart ||
        o.drop_tol) {
        sk::SolverConfig scfg = cfg.solvers.empty() ? sk::SolverConfig{} : cfg.solvers.front();
        if (!method_flag.empty()) scfg.method = sk::method_from_string(method_flag);
        if (!o.precond.empty()) scfg.precond.kind = sk::precond_from_string(o.precond);
        if (o.drop_tol) scfg.precond.drop_tol = *o.drop_tol;
        if (o.tol) scfg.tol = *o.tol;
        if (o.max_iter) scfg.max_iter = *o.max_iter;
        if (o.restart) scfg.restart = *o.restart;
        cfg.solvers = {scfg};
    }
    if (o.lambda) cfg.ocp.lambdas = {*o.lambda};
    if (o.cgtol) cfg.ocp.cgtol = *o.cgtol;
    if (!o.mode.empty()) cfg.ocp.modes = {sk::ocp_mode_from_string(o.mode)};
    if (!o.inner.empty() || !o.inner_precond.empty()) {
        sk::SolverConfig inner =
            cfg.ocp.inners.empty() ? sk::SolverConfig{.method = sk::Method::Direct}
                                   : cfg.ocp.inners.front();
        if (!o.inner.empty()) inner.method = sk::method_from_string(o.inner);
        if (!o.inner_precond.empty())
            inner.precond.kind = sk::precond_from_string(o.inner_precond);
        cfg.ocp.inners = {inner};
    }
    if (!o.out.empty()) cfg.output = o.out;
    if (!o.format.empty()) {
        if (o.format == "csv") cfg.format = sk::OutputFormat::Csv;
        else if (o.format == "json") cfg.format = sk::OutputFormat::Json;
        else throw sk::ConfigError("unknown format '" + o.format + "'");
    }
    if (o.seed) cfg.seed = *o.seed;
    if (!o.matrix.empty()) cfg.matrix_path = o.matrix;
    if (!o.rhs.empty()) cfg.rhs_path = o.rhs;
    if (!o.rhs_kind.empty()) cfg.rhs_kind = o.rhs_kind;
    return cfg;
}

int run(const sk::ExperimentConfig& cfg) {
    const sk::RunResult result = sk::run_experiment(cfg);
    if (cfg.output.empty()) {
        if (cfg.format == sk::OutputFormat::Json) sk::write_json(std::cout, result.table);
        else sk::write_csv(std::cout, result.table);
    } else {
        sk::write_table(cfg.output, result.table, cfg.format == sk::OutputFormat::Json);
    }
    return result.any_failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structure-exploiting Krylov solver benchmarks"};
    app.require_subcommand(1);

    CliOverrides cond_o, solve_o, ocp_o;

    auto* cond = app.add_subcommand("cond", "condition-number refinement study");
    add_common_options(cond, cond_o);
    cond->add_option("--targets", cond_o.targets, "comma list: A,H,S,HinvA,PinvA,W,HWinvW,MpinvW");
    cond->add_option("--precond", cond_o.precond, "preconditioner for the PinvA target");
    cond->add_option("--drop-tol", cond_o.drop_tol, "drop tolerance for incomplete factorizations");
    cond->add_option("--inner", cond_o.inner, "inner solver for Schur targets");

    auto* solve = app.add_subcommand("solve", "linear solver benchmark");
    add_common_options(solve, solve_o);
    solve->add_option("--method", solve_o.method, "cg|gmres|widlund|rapoport|direct");
    solve->add_option("--precond", solve_o.precond, "identity|jacobi|exact_sym|ichol|ilu|multigrid");
    solve->add_option("--drop-tol", solve_o.drop_tol, "drop tolerance for incomplete factorizations");
    solve->add_option("--tol", solve_o.tol, "relative residual target");
    solve->add_option("--max-iter", solve_o.max_iter, "iteration cap");
    solve->add_option("--restart", solve_o.restart, "GMRES restart length");
    solve->add_option("--rhs-kind", solve_o.rhs_kind, "random|ones");

    auto* ocp = app.add_subcommand("ocp", "optimal-control pipeline benchmark");
    add_common_options(ocp, ocp_o);
    ocp->add_option("--mode", ocp_o.mode, "condensed|ppcg|schur");
    ocp->add_option("--lambda", ocp_o.lambda, "regularization parameter");
    ocp->add_option("--cgtol", ocp_o.cgtol, "outer CG tolerance");
    ocp->add_option("--inner", ocp_o.inner, "inner solver: direct|gmres|widlund|rapoport|cg");
    ocp->add_option("--inner-precond", ocp_o.inner_precond, "preconditioner for the inner solver");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cond->parsed()) return run(build_config(cond_o, sk::ExperimentKind::Cond));
        if (solve->parsed()) return run(build_config(solve_o, sk::ExperimentKind::Solve));
        if (ocp->parsed()) return run(build_config(ocp_o, sk::ExperimentKind::Ocp));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
