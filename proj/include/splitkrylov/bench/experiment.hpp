/// @file experiment.hpp
/// @brief Experiment manifests: JSON config for the benchmark CLI.
///
/// A config is a single JSON document; command-line flags override file
/// fields so manifests stay reproducible.

#ifndef SPLITKRYLOV_BENCH_EXPERIMENT_HPP
#define SPLITKRYLOV_BENCH_EXPERIMENT_HPP

#include <json.hpp>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "../core/types.hpp"
#include "../discretize/problem_spec.hpp"
#include "../krylov/solver_config.hpp"
#include "../spectra/refinement_study.hpp"

namespace splitkrylov {

enum class ExperimentKind { Cond, Solve, Ocp };
enum class OutputFormat { Csv, Json };
enum class OcpMode { Condensed, Ppcg, Schur };

inline const char* to_string(OcpMode m) {
    switch (m) {
        case OcpMode::Condensed: return "condensed";
        case OcpMode::Ppcg: return "ppcg";
        case OcpMode::Schur: return "schur";
    }
    return "?";
}

inline OcpMode ocp_mode_from_string(const std::string& s) {
    if (s == "condensed") return OcpMode::Condensed;
    if (s == "ppcg") return OcpMode::Ppcg;
    if (s == "schur") return OcpMode::Schur;
    throw ConfigError("unknown ocp mode '" + s + "'");
}

inline Method method_from_string(const std::string& s) {
    if (s == "cg") return Method::CG;
    if (s == "gmres") return Method::GMRES;
    if (s == "widlund") return Method::Widlund;
    if (s == "rapoport") return Method::Rapoport;
    if (s == "direct") return Method::Direct;
    throw ConfigError("unknown method '" + s + "'");
}

inline PrecondKind precond_from_string(const std::string& s) {
    if (s == "identity" || s == "none") return PrecondKind::Identity;
    if (s == "jacobi") return PrecondKind::Jacobi;
    if (s == "exact_sym") return PrecondKind::ExactSym;
    if (s == "ichol") return PrecondKind::IncompleteCholesky;
    if (s == "ilu") return PrecondKind::IncompleteLU;
    if (s == "multigrid") return PrecondKind::GeoMultigrid;
    throw ConfigError("unknown preconditioner '" + s + "'");
}

inline ProblemKind problem_kind_from_string(const std::string& s) {
    if (s == "advdiff") return ProblemKind::AdvDiff;
    if (s == "stokes") return ProblemKind::Stokes;
    if (s == "oseen") return ProblemKind::Oseen;
    if (s == "wave") return ProblemKind::Wave;
    if (s == "beam") return ProblemKind::Beam;
    throw ConfigError("unknown problem kind '" + s + "'");
}

struct OcpExperiment {
    std::vector<OcpMode> modes = {OcpMode::Condensed};
    std::vector<real_t> lambdas = {0.1};
    real_t cgtol = 1e-4;
    std::optional<real_t> inner_tol;
    std::vector<SolverConfig> inners;
    real_t source = 10.0; // constant source term magnitude
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Cond;
    ProblemSpec problem;
    bool problem_given = false;
    std::string matrix_path; // Matrix Market ingestion (alternative to problem)
    std::string rhs_path;
    int refinements = 1;
    std::vector<StudyTarget> targets = {StudyTarget::H, StudyTarget::S, StudyTarget::HinvA};
    std::vector<SolverConfig> solvers;
    std::string rhs_kind = "random"; // or "ones"
    OcpExperiment ocp;
    std::string output; // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 1;

    void validate() const {
        if (refinements < 1) throw ConfigError("config: refinements must be >= 1");
        const bool file_mode = !matrix_path.empty();
        if (file_mode && problem_given)
            throw ConfigError("config: give either a built-in problem or matrix files, not both");
    }
};

namespace detail {

inline SolverConfig parse_solver(const nlohmann::json& j) {
    SolverConfig cfg;
    if (j.contains("method")) cfg.method = method_from_string(j["method"].get<std::string>());
    if (j.contains("tol")) cfg.tol = j["tol"].get<real_t>();
    if (j.contains("max_iter")) cfg.max_iter = j["max_iter"].get<int>();
    if (j.contains("restart")) cfg.restart = j["restart"].get<int>();
    if (j.contains("precond")) cfg.precond.kind = precond_from_string(j["precond"].get<std::string>());
    if (j.contains("drop_tol")) cfg.precond.drop_tol = j["drop_tol"].get<real_t>();
    if (j.contains("cycles")) cfg.precond.cycles = j["cycles"].get<int>();
    if (j.contains("levels")) cfg.precond.levels = j["levels"].get<int>();
    if (j.contains("smoother_weight"))
        cfg.precond.smoother_weight = j["smoother_weight"].get<real_t>();
    if (j.contains("reorthogonalize")) cfg.reorthogonalize = j["reorthogonalize"].get<bool>();
    return cfg;
}

inline ProblemSpec parse_problem(const nlohmann::json& j) {
    ProblemSpec spec;
    if (j.contains("kind")) spec.kind = problem_kind_from_string(j["kind"].get<std::string>());
    if (j.contains("dim")) spec.dim = j["dim"].get<int>();
    if (j.contains("cells")) spec.cells_per_side = j["cells"].get<index_t>();
    if (j.contains("nu")) spec.nu = j["nu"].get<real_t>();
    if (j.contains("advection")) {
        auto b = j["advection"];
        for (std::size_t d = 0; d < 3 && d < b.size(); ++d)
            spec.advection[d] = b[d].get<real_t>();
    }
    if (j.contains("reaction")) spec.reaction = j["reaction"].get<real_t>();
    if (j.contains("s1")) spec.s1 = j["s1"].get<real_t>();
    if (j.contains("s2")) spec.s2 = j["s2"].get<real_t>();
    if (j.contains("rho")) spec.rho = j["rho"].get<real_t>();
    if (j.contains("eta")) spec.eta = j["eta"].get<real_t>();
    if (j.contains("mu")) spec.mu = j["mu"].get<real_t>();
    if (j.contains("box")) {
        auto b = j["box"];
        for (std::size_t d = 0; d < 3 && d < b.size(); ++d)
            spec.domain_box[d] = b[d].get<real_t>();
    }
    return spec;
}

} // namespace detail

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("experiment")) {
        const auto s = j["experiment"].get<std::string>();
        if (s == "cond") cfg.experiment = ExperimentKind::Cond;
        else if (s == "solve") cfg.experiment = ExperimentKind::Solve;
        else if (s == "ocp") cfg.experiment = ExperimentKind::Ocp;
        else throw ConfigError("unknown experiment '" + s + "'");
    }
    if (j.contains("problem")) {
        cfg.problem = detail::parse_problem(j["problem"]);
        cfg.problem_given = true;
    }
    if (j.contains("matrix")) cfg.matrix_path = j["matrix"].get<std::string>();
    if (j.contains("rhs")) cfg.rhs_path = j["rhs"].get<std::string>();
    if (j.contains("refinements")) cfg.refinements = j["refinements"].get<int>();
    if (j.contains("targets")) {
        cfg.targets.clear();
        for (const auto& t : j["targets"])
            cfg.targets.push_back(study_target_from_string(t.get<std::string>()));
    }
    if (j.contains("solver")) cfg.solvers = {detail::parse_solver(j["solver"])};
    if (j.contains("solvers")) {
        cfg.solvers.clear();
        for (const auto& s : j["solvers"]) cfg.solvers.push_back(detail::parse_solver(s));
    }
    if (j.contains("rhs_kind")) cfg.rhs_kind = j["rhs_kind"].get<std::string>();
    if (j.contains("ocp")) {
        const auto& o = j["ocp"];
        if (o.contains("mode")) cfg.ocp.modes = {ocp_mode_from_string(o["mode"].get<std::string>())};
        if (o.contains("modes")) {
            cfg.ocp.modes.clear();
            for (const auto& m : o["modes"])
                cfg.ocp.modes.push_back(ocp_mode_from_string(m.get<std::string>()));
        }
        if (o.contains("lambda")) cfg.ocp.lambdas = {o["lambda"].get<real_t>()};
        if (o.contains("lambdas")) {
            cfg.ocp.lambdas.clear();
            for (const auto& l : o["lambdas"]) cfg.ocp.lambdas.push_back(l.get<real_t>());
        }
        if (o.contains("cgtol")) cfg.ocp.cgtol = o["cgtol"].get<real_t>();
        if (o.contains("inner_tol")) cfg.ocp.inner_tol = o["inner_tol"].get<real_t>();
        if (o.contains("inner")) cfg.ocp.inners = {detail::parse_solver(o["inner"])};
        if (o.contains("inners")) {
            cfg.ocp.inners.clear();
            for (const auto& s : o["inners"]) cfg.ocp.inners.push_back(detail::parse_solver(s));
        }
        if (o.contains("source")) cfg.ocp.source = o["source"].get<real_t>();
    }
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("format")) {
        const auto f = j["format"].get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::Csv;
        else if (f == "json") cfg.format = OutputFormat::Json;
        else throw ConfigError("unknown format '" + f + "'");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("config '" + path + "': " + e.what());
    }
    return parse_experiment_config(j);
}

} // namespace splitkrylov

#endif
