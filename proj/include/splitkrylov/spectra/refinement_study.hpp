/// @file refinement_study.hpp
/// @brief Condition-number tables across mesh refinements.

#ifndef SPLITKRYLOV_SPECTRA_REFINEMENT_STUDY_HPP
#define SPLITKRYLOV_SPECTRA_REFINEMENT_STUDY_HPP

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "../core/linear_operator.hpp"
#include "../core/types.hpp"
#include "../discretize/assemble.hpp"
#include "../discretize/schur.hpp"
#include "../krylov/operator_solver.hpp"
#include "condition.hpp"
#include "spectral_width.hpp"

namespace splitkrylov {

enum class StudyTarget { A, H, S, HinvA, PinvA, W, HWinvW, MpinvW };

inline const char* to_string(StudyTarget t) {
    switch (t) {
        case StudyTarget::A: return "A";
        case StudyTarget::H: return "H";
        case StudyTarget::S: return "S";
        case StudyTarget::HinvA: return "HinvA";
        case StudyTarget::PinvA: return "PinvA";
        case StudyTarget::W: return "W";
        case StudyTarget::HWinvW: return "HWinvW";
        case StudyTarget::MpinvW: return "MpinvW";
    }
    return "?";
}

inline StudyTarget study_target_from_string(const std::string& s) {
    if (s == "A") return StudyTarget::A;
    if (s == "H") return StudyTarget::H;
    if (s == "S") return StudyTarget::S;
    if (s == "HinvA") return StudyTarget::HinvA;
    if (s == "PinvA") return StudyTarget::PinvA;
    if (s == "W") return StudyTarget::W;
    if (s == "HWinvW") return StudyTarget::HWinvW;
    if (s == "MpinvW") return StudyTarget::MpinvW;
    throw ConfigError("unknown study target '" + s + "'");
}

struct StudyRow {
    int level = 0;
    real_t h = 0.0;
    index_t dofs = 0;
    StudyTarget target = StudyTarget::A;
    real_t kappa2 = 0.0;
    std::optional<real_t> lambda_width;
    SpectrumMethod method = SpectrumMethod::Dense;
    std::string status = "ok";
};

struct StudyConfig {
    int levels = 3;
    std::vector<StudyTarget> targets = {StudyTarget::H, StudyTarget::S, StudyTarget::HinvA};
    PrecondSpec precond{.kind = PrecondKind::IncompleteCholesky, .drop_tol = 1e-2}; // P in PinvA
    SolverConfig inner; // a11 solves behind W-type targets
    Cond2Config cond;
    bool compute_lambda_width = true; // on HinvA rows
};

namespace detail {

/// kappa over the numerically nonzero spectrum of a dense map.
inline SpectrumReport dense_rank_tolerant(const Eigen::MatrixXd& m, const Cond2Config& cfg) {
    SpectrumReport report;
    report.n = m.rows();
    report.method = SpectrumMethod::Dense;
    const auto sv = dense_singular_values(m);
    report.sigma_max = sv.empty() ? 0.0 : sv.front();
    const real_t cutoff = cfg.rank_tol * report.sigma_max;
    report.sigma_min = report.sigma_max;
    for (real_t s : sv)
        if (s > cutoff) {
            report.sigma_min = s;
            ++report.effective_rank;
        }
    report.rank_deficient = report.effective_rank < report.n;
    report.kappa2 = report.sigma_min > 0 ? report.sigma_max / report.sigma_min
                                         : std::numeric_limits<real_t>::infinity();
    return report;
}

/// Preconditioned operator P^{-1}A as a matrix-free map with adjoint
/// (valid for symmetric preconditioners: (P^{-1}A)^T = A^T P^{-1}).
inline LinearOperator preconditioned_operator(const std::shared_ptr<SparseMatrix>& a,
                                              const std::shared_ptr<Preconditioner>& p) {
    return make_operator(
        a->n_cols, a->n_rows,
        [a, p](const Vector& x) { return p->apply(spmv(*a, x)); },
        [a, p](const Vector& y) { return spmv_transpose(*a, p->apply(y)); });
}

inline SpectrumReport split_target_report(const SplitOperator& op, StudyTarget target,
                                          const StudyConfig& cfg,
                                          std::optional<real_t>& lambda_out) {
    switch (target) {
        case StudyTarget::A: return cond2(op.a, cfg.cond);
        case StudyTarget::H: return cond2(op.h, cfg.cond);
        case StudyTarget::S: return cond2(op.s, cfg.cond);
        case StudyTarget::HinvA: {
            auto a = std::make_shared<SparseMatrix>(op.a);
            auto h_solver = std::make_shared<Preconditioner>(
                Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h));
            auto report = cond2(preconditioned_operator(a, h_solver), cfg.cond);
            if (cfg.compute_lambda_width) {
                lambda_out = spectral_width(op, *h_solver, cfg.cond);
                report.lambda_width = lambda_out;
            }
            return report;
        }
        case StudyTarget::PinvA: {
            auto a = std::make_shared<SparseMatrix>(op.a);
            auto p = std::make_shared<Preconditioner>(
                Preconditioner::build(cfg.precond, op.h, std::nullopt));
            return cond2(preconditioned_operator(a, p), cfg.cond);
        }
        default:
            throw ConfigError(std::string("target ") + to_string(target) +
                              " needs a block (Schur) problem");
    }
}

inline SpectrumReport block_target_report(const BlockSystem& blocks, StudyTarget target,
                                          const StudyConfig& cfg,
                                          std::optional<real_t>& lambda_out) {
    switch (target) {
        case StudyTarget::A: return cond2(blocks.a11.a, cfg.cond);
        case StudyTarget::H: return cond2(blocks.a11.h, cfg.cond);
        case StudyTarget::S: return cond2(blocks.a11.s, cfg.cond);
        case StudyTarget::HinvA:
        case StudyTarget::PinvA: {
            SplitOperator op = blocks.a11;
            return split_target_report(op, target, cfg, lambda_out);
        }
        case StudyTarget::W: return cond2(schur_operator(blocks, cfg.inner), cfg.cond);
        case StudyTarget::HWinvW: {
            const Eigen::MatrixXd w = materialize(schur_operator(blocks, cfg.inner));
            const Eigen::MatrixXd hw = 0.5 * (w + w.transpose());
            // pseudo-inverse of the symmetric part on its numerical range
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hw);
            const auto& ev = es.eigenvalues();
            const real_t cutoff = cfg.cond.rank_tol * ev.cwiseAbs().maxCoeff();
            Eigen::VectorXd inv = ev;
            for (Eigen::Index i = 0; i < inv.size(); ++i)
                inv(i) = std::abs(ev(i)) > cutoff ? 1.0 / ev(i) : 0.0;
            const Eigen::MatrixXd hw_pinv =
                es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
            return dense_rank_tolerant(hw_pinv * w, cfg.cond);
        }
        case StudyTarget::MpinvW: {
            const Eigen::MatrixXd w = materialize(schur_operator(blocks, cfg.inner));
            Eigen::MatrixXd scaled = w;
            for (index_t i = 0; i < blocks.mass_p.n_rows; ++i)
                scaled.row(i) /= blocks.mass_p.value_at(i, i);
            return dense_rank_tolerant(scaled, cfg.cond);
        }
    }
    throw ConfigError("unknown study target");
}

} // namespace detail

/// Assembles `levels` refinements of the problem (cells doubled per level)
/// and reports kappa2 per (level, target). Estimation failures are recorded
/// per row in the status column rather than aborting the study.
inline std::vector<StudyRow> refinement_study(const ProblemSpec& spec0, const StudyConfig& cfg) {
    if (cfg.levels < 1) throw ConfigError("refinement_study: levels must be >= 1");
    std::vector<StudyRow> rows;
    for (int level = 0; level < cfg.levels; ++level) {
        const ProblemSpec spec = spec0.refined(level);
        std::optional<SplitOperator> split_op;
        std::optional<BlockSystem> blocks;
        std::string assembly_error;
        try {
            switch (spec.kind) {
                case ProblemKind::AdvDiff: split_op = assemble_advdiff(spec); break;
                case ProblemKind::Stokes: split_op = assemble_stokes(spec); break;
                case ProblemKind::Wave: split_op = assemble_wave(spec); break;
                case ProblemKind::Oseen: blocks = assemble_oseen(spec); break;
                case ProblemKind::Beam: blocks = assemble_beam(spec); break;
            }
        } catch (const Error& e) {
            assembly_error = e.what();
        }
        for (StudyTarget target : cfg.targets) {
            StudyRow row;
            row.level = level;
            row.h = spec.mesh_width();
            row.target = target;
            if (!assembly_error.empty()) {
                row.status = std::string("assembly: ") + assembly_error;
                rows.push_back(std::move(row));
                continue;
            }
            try {
                std::optional<real_t> lambda;
                SpectrumReport report;
                if (split_op) {
                    row.dofs = split_op->dim();
                    report = detail::split_target_report(*split_op, target, cfg, lambda);
                } else {
                    row.dofs = blocks->a11.dim() + blocks->a12.n_cols;
                    report = detail::block_target_report(*blocks, target, cfg, lambda);
                }
                row.kappa2 = report.kappa2;
                row.lambda_width = report.lambda_width;
                row.method = report.method;
            } catch (const Error& e) {
                row.status = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Least-squares slope of log(kappa) against log(h) over the given rows.
inline real_t loglog_slope(const std::vector<StudyRow>& rows, StudyTarget target) {
    real_t sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& r : rows) {
        if (r.target != target || r.status != "ok") continue;
        const real_t x = std::log(r.h);
        const real_t y = std::log(r.kappa2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw ConfigError("loglog_slope: need at least two usable rows");
    return (static_cast<real_t>(count) * sxy - sx * sy) /
           (static_cast<real_t>(count) * sxx - sx * sx);
}

} // namespace splitkrylov

#endif
