/// @file condition.hpp
/// @brief Spectral-norm condition number estimation.
///
/// kappa2 is the ratio of extreme singular values over the numerically
/// nonzero spectrum: singular values below rank_tol * sigma_max are treated
/// as a structural nullspace (odd-dimension skew parts and Schur complements
/// with pressure nullspaces are singular by construction) and flagged.

#ifndef SPLITKRYLOV_SPECTRA_CONDITION_HPP
#define SPLITKRYLOV_SPECTRA_CONDITION_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "../core/banded.hpp"
#include "../core/linear_operator.hpp"
#include "../core/random.hpp"
#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "dense_oracle.hpp"

namespace splitkrylov {

enum class SpectrumMethod { Auto, Dense, PowerIteration };

inline const char* to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::Auto: return "auto";
        case SpectrumMethod::Dense: return "dense";
        case SpectrumMethod::PowerIteration: return "power";
    }
    return "?";
}

struct SpectrumReport {
    real_t sigma_max = 0.0;
    real_t sigma_min = 0.0; // smallest numerically nonzero singular value
    real_t kappa2 = 1.0;
    std::optional<real_t> lambda_width;
    index_t n = 0;
    SpectrumMethod method = SpectrumMethod::Dense;
    index_t effective_rank = 0;
    bool rank_deficient = false;
};

struct Cond2Config {
    SpectrumMethod method = SpectrumMethod::Auto;
    real_t rank_tol = 1e-10;
    // power iteration: Rayleigh estimate stable to power_tol over
    // power_stable_sweeps consecutive sweeps, capped at power_max_sweeps
    real_t power_tol = 1e-8;
    int power_stable_sweeps = 10;
    int power_max_sweeps = 5000;
    index_t dense_cap = kDenseOracleCap;
    std::uint64_t seed = 0x5eed;
    // configured solver for inverse iteration (sigma_min); both directions
    // are needed since sigma_min(op)^2 = lambda_min(op^T op)
    std::function<Vector(const Vector&)> solve;
    std::function<Vector(const Vector&)> solve_adjoint;
};

namespace detail {

/// Largest eigenvalue of the SPD map `apply` by power iteration.
inline real_t power_extreme(const std::function<Vector(const Vector&)>& apply, index_t n,
                            const Cond2Config& cfg) {
    SplitMix64 rng(cfg.seed);
    Vector v = random_vector(rng, n);
    real_t vnorm = norm2(v);
    scale(v, 1.0 / vnorm);
    real_t estimate = 0.0;
    int stable = 0;
    for (int sweep = 0; sweep < cfg.power_max_sweeps; ++sweep) {
        Vector w = apply(v);
        const real_t rayleigh = dot(v, w);
        const real_t wnorm = norm2(w);
        if (wnorm == 0.0) return 0.0;
        scale(w, 1.0 / wnorm);
        v = std::move(w);
        const real_t change = std::abs(rayleigh - estimate) / std::max<real_t>(std::abs(rayleigh), 1e-300);
        estimate = rayleigh;
        stable = change < cfg.power_tol ? stable + 1 : 0;
        if (stable >= cfg.power_stable_sweeps) break;
    }
    return estimate;
}

} // namespace detail

/// Condition number of a (square, nonsingular up to structural nullspace)
/// operator. Dense route for n <= dense_cap, power iteration above; the
/// power route needs the operator adjoint and, for sigma_min, a configured
/// solver.
inline SpectrumReport cond2(const LinearOperator& op, const Cond2Config& cfg = {}) {
    if (op.dim_in != op.dim_out) throw DimensionError("cond2: operator must be square");
    SpectrumReport report;
    report.n = op.dim_in;
    SpectrumMethod method = cfg.method;
    if (method == SpectrumMethod::Auto)
        method = op.dim_in <= cfg.dense_cap ? SpectrumMethod::Dense
                                            : SpectrumMethod::PowerIteration;
    report.method = method;

    if (method == SpectrumMethod::Dense) {
        const auto sv = dense_singular_values(materialize(op));
        report.sigma_max = sv.empty() ? 0.0 : sv.front();
        const real_t cutoff = cfg.rank_tol * report.sigma_max;
        report.sigma_min = report.sigma_max;
        report.effective_rank = 0;
        for (real_t s : sv) {
            if (s > cutoff) {
                report.sigma_min = s;
                ++report.effective_rank;
            }
        }
        report.rank_deficient = report.effective_rank < report.n;
        report.kappa2 = report.sigma_min > 0 ? report.sigma_max / report.sigma_min
                                             : std::numeric_limits<real_t>::infinity();
        return report;
    }

    if (!op.has_adjoint())
        throw StructureError("cond2: power iteration needs the operator adjoint");
    const auto normal_apply = [&op](const Vector& v) { return op.apply_adjoint(op.apply(v)); };
    const real_t sigma_max_sq = detail::power_extreme(normal_apply, op.dim_in, cfg);
    report.sigma_max = std::sqrt(std::max<real_t>(0.0, sigma_max_sq));

    if (!cfg.solve || !cfg.solve_adjoint)
        throw ConfigError("cond2: sigma_min unavailable (no solver configured for inverse iteration)");
    const auto inverse_apply = [&cfg](const Vector& v) { return cfg.solve(cfg.solve_adjoint(v)); };
    const real_t inv_sigma_min_sq = detail::power_extreme(inverse_apply, op.dim_in, cfg);
    if (!(inv_sigma_min_sq > 0))
        throw SolveError("cond2: inverse iteration failed to produce a positive estimate");
    report.sigma_min = 1.0 / std::sqrt(inv_sigma_min_sq);
    report.effective_rank = report.n;
    report.kappa2 = report.sigma_max / report.sigma_min;
    return report;
}

/// Convenience overload: banded-LU inverse iteration for plain matrices.
inline SpectrumReport cond2(const SparseMatrix& a, Cond2Config cfg = {}) {
    if (!a.is_square()) throw DimensionError("cond2: matrix must be square");
    SpectrumMethod method = cfg.method;
    if (method == SpectrumMethod::Auto)
        method = a.n_rows <= cfg.dense_cap ? SpectrumMethod::Dense : SpectrumMethod::PowerIteration;
    if (method == SpectrumMethod::PowerIteration && !cfg.solve) {
        auto lu = std::make_shared<BandedLU>(a);
        auto lut = std::make_shared<BandedLU>(transpose(a));
        cfg.solve = [lu](const Vector& v) { return lu->solve(v); };
        cfg.solve_adjoint = [lut](const Vector& v) { return lut->solve(v); };
    }
    cfg.method = method;
    return cond2(operator_from_matrix_ref(a), cfg);
}

} // namespace splitkrylov

#endif
