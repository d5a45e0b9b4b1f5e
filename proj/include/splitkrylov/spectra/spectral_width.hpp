/// @file spectral_width.hpp
/// @brief Spectral half-width lambda of H^{-1}S: sigma(H^{-1}S) in i[-lambda, lambda].

#ifndef SPLITKRYLOV_SPECTRA_SPECTRAL_WIDTH_HPP
#define SPLITKRYLOV_SPECTRA_SPECTRAL_WIDTH_HPP

#include <cmath>

#include "../core/random.hpp"
#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "../precond/preconditioner.hpp"
#include "condition.hpp"

namespace splitkrylov {

/// lambda = sqrt(largest eigenvalue of -(H^{-1}S)^2), computed by power
/// iteration in the H-inner product (the operator is H-self-adjoint and
/// positive semidefinite there). The h_solver must be exact-symmetric.
inline real_t spectral_width(const SplitOperator& split, const Preconditioner& h_solver,
                             const Cond2Config& cfg = {}) {
    if (!h_solver.is_symmetric())
        throw StructureError("spectral_width: h_solver must be symmetric");
    const index_t n = split.dim();
    SplitMix64 rng(cfg.seed);
    Vector v = random_vector(rng, n);

    auto h_normalize = [&](Vector& x) {
        const real_t nrm = std::sqrt(std::max<real_t>(0.0, dot(x, spmv(split.h, x))));
        if (nrm == 0.0) return false;
        scale(x, 1.0 / nrm);
        return true;
    };
    if (!h_normalize(v)) return 0.0;

    real_t estimate = 0.0;
    int stable = 0;
    for (int sweep = 0; sweep < cfg.power_max_sweeps; ++sweep) {
        // w = -(H^{-1}S)^2 v
        Vector w = h_solver.apply(spmv(split.s, v));
        w = h_solver.apply(spmv(split.s, w));
        scale(w, -1.0);
        const real_t rayleigh = dot(w, spmv(split.h, v)); // <Gv, v>_H with v H-normalized
        if (!h_normalize(w)) return 0.0;                  // S annihilated v: width 0
        v = std::move(w);
        const real_t change =
            std::abs(rayleigh - estimate) / std::max<real_t>(std::abs(rayleigh), 1e-300);
        estimate = rayleigh;
        stable = change < cfg.power_tol ? stable + 1 : 0;
        if (stable >= cfg.power_stable_sweeps) break;
    }
    return std::sqrt(std::max<real_t>(0.0, estimate));
}

} // namespace splitkrylov

#endif
