/// @file lanczos.hpp
/// @brief Lanczos kernel for H^{-1}S in the H-inner product.
///
/// Builds the relation H^{-1}S V_k = V_{k+1} T_{k+1,k} with V H-orthonormal.
/// H-skewness of H^{-1}S makes T tridiagonal with (numerically) zero
/// diagonal: T(k,k) = alpha_k ~ 0, T(k+1,k) = beta_k > 0, T(k-1,k) = -beta_{k-1}.

#ifndef SPLITKRYLOV_KRYLOV_LANCZOS_HPP
#define SPLITKRYLOV_KRYLOV_LANCZOS_HPP

#include <cmath>
#include <vector>

#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "../precond/preconditioner.hpp"

namespace splitkrylov {

struct LanczosState {
    std::vector<Vector> v_basis;  // H-orthonormal basis vectors
    std::vector<real_t> alpha;    // T(k,k), one per column
    std::vector<real_t> beta;     // T(k+1,k), one per completed column
    real_t b_hat_norm = 0.0;      // ||H^{-1} b||_H
    bool breakdown = false;       // exact-subspace signal, not an error
};

/// Incremental driver; widlund_solve/rapoport_solve extend one column per
/// outer iteration.
class HLanczosProcess {
  public:
    HLanczosProcess(const SplitOperator& split, const Preconditioner& h_solver, const Vector& b,
                    bool reorthogonalize = false)
        : split_(split), h_solver_(h_solver), reorthogonalize_(reorthogonalize) {
        Vector b_hat = h_solver_.apply(b);
        Vector hb = spmv(split_.h, b_hat);
        state_.b_hat_norm = std::sqrt(std::max<real_t>(0.0, dot(b_hat, hb)));
        if (state_.b_hat_norm > 0.0) {
            state_.v_basis.push_back(scaled(b_hat, 1.0 / state_.b_hat_norm));
            h_times_basis_.push_back(scaled(hb, 1.0 / state_.b_hat_norm));
        } else {
            state_.breakdown = true;
        }
    }

    const LanczosState& state() const { return state_; }

    /// Runs one Lanczos step; returns false on (lucky) breakdown.
    bool step() {
        if (state_.breakdown) return false;
        const std::size_t k = state_.v_basis.size() - 1;
        Vector w = h_solver_.apply(spmv(split_.s, state_.v_basis[k]));
        const real_t alpha = dot(w, h_times_basis_[k]);
        axpy(-alpha, state_.v_basis[k], w);
        if (k >= 1) axpy(state_.beta[k - 1], state_.v_basis[k - 1], w); // T(k-1,k) = -beta_{k-1}
        if (reorthogonalize_) {
            for (std::size_t i = 0; i <= k; ++i)
                axpy(-dot(w, h_times_basis_[i]), state_.v_basis[i], w);
        }
        Vector hw = spmv(split_.h, w);
        const real_t beta = std::sqrt(std::max<real_t>(0.0, dot(w, hw)));
        state_.alpha.push_back(alpha);
        if (beta < 1e-14 * state_.b_hat_norm) {
            state_.breakdown = true;
            return false;
        }
        state_.beta.push_back(beta);
        state_.v_basis.push_back(scaled(w, 1.0 / beta));
        h_times_basis_.push_back(scaled(hw, 1.0 / beta));
        return true;
    }

  private:
    const SplitOperator& split_;
    const Preconditioner& h_solver_;
    bool reorthogonalize_;
    LanczosState state_;
    std::vector<Vector> h_times_basis_; // H v_k, cached for H-inner products
};

/// Runs k Lanczos steps (fewer on lucky breakdown) and returns the state.
/// The h_solver must be an exact symmetric solve; the short recurrence
/// requires exact symmetry.
inline LanczosState h_lanczos(const SplitOperator& split, const Preconditioner& h_solver,
                              const Vector& b, int k, bool reorthogonalize = false) {
    if (!h_solver.is_symmetric())
        throw StructureError("h_lanczos: the H-solver must be symmetric");
    HLanczosProcess proc(split, h_solver, b, reorthogonalize);
    for (int step = 0; step < k; ++step)
        if (!proc.step()) break;
    LanczosState state = proc.state();
    // on breakdown the trailing column never produced a basis vector; report
    // only completed columns so T is always (k+1) x k shaped
    if (state.alpha.size() > state.beta.size()) state.alpha.resize(state.beta.size());
    return state;
}

} // namespace splitkrylov

#endif
