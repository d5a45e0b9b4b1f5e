/// @file kkt.hpp
/// @brief First-order optimality system assembly and residuals.

#ifndef SPLITKRYLOV_OPTCTL_KKT_HPP
#define SPLITKRYLOV_OPTCTL_KKT_HPP

#include <cmath>

#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "ocp_problem.hpp"

namespace splitkrylov {

struct KktSystem {
    SparseMatrix matrix; // symmetric 3x3 block matrix
    Vector rhs;          // (C^T y_ref, lambda u_ref, f)
};

inline Vector concat3(const Vector& a, const Vector& b, const Vector& c) {
    Vector out;
    out.reserve(a.size() + b.size() + c.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

struct Blocks3 {
    Vector x, u, p;
};

inline Blocks3 split3(const Vector& v, index_t n, index_t m, index_t q) {
    if (static_cast<index_t>(v.size()) != n + m + q)
        throw DimensionError("split3: length mismatch");
    Blocks3 b;
    b.x.assign(v.begin(), v.begin() + n);
    b.u.assign(v.begin() + n, v.begin() + n + m);
    b.p.assign(v.begin() + n + m, v.end());
    return b;
}

/// [[C^T C, 0, A^T], [0, lambda I, -B^T], [A, -B, 0]] with rhs
/// (C^T y_ref, lambda u_ref, f). The matrix is symmetric by construction.
inline KktSystem assemble_kkt(const OcpProblem& ocp) {
    ocp.validate();
    const index_t n = ocp.n(), m = ocp.m(), q = ocp.q();
    (void)q;
    const SparseMatrix ctc = matmul(transpose(ocp.c_out), ocp.c_out);
    const SparseMatrix at = transpose(ocp.a_split.a);
    const SparseMatrix bt = transpose(ocp.b_in);
    const SparseMatrix lam = SparseMatrix::identity(m, ocp.lambda_reg);

    KktSystem sys;
    sys.matrix = block_matrix({n, m, n}, {n, m, n},
                              {{0, 0, &ctc, 1.0},
                               {0, 2, &at, 1.0},
                               {1, 1, &lam, 1.0},
                               {1, 2, &bt, -1.0},
                               {2, 0, &ocp.a_split.a, 1.0},
                               {2, 1, &ocp.b_in, -1.0}});
    sys.rhs = concat3(spmv_transpose(ocp.c_out, ocp.y_ref), scaled(ocp.u_ref, ocp.lambda_reg),
                      ocp.f);
    return sys;
}

/// Euclidean norm of the optimality-system residual at (x, u, p).
inline real_t kkt_residual(const OcpProblem& ocp, const Vector& x, const Vector& u,
                           const Vector& p) {
    Vector row1 = spmv_transpose(ocp.c_out, spmv(ocp.c_out, x));
    axpy(1.0, spmv_transpose(ocp.a_split.a, p), row1);
    axpy(-1.0, spmv_transpose(ocp.c_out, ocp.y_ref), row1);

    Vector row2 = scaled(u, ocp.lambda_reg);
    axpy(-1.0, spmv_transpose(ocp.b_in, p), row2);
    axpy(-ocp.lambda_reg, ocp.u_ref, row2);

    Vector row3 = spmv(ocp.a_split.a, x);
    axpy(-1.0, spmv(ocp.b_in, u), row3);
    axpy(-1.0, ocp.f, row3);

    return std::sqrt(dot(row1, row1) + dot(row2, row2) + dot(row3, row3));
}

inline real_t kkt_rhs_norm(const OcpProblem& ocp) {
    const Vector r1 = spmv_transpose(ocp.c_out, ocp.y_ref);
    return std::sqrt(dot(r1, r1) +
                     ocp.lambda_reg * ocp.lambda_reg * dot(ocp.u_ref, ocp.u_ref) +
                     dot(ocp.f, ocp.f));
}

} // namespace splitkrylov

#endif
