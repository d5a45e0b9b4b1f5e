#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "splitkrylov/core/banded.hpp"
#include "splitkrylov/core/sparse_matrix.hpp"
#include "splitkrylov/core/split_operator.hpp"
#include "splitkrylov/core/vector_ops.hpp"
#include "splitkrylov/krylov/cg.hpp"
#include "splitkrylov/krylov/gmres.hpp"
#include "splitkrylov/krylov/lanczos.hpp"
#include "splitkrylov/krylov/operator_solver.hpp"
#include "splitkrylov/krylov/rapoport.hpp"
#include "splitkrylov/krylov/widlund.hpp"
#include "test_support.hpp"

using namespace splitkrylov;

namespace {

SparseMatrix tridiag(index_t n, real_t lo, real_t di, real_t up) {
    std::vector<Triplet> t;
    for (index_t i = 0; i < n; ++i) {
        t.push_back({i, i, di});
        if (i > 0) t.push_back({i, i - 1, lo});
        if (i + 1 < n) t.push_back({i, i + 1, up});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

// 1D advection-diffusion split operator on interior nodes, h = 1/(n+1).
SplitOperator advdiff_1d(index_t n, real_t nu, real_t beta, real_t c) {
    const real_t h = 1.0 / static_cast<real_t>(n + 1);
    auto hmat = add(tridiag(n, -nu / (h * h), 2.0 * nu / (h * h), -nu / (h * h)),
                    SparseMatrix::identity(n, c));
    auto smat = tridiag(n, -beta / (2.0 * h), 0.0, beta / (2.0 * h));
    return make_split(std::move(hmat), std::move(smat));
}

SplitOperator rotation_2x2() {
    auto h = SparseMatrix::identity(2);
    auto s = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, -1.0}});
    return make_split(std::move(h), std::move(s));
}

// Spectral half-width of H^{-1}S via a dense eigensolve (test-side oracle).
real_t dense_lambda_width(const SplitOperator& split) {
    const auto n = split.dim();
    Eigen::MatrixXd hd(n, n), sd(n, n);
    hd.setZero();
    sd.setZero();
    auto dh = sk_test::csr_to_dense(split.h);
    auto ds = sk_test::csr_to_dense(split.s);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            hd(i, j) = dh(i, j);
            sd(i, j) = ds(i, j);
        }
    Eigen::MatrixXd k = hd.partialPivLu().solve(sd);
    Eigen::EigenSolver<Eigen::MatrixXd> es(k, false);
    return es.eigenvalues().imag().cwiseAbs().maxCoeff();
}

real_t h_norm(const SparseMatrix& h, const Vector& x) { return std::sqrt(dot(x, spmv(h, x))); }

SolverConfig exact_cfg(real_t tol, int max_iter) {
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    return cfg;
}

} // namespace

TEST(HLanczos, InvariantRightHandSideTerminatesImmediately) {
    auto op = make_split(SparseMatrix::identity(4), SparseMatrix::identity(4, 0.0));
    auto state = h_lanczos(op, Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h),
                           {1.0, 2.0, 0.0, -1.0}, 10);
    EXPECT_EQ(state.v_basis.size(), 1u);
    EXPECT_TRUE(state.alpha.empty());
    EXPECT_TRUE(state.beta.empty());
    EXPECT_TRUE(state.breakdown);
}

TEST(HLanczos, RotationBlockProducesUnitCoupling) {
    auto op = rotation_2x2();
    auto state = h_lanczos(op, Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h),
                           {1.0, 0.0}, 1);
    ASSERT_EQ(state.v_basis.size(), 2u);
    ASSERT_EQ(state.alpha.size(), 1u);
    EXPECT_NEAR(state.alpha[0], 0.0, 1e-14);
    EXPECT_NEAR(std::abs(state.beta[0]), 1.0, 1e-14);
    // V_2 orthonormal (H = I)
    EXPECT_NEAR(dot(state.v_basis[0], state.v_basis[1]), 0.0, 1e-14);
    EXPECT_NEAR(norm2(state.v_basis[1]), 1.0, 1e-14);
}

TEST(HLanczos, GramMatrixStaysOrthonormalWithoutReorthogonalization) {
    // reaction term keeps the extreme eigenvalues of H^{-1}S clustered, so no
    // Ritz pair converges within 15 steps and orthogonality is preserved;
    // without it the cot-shaped spectrum converges extremes in a handful of
    // steps and the basis degrades
    auto op = advdiff_1d(100, 0.001, 1.0, 1.0);
    auto h_solver = Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h);
    Vector b(100, 1.0);
    auto state = h_lanczos(op, h_solver, b, 15);
    ASSERT_GE(state.v_basis.size(), 15u);
    real_t worst = 0.0;
    for (std::size_t i = 0; i < state.v_basis.size(); ++i) {
        Vector hv = spmv(op.h, state.v_basis[i]);
        for (std::size_t j = 0; j < state.v_basis.size(); ++j) {
            const real_t g = dot(state.v_basis[j], hv);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(HLanczos, DiagonalOfTIsNumericallyZero) {
    auto op = advdiff_1d(60, 0.1, 2.0, 1.0);
    auto h_solver = Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h);
    auto state = h_lanczos(op, h_solver, Vector(60, 1.0), 20);
    for (real_t a : state.alpha) EXPECT_LE(std::abs(a), 1e-12 * (1.0 + std::abs(a)));
}

TEST(Widlund, TwoByTwoRotation) {
    auto op = rotation_2x2();
    auto [x, report] = widlund_solve(op, {1.0, 0.0}, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_LE(report.iterations, 2);
    EXPECT_NEAR(x[0], 0.5, 1e-12);
    EXPECT_NEAR(x[1], 0.5, 1e-12);
    EXPECT_FALSE(report.symmetry_degraded);
}

TEST(Widlund, PureSymmetricSystemConvergesInOneIteration) {
    auto op = make_split(tridiag(5, -1.0, 3.0, -1.0), SparseMatrix::identity(5, 0.0));
    Vector b = {1.0, 0.0, 2.0, -1.0, 0.5};
    auto [x, report] = widlund_solve(op, b, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_EQ(report.iterations, 1);
    BandedLU lu(op.h);
    auto xref = lu.solve(b);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], xref[i], 1e-12);
}

TEST(Widlund, MatchesDirectSolveAndErrorBound) {
    auto op = advdiff_1d(200, 0.05, 1.0, 0.0);
    Vector b(200);
    std::mt19937 gen(3);
    b = sk_test::random_dense_vector(gen, 200);
    SolverConfig cfg = exact_cfg(1e-12, 400);
    cfg.record_iterates = true;
    auto [x, report] = widlund_solve(op, b, cfg);
    ASSERT_TRUE(report.converged);

    BandedLU lu(op.a);
    auto x_true = lu.solve(b);
    EXPECT_LE(norm2(subtract(x, x_true)) / norm2(x_true), 1e-8);

    const real_t lambda = dense_lambda_width(op);
    const real_t rho = (std::sqrt(1.0 + lambda * lambda) - 1.0) /
                       (std::sqrt(1.0 + lambda * lambda) + 1.0);
    const real_t xnorm_h = h_norm(op.h, x_true);
    for (std::size_t it = 0; it + 1 < report.iterates.size(); it += 2) {
        const std::size_t k = it / 2;
        const real_t err = h_norm(op.h, subtract(x_true, report.iterates[it])) / xnorm_h;
        const real_t bound = 2.0 * std::pow(rho, static_cast<real_t>(k));
        EXPECT_TRUE(err <= bound || err <= 5e-11)
            << "iteration " << it << ": err=" << err << " bound=" << bound;
    }
}

TEST(Rapoport, TwoByTwoRotation) {
    auto op = rotation_2x2();
    auto [x, report] = rapoport_solve(op, {1.0, 0.0}, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_LE(report.iterations, 2);
    EXPECT_NEAR(x[0], 0.5, 1e-12);
    EXPECT_NEAR(x[1], 0.5, 1e-12);
}

TEST(Rapoport, PureSymmetricSystemConvergesInOneIteration) {
    auto op = make_split(tridiag(5, -1.0, 3.0, -1.0), SparseMatrix::identity(5, 0.0));
    Vector b = {1.0, 0.0, 2.0, -1.0, 0.5};
    auto [x, report] = rapoport_solve(op, b, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_EQ(report.iterations, 1);
}

TEST(Rapoport, HinvResidualMonotoneAndWithinBound) {
    auto op = advdiff_1d(200, 0.05, 1.0, 0.0);
    std::mt19937 gen(5);
    Vector b = sk_test::random_dense_vector(gen, 200);
    auto [x, report] = rapoport_solve(op, b, exact_cfg(1e-12, 400));
    ASSERT_TRUE(report.converged);

    const auto& hist = report.hinv_residual_history;
    for (std::size_t k = 1; k < hist.size(); ++k) EXPECT_LE(hist[k], hist[k - 1] * (1.0 + 1e-12));

    const real_t lambda = dense_lambda_width(op);
    const real_t rho = lambda / (std::sqrt(1.0 + lambda * lambda) + 1.0);
    for (std::size_t k = 0; k < hist.size(); ++k) {
        const real_t bound = 2.0 * std::pow(rho, static_cast<real_t>(k));
        EXPECT_TRUE(hist[k] <= bound || hist[k] <= 5e-11)
            << "k=" << k << ": res=" << hist[k] << " bound=" << bound;
    }
}

TEST(Gmres, DiagonalSystem) {
    auto a = SparseMatrix::diagonal({1.0, 2.0, 3.0});
    auto op = operator_from_matrix(a);
    auto [x, report] = gmres_solve(op, {1.0, 1.0, 1.0}, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_LE(report.iterations, 3);
    EXPECT_NEAR(x[0], 1.0, 1e-10);
    EXPECT_NEAR(x[1], 0.5, 1e-10);
    EXPECT_NEAR(x[2], 1.0 / 3.0, 1e-10);
}

TEST(Gmres, NilpotentPerturbationConvergesInMinimalPolynomialDegree) {
    auto a = add(SparseMatrix::identity(4),
                 SparseMatrix::from_triplets(4, 4, {{0, 3, 2.0}}));
    auto op = operator_from_matrix(a);
    std::mt19937 gen(7);
    auto b = sk_test::random_dense_vector(gen, 4);
    auto [x, report] = gmres_solve(op, b, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_LE(report.iterations, 2);
}

TEST(Gmres, FullHistoryMonotone) {
    std::mt19937 gen(11);
    auto split_op = sk_test::random_split_operator(gen, 40, 0.2, 2.0);
    auto op = operator_from_matrix(split_op.a);
    auto [x, report] = gmres_solve(op, sk_test::random_dense_vector(gen, 40),
                                   exact_cfg(1e-10, 100));
    EXPECT_TRUE(report.converged);
    for (std::size_t k = 1; k < report.residual_history.size(); ++k)
        EXPECT_LE(report.residual_history[k], report.residual_history[k - 1] * (1.0 + 1e-12));
}

TEST(Gmres, PreconditionedIterationsTrackWidlund) {
    auto op = advdiff_1d(400, 0.05, 1.0, 0.0);
    std::mt19937 gen(13);
    Vector b = sk_test::random_dense_vector(gen, 400);
    const real_t target = 1e-8;
    const real_t bnorm = norm2(b);

    SolverConfig wcfg = exact_cfg(target, 500);
    auto [xw, wreport] = widlund_solve(op, b, wcfg);
    ASSERT_TRUE(wreport.converged);

    // same search space, same measured quantity: count GMRES iterations until
    // the unpreconditioned relative residual crosses the target
    SolverConfig gcfg = exact_cfg(target * 1e-4, 500);
    gcfg.precond.kind = PrecondKind::ExactSym;
    gcfg.record_iterates = true;
    auto precond = Preconditioner::build(gcfg.precond, op.h);
    auto [xg, greport] = gmres_solve(operator_from_matrix_ref(op.a), b, gcfg, precond);
    ASSERT_TRUE(greport.converged);
    int gmres_iters = greport.iterations;
    for (std::size_t k = 0; k < greport.iterates.size(); ++k) {
        if (norm2(subtract(b, spmv(op.a, greport.iterates[k]))) / bnorm <= target) {
            gmres_iters = static_cast<int>(k);
            break;
        }
    }

    EXPECT_LE(std::abs(wreport.iterations - gmres_iters), 2)
        << "widlund=" << wreport.iterations << " gmres=" << gmres_iters;
}

TEST(Cg, IdentityConvergesImmediately) {
    auto op = operator_from_matrix(SparseMatrix::identity(5));
    auto [x, report] = cg_solve(op, {1, 2, 3, 4, 5}, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_EQ(report.iterations, 1);
}

TEST(Cg, SmallTridiagonalSolution) {
    auto a = tridiag(3, -1.0, 2.0, -1.0);
    auto [x, report] = cg_solve(operator_from_matrix(a), {1.0, 0.0, 0.0}, exact_cfg(1e-12, 10));
    EXPECT_TRUE(report.converged);
    EXPECT_NEAR(x[0], 0.75, 1e-10);
    EXPECT_NEAR(x[1], 0.5, 1e-10);
    EXPECT_NEAR(x[2], 0.25, 1e-10);
}

TEST(Cg, FiniteTerminationOnGradedDiagonal) {
    Vector d(100);
    for (std::size_t i = 0; i < 100; ++i) d[i] = static_cast<real_t>(i + 1);
    auto op = operator_from_matrix(SparseMatrix::diagonal(d));
    auto [x, report] = cg_solve(op, ones(100), exact_cfg(1e-10, 100));
    EXPECT_TRUE(report.converged);
    EXPECT_LE(report.iterations, 100);
}

TEST(Cg, IndefinitenessIsDiagnosed) {
    auto a = SparseMatrix::diagonal({1.0, -1.0});
    EXPECT_THROW(cg_solve(operator_from_matrix(a), {1.0, 1.0}, exact_cfg(1e-10, 10)),
                 StructureError);
}

TEST(FiniteTermination, AllMethodsReachTargetWithinDimensionPlusOne) {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 5; ++trial) {
        const index_t n = 10 + static_cast<index_t>(gen() % 41);
        auto op = sk_test::random_split_operator(gen, n, 0.3, 1.5);
        Vector b = sk_test::random_dense_vector(gen, n);
        SolverConfig cfg = exact_cfg(1e-10, static_cast<int>(n) + 1);

        auto [xw, rw] = widlund_solve(op, b, cfg);
        EXPECT_TRUE(rw.converged) << "widlund n=" << n;
        auto [xr, rr] = rapoport_solve(op, b, cfg);
        EXPECT_TRUE(rr.converged) << "rapoport n=" << n;

        auto precond = Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h);
        auto [xg, rg] = gmres_solve(operator_from_matrix_ref(op.a), b, cfg, precond);
        EXPECT_TRUE(rg.converged) << "gmres n=" << n;

        auto [xc, rc] = cg_solve(operator_from_matrix_ref(op.h), b, cfg);
        EXPECT_TRUE(rc.converged) << "cg n=" << n;
    }
}

TEST(OperatorSolverTest, DirectAndIterativeAgreeIncludingAdjoint) {
    auto op = advdiff_1d(80, 0.1, 1.0, 0.5);
    std::mt19937 gen(19);
    Vector b = sk_test::random_dense_vector(gen, 80);

    SolverConfig direct_cfg;
    direct_cfg.method = Method::Direct;
    OperatorSolver direct(op, direct_cfg);

    SolverConfig wcfg = exact_cfg(1e-12, 200);
    wcfg.method = Method::Widlund;
    OperatorSolver widlund(op, wcfg);

    auto xd = direct.solve(b);
    auto xw = widlund.solve(b);
    for (std::size_t i = 0; i < xd.size(); ++i) EXPECT_NEAR(xd[i], xw[i], 1e-7);
    EXPECT_EQ(direct.inner_iterations(), 0);
    EXPECT_GT(widlund.inner_iterations(), 0);

    // adjoint solve: A^T x = b
    auto xa = widlund.solve_adjoint(b);
    auto residual = subtract(spmv_transpose(op.a, xa), b);
    EXPECT_LE(norm2(residual) / norm2(b), 1e-10);
}

TEST(OperatorSolverTest, NonConvergencePropagatesWithDiagnostics) {
    auto op = advdiff_1d(100, 0.001, 1.0, 0.0);
    SolverConfig cfg = exact_cfg(1e-14, 2);
    cfg.method = Method::GMRES;
    OperatorSolver solver(op, cfg);
    try {
        solver.solve(ones(100));
        FAIL() << "expected SolveError";
    } catch (const SolveError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("iterations"), std::string::npos);
        EXPECT_NE(msg.find("residual"), std::string::npos);
    }
}

TEST(Gmres, RestartedStagnationIsFlagged) {
    // on a pure rotation, the residual cannot decrease within a single-step
    // Krylov space, so GMRES(1) stalls across a full restart cycle
    auto a = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, -1.0}});
    SolverConfig cfg = exact_cfg(1e-10, 50);
    cfg.restart = 1;
    auto [x, report] = gmres_solve(operator_from_matrix(a), {1.0, 0.0}, cfg);
    EXPECT_FALSE(report.converged);
    EXPECT_TRUE(report.stagnated);
    EXPECT_EQ(report.termination, "stagnated");
}

TEST(HLanczos, ReorthogonalizationTightensGramMatrix) {
    auto op = advdiff_1d(120, 0.001, 1.0, 0.0); // cot-shaped spectrum degrades fast
    auto h_solver = Preconditioner::build({.kind = PrecondKind::ExactSym}, op.h);
    auto gram_error = [&](bool reorth) {
        auto state = h_lanczos(op, h_solver, Vector(120, 1.0), 20, reorth);
        real_t worst = 0.0;
        for (std::size_t i = 0; i < state.v_basis.size(); ++i) {
            Vector hv = spmv(op.h, state.v_basis[i]);
            for (std::size_t j = 0; j <= i; ++j)
                worst = std::max(worst,
                                 std::abs(dot(state.v_basis[j], hv) - (i == j ? 1.0 : 0.0)));
        }
        return worst;
    };
    const real_t plain = gram_error(false);
    const real_t reorthogonalized = gram_error(true);
    EXPECT_LE(reorthogonalized, 1e-12);
    EXPECT_LE(reorthogonalized, plain);
}
