/// @file assemble.hpp
/// @brief Assembly of the five built-in operators as split operators or block
/// systems. Boundary conditions are imposed by row/column elimination, so H
/// is exactly symmetric and S exactly skew-symmetric at assembly.

#ifndef SPLITKRYLOV_DISCRETIZE_ASSEMBLE_HPP
#define SPLITKRYLOV_DISCRETIZE_ASSEMBLE_HPP

#include <string>
#include <vector>

#include "../core/sparse_matrix.hpp"
#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "grid.hpp"
#include "problem_spec.hpp"

namespace splitkrylov {

/// Advection-diffusion-reaction with homogeneous Dirichlet boundary:
/// H = nu * (discrete Laplacian) + c * I, S = centered advection. The
/// advection field is constant per axis, hence discretely divergence-free.
inline SplitOperator assemble_advdiff(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::AdvDiff)
        throw ConfigError("assemble_advdiff: spec.kind must be AdvDiff");
    const index_t n1 = spec.cells_per_side - 1;
    index_t total = 1;
    for (int d = 0; d < spec.dim; ++d) total *= n1;

    SparseMatrix h = SparseMatrix::identity(total, spec.reaction);
    SparseMatrix s(total, total);
    for (int axis = 0; axis < spec.dim; ++axis) {
        const real_t ha = spec.axis_width(axis);
        SparseMatrix lap = grid::dirichlet_laplacian_1d(n1, ha);
        SparseMatrix adv =
            grid::centered_advection_1d(n1, ha, spec.advection[static_cast<std::size_t>(axis)]);
        for (int d = 0; d < spec.dim; ++d) {
            if (d == axis) continue;
            const SparseMatrix eye = SparseMatrix::identity(n1);
            if (d < axis) {
                lap = kron(eye, lap);
                adv = kron(eye, adv);
            } else {
                lap = kron(lap, eye);
                adv = kron(adv, eye);
            }
        }
        h = add(h, lap, 1.0, spec.nu);
        s = add(s, adv);
    }
    return make_split(std::move(h), std::move(s));
}

namespace detail {

struct StokesGrid {
    index_t n1 = 0;       // interior nodes per axis
    index_t n_int = 0;    // interior grid size (velocity component)
    index_t n_all = 0;    // full grid size (pressure)
    real_t hx = 0, hy = 0;
    SparseMatrix grad_x;  // pressure (all nodes) -> velocity (interior)
    SparseMatrix grad_y;
    SparseMatrix lap_int; // scalar Dirichlet Laplacian on the interior grid
};

inline StokesGrid stokes_grid(const ProblemSpec& spec) {
    StokesGrid g;
    g.n1 = spec.cells_per_side - 1;
    g.n_int = g.n1 * g.n1;
    g.n_all = (g.n1 + 2) * (g.n1 + 2);
    g.hx = spec.axis_width(0);
    g.hy = spec.axis_width(1);
    const SparseMatrix eye = SparseMatrix::identity(g.n1);
    g.lap_int = add(kron(grid::dirichlet_laplacian_1d(g.n1, g.hx), eye),
                    kron(eye, grid::dirichlet_laplacian_1d(g.n1, g.hy)));
    g.grad_x = kron(grid::centered_difference_interior_from_all(g.n1, g.hx),
                    grid::interior_selection(g.n1));
    g.grad_y = kron(grid::interior_selection(g.n1),
                    grid::centered_difference_interior_from_all(g.n1, g.hy));
    return g;
}

} // namespace detail

/// Pressure-stabilized Stokes with equal-order nodal fields: velocity
/// components on the interior grid (Dirichlet), pressure on all nodes.
/// H = diag(nu*Lap, nu*Lap, s1*I + s2*Lap_Neumann), S couples velocity and
/// pressure through the centered gradient G and -G^T.
inline SplitOperator assemble_stokes(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::Stokes)
        throw ConfigError("assemble_stokes: spec.kind must be Stokes");
    if (spec.dim != 2) throw ConfigError("assemble_stokes: only dim = 2 is supported");
    if (spec.s1 < 0 || spec.s2 < 0 || spec.s1 + spec.s2 <= 0)
        throw StructureError("assemble_stokes: singular symmetric part (need s1, s2 >= 0, s1+s2 > 0)");

    const auto g = detail::stokes_grid(spec);
    SparseMatrix h_u = scale(g.lap_int, spec.nu);
    SparseMatrix h_p = SparseMatrix::identity(g.n_all, spec.s1);
    if (spec.s2 != 0.0) {
        const SparseMatrix eye_all = SparseMatrix::identity(g.n1 + 2);
        SparseMatrix lap_p = add(kron(grid::neumann_laplacian_1d(g.n1 + 2, g.hx), eye_all),
                                 kron(eye_all, grid::neumann_laplacian_1d(g.n1 + 2, g.hy)));
        h_p = add(h_p, lap_p, 1.0, spec.s2);
    }

    const std::vector<index_t> sizes = {g.n_int, g.n_int, g.n_all};
    SparseMatrix h = block_matrix(sizes, sizes, {{0, 0, &h_u, 1.0}, {1, 1, &h_u, 1.0}, {2, 2, &h_p, 1.0}});
    const SparseMatrix gxt = transpose(g.grad_x);
    const SparseMatrix gyt = transpose(g.grad_y);
    SparseMatrix s = block_matrix(sizes, sizes,
                                  {{0, 2, &g.grad_x, 1.0},
                                   {1, 2, &g.grad_y, 1.0},
                                   {2, 0, &gxt, -1.0},
                                   {2, 1, &gyt, -1.0}});
    return make_split(std::move(h), std::move(s));
}

/// Oseen equation blocks on a staggered (MAC) grid: pressure at cell
/// centers, velocity components at face midpoints. The compact face
/// gradients make the pair div-stable (pressure kernel = constants only),
/// the discrete analogue of the inf-sup property behind the bounded Schur
/// complement. a11 carries the symmetrized-gradient viscous form
/// 2 mu eps:eps assembled as a sum of X^T X quadratic forms plus centered
/// advection; a12 is the face gradient, a21 = -a12^T exactly.
inline BlockSystem assemble_oseen(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::Oseen)
        throw ConfigError("assemble_oseen: spec.kind must be Oseen");
    if (spec.dim != 2) throw ConfigError("assemble_oseen: only dim = 2 is supported");

    const index_t m = spec.cells_per_side;
    const real_t hx = spec.axis_width(0);
    const real_t hy = spec.axis_width(1);
    const index_t n_u = (m - 1) * m; // x-velocity: interior vertical faces
    const index_t n_v = m * (m - 1); // y-velocity: interior horizontal faces
    const index_t n_vel = n_u + n_v;
    const index_t n_p = m * m;       // pressure: cell centers

    // combined velocity index: u(i,j), i in 1..m-1, j in 0..m-1, then v(i,j)
    auto u_idx = [m](index_t i, index_t j) { return (i - 1) * m + j; };
    auto v_idx = [m, n_u](index_t i, index_t j) { return n_u + i * (m - 1) + (j - 1); };
    auto p_idx = [m](index_t i, index_t j) { return i * m + j; };

    // d_x u at cell centers (boundary faces carry u = 0)
    std::vector<Triplet> t;
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 0; j < m; ++j) {
            if (i + 1 <= m - 1) t.push_back({p_idx(i, j), u_idx(i + 1, j), 1.0 / hx});
            if (i >= 1) t.push_back({p_idx(i, j), u_idx(i, j), -1.0 / hx});
        }
    SparseMatrix dxu = SparseMatrix::from_triplets(n_p, n_vel, std::move(t));

    t.clear();
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 0; j < m; ++j) {
            if (j + 1 <= m - 1) t.push_back({p_idx(i, j), v_idx(i, j + 1), 1.0 / hy});
            if (j >= 1) t.push_back({p_idx(i, j), v_idx(i, j), -1.0 / hy});
        }
    SparseMatrix dyv = SparseMatrix::from_triplets(n_p, n_vel, std::move(t));

    // d_y u + d_x v at grid corners; no-slip walls enter through mirrored
    // ghosts (tangential velocity) and zero normal faces
    t.clear();
    index_t corner_row = 0;
    for (index_t i = 1; i <= m - 1; ++i)
        for (index_t j = 0; j <= m; ++j, ++corner_row) {
            if (j == 0) {
                t.push_back({corner_row, u_idx(i, 0), 2.0 / hy});
            } else if (j == m) {
                t.push_back({corner_row, u_idx(i, m - 1), -2.0 / hy});
            } else {
                t.push_back({corner_row, u_idx(i, j), 1.0 / hy});
                t.push_back({corner_row, u_idx(i, j - 1), -1.0 / hy});
                t.push_back({corner_row, v_idx(i, j), 1.0 / hx});
                t.push_back({corner_row, v_idx(i - 1, j), -1.0 / hx});
            }
        }
    // side-wall corners: u vanishes there, v sees its mirror ghost
    for (index_t j = 1; j <= m - 1; ++j) {
        t.push_back({corner_row++, v_idx(0, j), 2.0 / hx});
        t.push_back({corner_row++, v_idx(m - 1, j), -2.0 / hx});
    }
    SparseMatrix shear = SparseMatrix::from_triplets(corner_row, n_vel, std::move(t));

    // 2 mu (dx u)^2 + 2 mu (dy v)^2 + mu (dy u + dx v)^2
    SparseMatrix h11 = add(add(matmul(transpose(dxu), dxu), matmul(transpose(dyv), dyv), 2.0, 2.0),
                           matmul(transpose(shear), shear), spec.mu, spec.mu);

    // centered advection per component on its own grid (skew by construction)
    const SparseMatrix cu = kron(grid::centered_advection_1d(m - 1, hx, spec.advection[0]),
                                 SparseMatrix::identity(m));
    const SparseMatrix cu2 = kron(SparseMatrix::identity(m - 1),
                                  grid::centered_advection_1d(m, hy, spec.advection[1]));
    const SparseMatrix cv = kron(grid::centered_advection_1d(m, hx, spec.advection[0]),
                                 SparseMatrix::identity(m - 1));
    const SparseMatrix cv2 = kron(SparseMatrix::identity(m),
                                  grid::centered_advection_1d(m - 1, hy, spec.advection[1]));
    const SparseMatrix adv_u = add(cu, cu2);
    const SparseMatrix adv_v = add(cv, cv2);
    SparseMatrix s11 = block_matrix({n_u, n_v}, {n_u, n_v},
                                    {{0, 0, &adv_u, 1.0}, {1, 1, &adv_v, 1.0}});

    // face gradient: (Gx p) at u(i,j) = (p(i,j) - p(i-1,j))/hx, same in y
    t.clear();
    for (index_t i = 1; i <= m - 1; ++i)
        for (index_t j = 0; j < m; ++j) {
            t.push_back({u_idx(i, j), p_idx(i, j), 1.0 / hx});
            t.push_back({u_idx(i, j), p_idx(i - 1, j), -1.0 / hx});
        }
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 1; j <= m - 1; ++j) {
            t.push_back({v_idx(i, j), p_idx(i, j), 1.0 / hy});
            t.push_back({v_idx(i, j), p_idx(i, j - 1), -1.0 / hy});
        }
    SparseMatrix grad = SparseMatrix::from_triplets(n_vel, n_p, std::move(t));

    BlockSystem blocks;
    blocks.a11 = make_split(std::move(h11), std::move(s11));
    blocks.a12 = std::move(grad);
    blocks.a21 = scale(transpose(blocks.a12), -1.0);
    blocks.mass_p = SparseMatrix::identity(n_p, hx * hy); // uniform cells
    blocks.h_grid = spec.mesh_width();
    return blocks;
}

/// Wave equation in first-order port-Hamiltonian form on a staggered grid:
/// momentum at the m+1 nodes, strain at the m cell midpoints with zero
/// normal strain at the boundary. Discrete divergence and gradient are exact
/// negative transposes, so S is exactly skew.
inline SplitOperator assemble_wave(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::Wave)
        throw ConfigError("assemble_wave: spec.kind must be Wave");
    if (spec.dim != 1) throw ConfigError("assemble_wave: only dim = 1 is supported");
    if (!(spec.rho > 0) || !(spec.eta > 0))
        throw StructureError("assemble_wave: rho = 0 or eta = 0 makes the symmetric part singular");

    const index_t m = spec.cells_per_side;
    const real_t h = spec.axis_width(0);
    // gradient E: nodes -> midpoints, row i = (p_{i+1} - p_i)/h
    std::vector<Triplet> t;
    for (index_t i = 0; i < m; ++i) {
        t.push_back({i, i, -1.0 / h});
        t.push_back({i, i + 1, 1.0 / h});
    }
    SparseMatrix e = SparseMatrix::from_triplets(m, m + 1, std::move(t));
    SparseMatrix et = transpose(e);

    const std::vector<index_t> sizes = {m + 1, m};
    const SparseMatrix ip = SparseMatrix::identity(m + 1, spec.rho);
    const SparseMatrix iq = SparseMatrix::identity(m, spec.eta);
    SparseMatrix h_blocks = block_matrix(sizes, sizes, {{0, 0, &ip, 1.0}, {1, 1, &iq, 1.0}});
    SparseMatrix s_blocks = block_matrix(sizes, sizes, {{0, 1, &et, 1.0}, {1, 0, &e, -1.0}});
    return make_split(std::move(h_blocks), std::move(s_blocks));
}

/// Kelvin-Voigt damped beam: a11 = K^T K with K the one-sided fourth-order
/// closure of the second difference (clamped end at r=0, free end at r=1,
/// Eq.-level boundary data eliminated); a12 = K^T, a21 = -K.
inline BlockSystem assemble_beam(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::Beam)
        throw ConfigError("assemble_beam: spec.kind must be Beam");
    if (spec.dim != 1) throw ConfigError("assemble_beam: only dim = 1 is supported");
    if (spec.cells_per_side < 4)
        throw ConfigError("assemble_beam: grid too coarse for the fourth-difference stencil "
                          "(cells_per_side < 4)");

    const index_t m = spec.cells_per_side;
    const real_t h = spec.axis_width(0);
    const real_t w = 1.0 / (h * h);
    // unknowns p_1..p_m (p_0 = 0); ghost p_{m+1} = p_{m-1} encodes p'(1) = 0
    std::vector<Triplet> t;
    for (index_t row = 0; row < m; ++row) {
        const index_t node = row + 1;
        if (node < m) {
            if (row > 0) t.push_back({row, row - 1, w});
            t.push_back({row, row, -2.0 * w});
            t.push_back({row, row + 1, w});
        } else {
            t.push_back({row, row - 1, 2.0 * w});
            t.push_back({row, row, -2.0 * w});
        }
    }
    SparseMatrix k = SparseMatrix::from_triplets(m, m, std::move(t));

    BlockSystem blocks;
    SparseMatrix a11 = matmul(transpose(k), k);
    blocks.a11 = make_split(std::move(a11), SparseMatrix(m, m));
    blocks.a12 = transpose(k);
    blocks.a21 = scale(k, -1.0);
    blocks.mass_p = SparseMatrix::identity(m);
    blocks.h_grid = h;
    return blocks;
}

} // namespace splitkrylov

#endif
