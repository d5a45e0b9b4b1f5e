/// @file splitkrylov.hpp
/// @brief Umbrella header.

#ifndef SPLITKRYLOV_SPLITKRYLOV_HPP
#define SPLITKRYLOV_SPLITKRYLOV_HPP

#include "core/banded.hpp"
#include "core/linear_operator.hpp"
#include "core/matrix_market.hpp"
#include "core/random.hpp"
#include "core/sparse_matrix.hpp"
#include "core/split_operator.hpp"
#include "core/types.hpp"
#include "core/vector_ops.hpp"

#include "precond/incomplete_cholesky.hpp"
#include "precond/incomplete_lu.hpp"
#include "precond/multigrid.hpp"
#include "precond/preconditioner.hpp"

#include "krylov/cg.hpp"
#include "krylov/gmres.hpp"
#include "krylov/lanczos.hpp"
#include "krylov/operator_solver.hpp"
#include "krylov/rapoport.hpp"
#include "krylov/solver_config.hpp"
#include "krylov/widlund.hpp"

#include "discretize/assemble.hpp"
#include "discretize/grid.hpp"
#include "discretize/problem_spec.hpp"
#include "discretize/schur.hpp"

#include "spectra/condition.hpp"
#include "spectra/dense_oracle.hpp"
#include "spectra/refinement_study.hpp"
#include "spectra/spectral_width.hpp"

#include "optctl/condensed.hpp"
#include "optctl/constraint_precond.hpp"
#include "optctl/kkt.hpp"
#include "optctl/midpoint.hpp"
#include "optctl/ocp_problem.hpp"
#include "optctl/schur_solve.hpp"

#include "bench/experiment.hpp"
#include "bench/runners.hpp"
#include "bench/table.hpp"

#endif
