/// @file types.hpp
/// @brief Basic scalar/index types and exception hierarchy.

#ifndef SPLITKRYLOV_CORE_TYPES_HPP
#define SPLITKRYLOV_CORE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitkrylov {

using real_t = double;
using index_t = std::int64_t;
using Vector = std::vector<real_t>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape/size mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

/// Malformed input file (Matrix Market, JSON config).
struct FormatError : Error {
    using Error::Error;
};

/// Factorization breakdown (non-positive pivot, zero diagonal).
struct BreakdownError : Error {
    using Error::Error;
};

/// Invalid configuration (unsupported enum combination, bad parameter).
struct ConfigError : Error {
    using Error::Error;
};

/// Structural precondition violated (operator not symmetric, invariant broken).
struct StructureError : Error {
    using Error::Error;
};

/// Grid cannot support the requested multigrid hierarchy.
struct HierarchyError : Error {
    using Error::Error;
};

/// An inner solve failed to converge where the caller requires success.
struct SolveError : Error {
    using Error::Error;
};

} // namespace splitkrylov

#endif
