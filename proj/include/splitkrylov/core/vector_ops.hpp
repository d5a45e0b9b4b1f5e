/// @file vector_ops.hpp
/// @brief Dense vector kernels used by the iterative solvers.

#ifndef SPLITKRYLOV_CORE_VECTOR_OPS_HPP
#define SPLITKRYLOV_CORE_VECTOR_OPS_HPP

#include <cmath>
#include <cstddef>

#include "types.hpp"

namespace splitkrylov {

inline real_t dot(const Vector& x, const Vector& y) {
    real_t s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline real_t norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

/// y += alpha * x
inline void axpy(real_t alpha, const Vector& x, Vector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vector& x, real_t alpha) {
    for (auto& v : x) v *= alpha;
}

inline Vector scaled(const Vector& x, real_t alpha) {
    Vector y(x);
    scale(y, alpha);
    return y;
}

/// z = x - y
inline Vector subtract(const Vector& x, const Vector& y) {
    Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

inline Vector add(const Vector& x, const Vector& y) {
    Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

inline Vector zeros(index_t n) { return Vector(static_cast<std::size_t>(n), 0.0); }

inline Vector ones(index_t n) { return Vector(static_cast<std::size_t>(n), 1.0); }

inline Vector unit_vector(index_t n, index_t k) {
    Vector e = zeros(n);
    e[static_cast<std::size_t>(k)] = 1.0;
    return e;
}

} // namespace splitkrylov

#endif
