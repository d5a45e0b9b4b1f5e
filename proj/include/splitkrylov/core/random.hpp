/// @file random.hpp
/// @brief Seeded splitmix64 generator for reproducible right-hand sides.
///
/// The algorithm is fixed so experiment tables are byte-reproducible across
/// runs and across language ports: state advances by 0x9E3779B97F4A7C15 and
/// the output is finalized with the standard splitmix64 mixing constants.
/// uniform() maps the top 53 bits to [0, 1).

#ifndef SPLITKRYLOV_CORE_RANDOM_HPP
#define SPLITKRYLOV_CORE_RANDOM_HPP

#include <cstdint>

#include "types.hpp"

namespace splitkrylov {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    real_t uniform() { return static_cast<real_t>(next() >> 11) * 0x1.0p-53; }

    real_t uniform(real_t lo, real_t hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

inline Vector random_vector(SplitMix64& rng, index_t n, real_t lo = -1.0, real_t hi = 1.0) {
    Vector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

} // namespace splitkrylov

#endif
