#pragma once

#include <cstdint>
#include <random>

#include "pencillab/matrix.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// Seeded generator with a platform-independent uniform mapping
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) from the top 53 bits.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) { return lo + int(engine_() % std::uint64_t(hi - lo + 1)); }
    /// Uniform in the closed square [-1, 1] x [-1, 1].
    Cx complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    /// Uniform in the disk of the given radius.
    Cx complex_in_disk(double radius);
    std::uint64_t bits() { return engine_(); }

    /// Dense matrix with entries in the unit box, scaled.
    CMatrix matrix(std::size_t n, double scale = 1.0);
    /// Invertible matrix with 1-norm condition number at most max_cond
    /// (rejection sampling around the identity).
    CMatrix well_conditioned(std::size_t n, double max_cond = 1e2);
    /// Strictly/upper triangular with the given diagonal and off-diagonal scale.
    CMatrix upper_triangular(std::span<const Cx> diagonal, double off_scale);

   private:
    std::mt19937_64 engine_;
};

}  // namespace pencillab
