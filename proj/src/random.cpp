#include "pencillab/random.hpp"

#include <cmath>
#include <numbers>

#include "pencillab/errors.hpp"

namespace pencillab {

Cx Rng::complex_in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, theta);
}

CMatrix Rng::matrix(std::size_t n, double scale) {
    CMatrix m(n, n);
    for (auto& z : m.data()) z = scale * complex_unit_box();
    return m;
}

CMatrix Rng::well_conditioned(std::size_t n, double max_cond) {
    for (;;) {
        CMatrix p = CMatrix::identity(n) + matrix(n, 0.9 / std::sqrt(double(n)));
        try {
            if (norm_1(p) * norm_1(inverse(p)) <= max_cond) return p;
        } catch (const IllConditioned&) {
        }
    }
}

CMatrix Rng::upper_triangular(std::span<const Cx> diagonal, double off_scale) {
    const std::size_t n = diagonal.size();
    CMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t(i, i) = diagonal[i];
        for (std::size_t j = i + 1; j < n; ++j) t(i, j) = off_scale * complex_unit_box();
    }
    return t;
}

}  // namespace pencillab
