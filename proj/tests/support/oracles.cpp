#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace oracle {

Cx leibniz_det(const CMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Cx total = 0.0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Cx term = inversions % 2 == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::vector<Cx> charpoly_by_sampling(const CMatrix& m) {
    const std::size_t n = m.rows();
    const std::size_t pts = n + 1;
    double radius = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, std::abs(m(i, j)));
    std::vector<Cx> values(pts);
    for (std::size_t k = 0; k < pts; ++k) {
        const Cx x = std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(pts));
        CMatrix a = -1.0 * m;
        for (std::size_t i = 0; i < n; ++i) a(i, i) += x;
        values[k] = leibniz_det(a);
    }
    std::vector<Cx> coeffs(pts);
    for (std::size_t j = 0; j < pts; ++j) {
        Cx acc = 0.0;
        for (std::size_t k = 0; k < pts; ++k)
            acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k) / double(pts));
        coeffs[j] = acc / (double(pts) * std::pow(radius, double(j)));
    }
    return coeffs;
}

std::vector<CMatrix> projections_from_bases(const std::vector<CMatrix>& bases) {
    const std::size_t n = bases.front().rows();
    CMatrix x(n, n);
    std::size_t col = 0;
    for (const auto& b : bases)
        for (std::size_t j = 0; j < b.cols(); ++j, ++col) x.set_column(col, b.column(j));
    if (col != n) throw std::invalid_argument("projections_from_bases: dimensions do not add up to n");
    const CMatrix xinv = pencillab::inverse(x);
    std::vector<CMatrix> out;
    col = 0;
    for (const auto& b : bases) {
        CMatrix e(n, n);
        for (std::size_t j = 0; j < b.cols(); ++j, ++col) e(col, col) = 1.0;
        out.push_back(x * e * xinv);
    }
    return out;
}

std::vector<Cx> poly_from_roots(const std::vector<Cx>& roots) {
    std::vector<Cx> c{1.0};
    for (const Cx& r : roots) {
        std::vector<Cx> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

double coeff_distance(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const Cx x = i < a.size() ? a[i] : Cx(0.0);
        const Cx y = i < b.size() ? b[i] : Cx(0.0);
        worst = std::max(worst, std::abs(x - y));
    }
    return worst;
}

}  // namespace oracle
