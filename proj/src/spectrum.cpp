#include "pencillab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pencillab/polynomial.hpp"

namespace pencillab {

namespace {

bool canonical_less(const Cx& a, const Cx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

SpectrumMultiset::SpectrumMultiset(std::vector<Cx> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), canonical_less);
}

double SpectrumMultiset::scale() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return 1.0 + m;
}

Cx SpectrumMultiset::sum() const noexcept { return std::accumulate(values_.begin(), values_.end(), Cx(0.0)); }

Cx SpectrumMultiset::product() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), Cx(1.0), std::multiplies<>());
}

std::vector<EigenCluster> cluster(const SpectrumMultiset& s, const Tolerances& tol) {
    const auto& v = s.values();
    const double threshold = tol.eps_cluster * s.scale();
    std::vector<std::size_t> parent(v.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b)
            if (std::abs(v[a] - v[b]) <= threshold) parent[find(a)] = find(b);

    std::vector<std::size_t> root_slot(v.size(), v.size());
    std::vector<EigenCluster> out;
    for (std::size_t a = 0; a < v.size(); ++a) {
        const std::size_t r = find(a);
        if (root_slot[r] == v.size()) {
            root_slot[r] = out.size();
            out.push_back({0.0, 0});
        }
        auto& c = out[root_slot[r]];
        c.value += v[a];
        ++c.multiplicity;
    }
    for (auto& c : out) c.value /= double(c.multiplicity);
    std::sort(out.begin(), out.end(),
              [](const EigenCluster& a, const EigenCluster& b) { return canonical_less(a.value, b.value); });
    return out;
}

std::size_t distinct_count(const SpectrumMultiset& s, const Tolerances& tol) { return cluster(s, tol).size(); }

std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    // Hungarian algorithm with potentials, O(n^3); 1-based internal indexing.
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
    return assignment;
}

std::optional<std::vector<std::size_t>> multiset_match(const SpectrumMultiset& s, const SpectrumMultiset& t,
                                                       const Tolerances& tol) {
    if (s.size() != t.size()) throw std::invalid_argument("multiset_match: multisets differ in length");
    const std::size_t n = s.size();
    if (n == 0) return std::vector<std::size_t>{};
    const double threshold = tol.eps_cluster * std::max(s.scale(), t.scale());
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::norm(s[i] - t[j]);
    auto sigma = min_cost_assignment(cost);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(s[i] - t[sigma[i]]) > threshold) return std::nullopt;
    return sigma;
}

SpectrumMultiset spectrum(const CMatrix& m, const Tolerances& tol, std::uint64_t seed) {
    return roots(charpoly(m), tol, seed, 1.0 + norm_1(m));
}

}  // namespace pencillab
