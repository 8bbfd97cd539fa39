#include "pencillab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pencillab/errors.hpp"
#include "pencillab/random.hpp"

namespace pencillab {

namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

// Single-linkage grouping of indices at an absolute distance threshold.
std::vector<std::vector<std::size_t>> link_groups(const std::vector<Cx>& z, std::span<const std::size_t> idx,
                                                  double threshold) {
    std::vector<std::size_t> parent(idx.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (std::abs(z[idx[a]] - z[idx[b]]) <= threshold) parent[find(a)] = find(b);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(idx.size(), -1);
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const std::size_t r = find(a);
        if (slot[r] < 0) {
            slot[r] = long(groups.size());
            groups.emplace_back();
        }
        groups[std::size_t(slot[r])].push_back(idx[a]);
    }
    return groups;
}

// Longest edge of the minimum spanning tree of the group (Prim).
double longest_mst_edge(const std::vector<Cx>& z, const std::vector<std::size_t>& g) {
    const std::size_t m = g.size();
    std::vector<double> best(m, std::numeric_limits<double>::infinity());
    std::vector<bool> in(m, false);
    best[0] = 0.0;
    double longest = 0.0;
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t u = m;
        for (std::size_t v = 0; v < m; ++v)
            if (!in[v] && (u == m || best[v] < best[u])) u = v;
        in[u] = true;
        longest = std::max(longest, best[u]);
        for (std::size_t v = 0; v < m; ++v)
            if (!in[v]) best[v] = std::min(best[v], std::abs(z[g[u]] - z[g[v]]));
    }
    return longest;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// True when c is a numerical m-fold root of p: the Taylor coefficients of
// orders 0..m-1 at c are small against the majorant (X + scale)^deg.
bool is_multiple_root(const CPoly& p, Cx c, std::size_t m, double scale, double eta) {
    const auto t = p.taylor_at(c);
    const int n = p.degree();
    const double r = std::abs(c) + scale;
    for (std::size_t j = 0; j < m; ++j) {
        const double majorant = binomial(n, int(j)) * std::pow(r, double(n) - double(j));
        if (std::abs(t[j]) > eta * majorant) return false;
    }
    return true;
}

void polish_group(const CPoly& p, std::vector<Cx>& z, const std::vector<std::size_t>& g, double scale,
                  double eta) {
    if (g.size() < 2) return;
    Cx centroid = 0.0;
    for (auto i : g) centroid += z[i];
    centroid /= double(g.size());
    // An m-fold root is a simple root of p^(m-1); Newton there recovers the
    // center to full accuracy even though the members are only eps^(1/m) good.
    const std::size_t m = g.size();
    const Cx start = centroid;
    for (int it = 0; it < 30; ++it) {
        const auto t = p.taylor_at(centroid);
        if (t.size() <= m || t[m] == Cx(0.0)) break;
        const Cx step = t[m - 1] / (double(m) * t[m]);
        centroid -= step;
        if (std::abs(step) <= 4.0 * kMachEps * (1.0 + std::abs(centroid))) break;
    }
    if (!std::isfinite(centroid.real()) || !std::isfinite(centroid.imag()) ||
        std::abs(centroid - start) > longest_mst_edge(z, g)) {
        centroid = start;
    }
    if (is_multiple_root(p, centroid, m, scale, eta)) {
        for (auto i : g) z[i] = centroid;
        return;
    }
    // Split at the longest spanning-tree edge and retry on each side.
    const double cut = longest_mst_edge(z, g);
    if (cut == 0.0) return;
    for (const auto& sub : link_groups(z, g, std::nextafter(cut, 0.0))) polish_group(p, z, sub, scale, eta);
}

}  // namespace

CPoly::CPoly(std::vector<Cx> ascending) : coeffs_(std::move(ascending)) {
    while (!coeffs_.empty() && coeffs_.back() == Cx(0.0)) coeffs_.pop_back();
}

CPoly CPoly::from_roots(std::span<const Cx> roots) {
    std::vector<Cx> c{1.0};
    for (const Cx& r : roots) {
        std::vector<Cx> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return CPoly(std::move(c));
}

Cx CPoly::operator()(Cx z) const {
    Cx acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

CPoly CPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Cx> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = double(i) * coeffs_[i];
    return CPoly(std::move(d));
}

std::vector<Cx> CPoly::taylor_at(Cx c) const {
    std::vector<Cx> a = coeffs_;
    const std::size_t n = a.size();
    // Horner shift: after pass k, a[k] holds p^(k)(c)/k!.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) a[i - 1] += c * a[i];
    return a;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Cx> c(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return CPoly(std::move(c));
}

CPoly charpoly(const CMatrix& m) {
    require_square(m, "charpoly");
    const std::size_t n = m.n();
    // Exact power-of-two scaling keeps the recurrence away from overflow.
    const double nrm = norm_1(m);
    const int e = nrm > 0.0 ? std::ilogb(nrm) : 0;
    const double s = std::ldexp(1.0, -e);
    const CMatrix ms = s * m;

    std::vector<Cx> c(n + 1, 0.0);
    c[n] = 1.0;
    CMatrix mk = CMatrix::zero(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = shifted(ms * mk, c[n - k + 1]);
        c[n - k] = -(ms * mk).trace() / double(k);
    }
    for (std::size_t k = 1; k <= n; ++k) c[n - k] = std::ldexp(1.0, int(k) * e) * c[n - k];
    // The constant term may vanish; keep the monic leading coefficient regardless.
    return CPoly(std::move(c));
}

SpectrumMultiset roots(const CPoly& p, const Tolerances& tol, std::uint64_t seed, double scale) {
    if (p.degree() < 1) throw std::invalid_argument("roots: polynomial degree must be >= 1");
    tol.validate();
    const Cx lead = p.leading();
    std::vector<Cx> a(p.coeffs().size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = p.coeffs()[i] / lead;

    std::vector<Cx> found;
    // Exact zero roots are deflated rather than iterated towards.
    std::size_t zeros = 0;
    while (zeros + 1 < a.size() && a[zeros] == Cx(0.0)) ++zeros;
    found.assign(zeros, Cx(0.0));
    std::vector<Cx> q(a.begin() + long(zeros), a.end());
    const std::size_t n = q.size() - 1;

    if (n == 1) {
        found.push_back(-q[0]);
    } else if (n > 1) {
        const CPoly qp{q};
        const CPoly dq = qp.derivative();
        double maxc = 0.0;
        for (std::size_t i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(q[i]));
        const double radius = 1.0 + maxc;

        Rng rng(seed);
        constexpr double kGolden = 2.399963229728653;  // pi * (3 - sqrt 5)
        std::vector<Cx> z(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = kGolden * double(k) + 0.25 * rng.uniform(-1.0, 1.0);
            z[k] = std::polar(radius * (1.0 + 0.05 * rng.uniform(-1.0, 1.0)), phase);
        }

        auto majorant = [&](Cx x) {
            const double ax = std::abs(x);
            double acc = 0.0;
            for (std::size_t i = q.size(); i-- > 0;) acc = acc * ax + std::abs(q[i]);
            return acc;
        };
        std::vector<bool> done(n, false);
        std::size_t remaining = n;
        for (int it = 0; it < tol.max_iter && remaining > 0; ++it) {
            for (std::size_t k = 0; k < n; ++k) {
                if (done[k]) continue;
                const Cx pk = qp(z[k]);
                if (std::abs(pk) <= 4.0 * double(n) * kMachEps * majorant(z[k])) {
                    done[k] = true;
                    --remaining;
                    continue;
                }
                const Cx dk = dq(z[k]);
                Cx repel = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != k) repel += 1.0 / (z[k] - z[j]);
                Cx step;
                if (dk == Cx(0.0)) {
                    step = std::polar(1e-3 * (1.0 + std::abs(z[k])), double(k));
                } else {
                    const Cx w = pk / dk;
                    step = w / (1.0 - w * repel);
                }
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                    step = std::polar(1e-3 * (1.0 + std::abs(z[k])), double(k) + 0.5);
                }
                z[k] -= step;
                if (std::abs(step) <= 2.0 * kMachEps * std::abs(z[k])) {
                    done[k] = true;
                    --remaining;
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(qp(z[k])) > tol.eps_root * majorant(z[k])) {
                throw NonConvergence("roots: Aberth iteration did not converge within max_iter sweeps");
            }
        }
        found.insert(found.end(), z.begin(), z.end());
    }

    double root_scale = 1.0;
    for (const Cx& r : found) root_scale = std::max(root_scale, 1.0 + std::abs(r));
    const double s = scale > 0.0 ? std::max(scale, root_scale) : root_scale;
    const CPoly monic{a};
    std::vector<std::size_t> all(found.size());
    std::iota(all.begin(), all.end(), 0);
    // A pair at distance d has |p(c)| ~ d^2/4 at its midpoint, so this merges
    // double roots exactly when they are closer than about eps_cluster * scale.
    const double eta = std::min(tol.eps_root, tol.eps_cluster * tol.eps_cluster / 16.0);
    for (const auto& g : link_groups(found, all, 0.1 * s)) polish_group(monic, found, g, s, eta);
    return SpectrumMultiset(std::move(found));
}

std::vector<Cx> nth_roots(Cx z, int n) {
    if (n < 1) throw std::invalid_argument("nth_roots: N must be >= 1");
    std::vector<Cx> out(std::size_t(n), Cx(0.0));
    if (z == Cx(0.0)) return out;
    const double r = std::pow(std::abs(z), 1.0 / double(n));
    const double theta = std::arg(z);
    for (int k = 0; k < n; ++k) out[std::size_t(k)] = std::polar(r, (theta + 2.0 * std::numbers::pi * k) / n);
    return out;
}

}  // namespace pencillab
