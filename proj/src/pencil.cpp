#include "pencillab/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pencillab/errors.hpp"
#include "pencillab/polynomial.hpp"
#include "pencillab/random.hpp"
#include "pencillab/subspace.hpp"

namespace pencillab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kProfileSamples = 20;
constexpr double kProfileDisk = 10.0;
constexpr double kCertifyDisk = 2.0;
constexpr long kSearchBudget = 1'000'000;

// Single-linkage groups of points at an absolute threshold.
std::vector<std::vector<Cx>> group_close(const std::vector<Cx>& pts, double threshold) {
    std::vector<std::size_t> parent(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) <= threshold) parent[find(i)] = find(j);
    std::vector<std::vector<Cx>> groups(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) groups[find(i)].push_back(pts[i]);
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return groups;
}

// Newton on p^(m-1) from the centroid of an m-member root group; falls back to
// the centroid if the iteration leaves the group's neighborhood.
Cx refine_center(const CPoly& p, const std::vector<Cx>& g) {
    const std::size_t m = g.size();
    Cx c = 0.0;
    for (const Cx& z : g) c += z;
    c /= double(m);
    double spread = 0.0;
    for (const Cx& z : g) spread = std::max(spread, std::abs(z - c));
    const Cx start = c;
    for (int it = 0; it < 50; ++it) {
        const auto t = p.taylor_at(c);
        if (t.size() <= m || t[m] == Cx(0.0)) break;
        const Cx step = t[m - 1] / (double(m) * t[m]);
        c -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(c))) break;
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c - start) > 2.0 * spread + 1e-12)
        return start;
    return c;
}

std::vector<Cx> merge_close(const std::vector<Cx>& pts, double threshold) {
    std::vector<Cx> out;
    for (const auto& g : group_close(pts, threshold)) {
        Cx c = 0.0;
        for (const Cx& z : g) c += z;
        out.push_back(c / double(g.size()));
    }
    return out;
}

bool lex_less(Cx a, Cx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

// One continuation step: assign each tracked value to an element of `next`.
// Elements of `next` equal to within `eq` are interchangeable; within such a
// class sources are mapped to targets in index order.
std::vector<std::size_t> match_step(const std::vector<Cx>& cur, const std::vector<Cx>& next, double eq) {
    const std::size_t n = cur.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j1 = 0;
        for (std::size_t j = 0; j < n; ++j) {
            cost[i][j] = std::norm(cur[i] - next[j]);
            if (cost[i][j] < cost[i][j1]) j1 = j;
        }
        const double d1 = std::abs(cur[i] - next[j1]);
        double d2 = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(next[j] - next[j1]) > eq) d2 = std::min(d2, std::abs(cur[i] - next[j]));
        if (d2 <= 2.0 * d1) throw TrackingAmbiguous("branch tracking: nearest match is not distinct");
    }
    std::vector<std::size_t> assign = min_cost_assignment(cost);

    std::vector<long> cls(n, -1);
    long ncls = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (cls[j] >= 0) continue;
        for (std::size_t k = j; k < n; ++k)
            if (cls[k] < 0 && std::abs(next[k] - next[j]) <= eq) cls[k] = ncls;
        ++ncls;
    }
    for (long c = 0; c < ncls; ++c) {
        std::vector<std::size_t> sources, targets;
        for (std::size_t i = 0; i < n; ++i)
            if (cls[assign[i]] == c) sources.push_back(i);
        for (std::size_t j = 0; j < n; ++j)
            if (cls[j] == c) targets.push_back(j);
        for (std::size_t t = 0; t < sources.size(); ++t) assign[sources[t]] = targets[t];
    }
    return assign;
}

Cx disc_sample(const SpectrumMultiset& s, double rho) {
    Cx acc = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const Cx d = (s[i] - s[j]) / rho;
            acc *= d * d;
        }
    return acc;
}

// Equality of two families as multisets of (c, b) pairs.
bool same_family(const AffineFamily& f, const AffineFamily& g, double eq) {
    const std::size_t n = f.forms.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i][j] = std::abs(f.forms[i].c - g.forms[j].c) + std::abs(f.forms[i].b - g.forms[j].b);
    const auto a = min_cost_assignment(cost);
    for (std::size_t i = 0; i < n; ++i)
        if (cost[i][a[i]] > eq) return false;
    return true;
}

}  // namespace

Pencil::Pencil(CMatrix a, CMatrix b) : a_(std::move(a)), b_(std::move(b)) {
    require_square(a_, "Pencil");
    require_same_shape(a_, b_, "Pencil");
}

SpectrumMultiset sample_spectrum(const Pencil& p, Cx z, const Tolerances& tol) { return spectrum(p.at(z), tol); }

PencilProfile profile(const Pencil& p, const Tolerances& tol, std::uint64_t seed) {
    const std::size_t n = p.n();
    PencilProfile out;
    out.seed = seed;
    Rng rng(seed);
    for (std::size_t k = 0; k < kProfileSamples; ++k)
        out.p = std::max(out.p, distinct_count(sample_spectrum(p, rng.complex_in_disk(kProfileDisk), tol), tol));
    out.samples_used = kProfileSamples;
    if (out.p < n) {
        out.degenerate_discriminant = true;
        return out;
    }
    if (n == 1) return out;

    const double na = norm_1(p.a());
    const double nb = norm_1(p.b());
    if (nb == 0.0) return out;
    const double radius = std::max(1.0, na / nb);
    const double rho = 1.0 + na + radius * nb;  // keeps the samples O(1)
    const std::size_t deg = n * (n - 1);
    const std::size_t pts = deg + 1;
    // A random phase keeps the sample circle off exceptional points.
    const double phase = rng.uniform(0.0, kTwoPi / double(pts));
    std::vector<Cx> v(pts);
    double vmax = 0.0;
    for (std::size_t k = 0; k < pts; ++k) {
        const Cx z = std::polar(radius, phase + kTwoPi * double(k) / double(pts));
        v[k] = disc_sample(sample_spectrum(p, z, tol), rho);
        vmax = std::max(vmax, std::abs(v[k]));
    }
    out.samples_used += pts;
    std::vector<Cx> coeffs(pts);
    for (std::size_t j = 0; j < pts; ++j) {
        Cx acc = 0.0;
        for (std::size_t k = 0; k < pts; ++k)
            acc += v[k] * std::polar(1.0, -double(j) * (phase + kTwoPi * double(k) / double(pts)));
        coeffs[j] = acc / (double(pts) * std::pow(radius, double(j)));
    }
    // Coefficients at the level of the sampling noise are dropped.
    const double noise = 1e-10 * vmax;
    while (!coeffs.empty() && std::abs(coeffs.back()) * std::pow(radius, double(coeffs.size() - 1)) <= noise)
        coeffs.pop_back();
    if (coeffs.size() < 2) return out;

    const CPoly disc(coeffs);
    const auto cand = roots(disc, tol, seed);
    auto confirmed_at = [&](Cx z) {
        ++out.samples_used;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return distinct_count(sample_spectrum(p, z, tol), tol) < out.p;
    };
    // Collisions of analytic branches are multiple roots of disc, and the
    // sampled coefficients are only good to ~1e-12, so such roots come back
    // split. Each group's center is refined on disc^(m-1) before the check.
    std::vector<Cx> confirmed;
    for (const auto& g : group_close(cand.values(), 1e-3 * radius)) {
        const Cx center = refine_center(disc, g);
        if (confirmed_at(center)) {
            confirmed.push_back(center);
            continue;
        }
        if (g.size() == 1) continue;
        for (const Cx& z : g)
            if (confirmed_at(z)) confirmed.push_back(z);
    }
    out.exceptional_points = merge_close(confirmed, tol.eps_cluster * (1.0 + radius));
    std::sort(out.exceptional_points.begin(), out.exceptional_points.end(), lex_less);
    return out;
}

TrackedLoop track_circle(const Pencil& p, Cx z0, double radius, std::size_t points, const Tolerances& tol) {
    if (points < 3) throw std::invalid_argument("track_circle: need at least 3 points");
    if (!(radius > 0.0)) throw std::invalid_argument("track_circle: radius must be positive");
    TrackedLoop loop;
    std::vector<SpectrumMultiset> s;
    for (std::size_t k = 0; k < points; ++k) {
        loop.z.push_back(z0 + std::polar(radius, kTwoPi * double(k) / double(points)));
        s.push_back(sample_spectrum(p, loop.z.back(), tol));
    }
    std::vector<Cx> cur = s[0].values();
    loop.values.push_back(cur);
    for (std::size_t k = 1; k <= points; ++k) {
        const auto& next = s[k % points].values();
        const double eq = tol.eps_cluster * s[k % points].scale();
        const auto assign = match_step(cur, next, eq);
        for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = next[assign[j]];
        if (k < points)
            loop.values.push_back(cur);
        else
            loop.monodromy = assign;
    }
    return loop;
}

BranchStructure branch_structure(const Pencil& p, Cx z0, const Tolerances& tol, const BranchOptions& opt) {
    double r = opt.radius;
    TrackedLoop loop;
    for (int attempt = 0;; ++attempt) {
        try {
            loop = track_circle(p, z0, r, opt.points, tol);
            break;
        } catch (const TrackingAmbiguous&) {
            if (attempt >= opt.retries) throw;
            r *= 0.5;
        }
    }
    BranchStructure out;
    out.center = z0;
    out.radius = r;
    out.points = opt.points;
    out.monodromy = loop.monodromy;
    const std::size_t n = p.n();
    const std::size_t m = opt.points;
    double scale = 1.0;
    for (const auto& row : loop.values)
        for (const Cx& v : row) scale = std::max(scale, 1.0 + std::abs(v));
    const double significant = 0.1 * tol.eps_verify * scale;

    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        BranchCycle cyc;
        for (std::size_t i = start; !seen[i]; i = loop.monodromy[i]) {
            seen[i] = true;
            cyc.members.push_back(i);
        }
        cyc.d = cyc.members.size();
        // Walk the cycle d times around the circle: with zeta = (z - z0)^{1/d},
        // the concatenated path is periodic in theta / d.
        std::vector<Cx> path;
        for (std::size_t b : cyc.members)
            for (std::size_t k = 0; k < m; ++k) path.push_back(loop.values[k][b]);
        const std::size_t total = path.size();
        auto fourier = [&](std::size_t j) {
            Cx acc = 0.0;
            for (std::size_t k = 0; k < total; ++k)
                acc += path[k] * std::polar(1.0, -kTwoPi * double(j * k) / double(total));
            return acc / double(total);
        };
        cyc.value_at_center = fourier(0);
        for (std::size_t j = 1; j <= total / 2; ++j) {
            const Cx f = fourier(j);
            if (std::abs(f) > significant) {
                cyc.leading_term = LeadingTerm{f / std::pow(r, double(j) / double(cyc.d)), int(j)};
                break;
            }
        }
        out.cycles.push_back(std::move(cyc));
    }
    out.q = out.cycles.size();
    return out;
}

SpectrumMultiset AffineFamily::evaluate(Cx z) const {
    std::vector<Cx> v;
    for (const auto& f : forms) v.push_back(f(z));
    return SpectrumMultiset(std::move(v));
}

SpectrumMultiset LinearFormFamily::evaluate(const std::vector<Cx>& x) const {
    std::vector<Cx> v;
    for (const auto& row : forms) {
        Cx acc = 0.0;
        for (std::size_t i = 0; i < row.size() && i < x.size(); ++i) acc += row[i] * x[i];
        v.push_back(acc);
    }
    return SpectrumMultiset(std::move(v));
}

std::size_t certificate_points(std::size_t n) { return 2 * n + 1; }

std::optional<AffineFamily> property_L_pair(const CMatrix& a, const CMatrix& b, const Tolerances& tol,
                                            std::uint64_t seed) {
    const Pencil pencil(a, b);
    const std::size_t n = pencil.n();
    const SpectrumMultiset s0 = spectrum(a, tol);
    const SpectrumMultiset s1 = spectrum(a + b, tol);
    const double eq0 = tol.eps_cluster * s0.scale();
    const double eq1 = tol.eps_cluster * s1.scale();

    Rng rng(seed);
    struct Probe {
        Cx z;
        SpectrumMultiset s;
        double thr;
    };
    std::vector<Probe> filters;
    for (int k = 0; k < 2; ++k) {
        const Cx z = rng.complex_in_disk(kCertifyDisk);
        auto s = sample_spectrum(pencil, z, tol);
        const double thr = 1.01 * tol.eps_cluster * s.scale();
        filters.push_back({z, std::move(s), thr});
    }
    std::vector<Probe> checks;
    for (std::size_t k = 0; k < certificate_points(n); ++k) {
        const Cx z = rng.complex_in_disk(kCertifyDisk);
        checks.push_back({z, sample_spectrum(pencil, z, tol), 0.0});
    }

    auto certify = [&](const AffineFamily& f) {
        for (const auto& c : checks)
            if (!multiset_match(f.evaluate(c.z), c.s, tol)) return false;
        return true;
    };

    std::vector<std::size_t> sigma(n);
    std::vector<bool> used(n, false);
    std::vector<std::vector<bool>> taken(filters.size(), std::vector<bool>(n, false));
    std::vector<std::vector<std::size_t>> took(filters.size(), std::vector<std::size_t>(n));
    std::vector<AffineFamily> found;
    long nodes = 0;

    std::function<void(std::size_t)> search = [&](std::size_t k) {
        if (++nodes > kSearchBudget) throw NonConvergence("property_L_pair: search budget exhausted");
        if (k == n) {
            AffineFamily f;
            for (std::size_t i = 0; i < n; ++i) f.forms.push_back({s0[i], s1[sigma[i]] - s0[i]});
            if (!certify(f)) return;
            for (const auto& g : found)
                if (same_family(f, g, tol.eps_cluster * (s0.scale() + s1.scale()))) return;
            found.push_back(std::move(f));
            if (found.size() > 1) throw AmbiguousMatching("property_L_pair: two different families certify");
            return;
        }
        const bool tied = k > 0 && std::abs(s0[k] - s0[k - 1]) <= eq0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (tied && j < sigma[k - 1]) continue;
            bool duplicate = false;
            for (std::size_t jj = 0; jj < j && !duplicate; ++jj)
                duplicate = !used[jj] && std::abs(s1[jj] - s1[j]) <= eq1;
            if (duplicate) continue;

            const AffineForm form{s0[k], s1[j] - s0[k]};
            bool ok = true;
            std::size_t f = 0;
            for (; f < filters.size(); ++f) {
                const Cx v = form(filters[f].z);
                std::size_t best = n;
                for (std::size_t t = 0; t < n; ++t)
                    if (!taken[f][t] && std::abs(filters[f].s[t] - v) <= filters[f].thr &&
                        (best == n || std::abs(filters[f].s[t] - v) < std::abs(filters[f].s[best] - v)))
                        best = t;
                if (best == n) {
                    ok = false;
                    break;
                }
                taken[f][best] = true;
                took[f][k] = best;
            }
            if (ok) {
                used[j] = true;
                sigma[k] = j;
                search(k + 1);
                used[j] = false;
            }
            for (std::size_t g = 0; g < f; ++g) taken[g][took[g][k]] = false;
        }
    };
    search(0);
    if (found.empty()) return std::nullopt;
    return found.front();
}

std::optional<LinearFormFamily> property_L_span(const std::vector<CMatrix>& generators, const Tolerances& tol,
                                                std::uint64_t seed) {
    if (generators.empty()) throw std::invalid_argument("property_L_span: need at least one generator");
    require_square(generators.front(), "property_L_span");
    for (const auto& g : generators) require_same_shape(generators.front(), g, "property_L_span");
    const std::size_t n = generators.front().n();

    CMatrix vecs(n * n, generators.size());
    double biggest = 0.0;
    for (std::size_t j = 0; j < generators.size(); ++j) {
        vecs.set_column(j, generators[j].data());
        biggest = std::max(biggest, norm_fro(generators[j]));
    }
    const PivotedQR qr = pivoted_qr(vecs, tol.eps_rank, biggest);
    LinearFormFamily fam;
    fam.basis_indices.assign(qr.pivots.begin(), qr.pivots.begin() + long(qr.rank));
    std::sort(fam.basis_indices.begin(), fam.basis_indices.end());
    for (std::size_t i : fam.basis_indices) fam.basis.push_back(generators[i]);
    const std::size_t r = fam.basis.size();
    fam.forms.assign(n, {});
    if (r == 0) return fam;

    const auto first = spectrum(fam.basis[0], tol);
    for (std::size_t k = 0; k < n; ++k) fam.forms[k].push_back(first[k]);

    Rng rng(seed);
    for (std::size_t j = 1; j < r; ++j) {
        std::vector<Cx> w(j);
        CMatrix partial = CMatrix::zero(n);
        for (std::size_t i = 0; i < j; ++i) {
            w[i] = double(rng.integer(1, 9)) / double(rng.integer(1, 9));
            partial += w[i] * fam.basis[i];
        }
        const auto pair = property_L_pair(partial, fam.basis[j], tol, rng.bits());
        if (!pair) return std::nullopt;
        // Align the pair's values at z = 0 with the current forms at w.
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        double scale = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            Cx u = 0.0;
            for (std::size_t i = 0; i < j; ++i) u += fam.forms[k][i] * w[i];
            for (std::size_t l = 0; l < n; ++l) cost[k][l] = std::abs(u - pair->forms[l].c);
            scale = std::max(scale, 1.0 + std::abs(u));
        }
        const auto assign = min_cost_assignment(cost);
        for (std::size_t k = 0; k < n; ++k) {
            if (cost[k][assign[k]] > tol.eps_cluster * scale) return std::nullopt;
            fam.forms[k].push_back(pair->forms[assign[k]].b);
        }
    }

    for (std::size_t t = 0; t < certificate_points(n); ++t) {
        std::vector<Cx> x(r);
        CMatrix m = CMatrix::zero(n);
        for (std::size_t i = 0; i < r; ++i) {
            x[i] = rng.complex_in_disk(kCertifyDisk);
            m += x[i] * fam.basis[i];
        }
        if (!multiset_match(fam.evaluate(x), spectrum(m, tol), tol)) return std::nullopt;
    }
    return fam;
}

std::vector<Cx> collision_points(const AffineFamily& f, const Tolerances& tol) {
    double scale = 1.0;
    for (const auto& form : f.forms) scale = std::max({scale, 1.0 + std::abs(form.c), 1.0 + std::abs(form.b)});
    const double eq = tol.eps_cluster * scale;
    std::vector<Cx> pts;
    for (std::size_t i = 0; i < f.forms.size(); ++i)
        for (std::size_t j = i + 1; j < f.forms.size(); ++j) {
            const Cx dc = f.forms[i].c - f.forms[j].c;
            const Cx db = f.forms[i].b - f.forms[j].b;
            if (std::abs(db) <= eq) continue;  // parallel or identical
            pts.push_back(-dc / db);
        }
    std::vector<Cx> out;
    for (const Cx& z : pts) {
        bool dup = false;
        for (const Cx& o : out) dup = dup || std::abs(o - z) <= tol.eps_cluster * (1.0 + std::abs(z));
        if (!dup) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::vector<long> exceptional_integers(const AffineFamily& f, const Tolerances& tol) {
    std::vector<long> out;
    for (const Cx& z : collision_points(f, tol)) {
        const double k = std::round(z.real());
        if (std::abs(z - k) > tol.eps_cluster * (1.0 + std::abs(z))) continue;
        // Confirm on the values themselves.
        bool hit = false;
        for (std::size_t i = 0; i < f.forms.size() && !hit; ++i)
            for (std::size_t j = i + 1; j < f.forms.size() && !hit; ++j) {
                const bool distinct = std::abs(f.forms[i].c - f.forms[j].c) + std::abs(f.forms[i].b - f.forms[j].b) >
                                      tol.eps_cluster * (1.0 + std::abs(f.forms[i].c) + std::abs(f.forms[i].b));
                const Cx vi = f.forms[i](k);
                hit = distinct && std::abs(vi - f.forms[j](k)) <= tol.eps_cluster * (1.0 + std::abs(vi));
            }
        if (hit) out.push_back(long(k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProjectionTrajectory eigenprojection_trajectory(const Pencil& p, const std::vector<Cx>& zs, const Tolerances& tol) {
    ProjectionTrajectory out;
    for (const Cx& z : zs) {
        EigenprojectionSet set = eigenprojections(p.at(z), tol);
        if (!out.sets.empty()) {
            const auto& prev = out.sets.back();
            if (set.size() != prev.size())
                throw std::invalid_argument("eigenprojection_trajectory: distinct eigenvalue count changes along zs");
            std::vector<std::vector<double>> cost(set.size(), std::vector<double>(set.size()));
            for (std::size_t i = 0; i < set.size(); ++i)
                for (std::size_t j = 0; j < set.size(); ++j)
                    cost[i][j] = norm_fro(prev.pairs[i].projection - set.pairs[j].projection);
            const auto assign = min_cost_assignment(cost);
            EigenprojectionSet relabeled;
            for (std::size_t i = 0; i < set.size(); ++i) relabeled.pairs.push_back(set.pairs[assign[i]]);
            set = std::move(relabeled);
        }
        out.sets.push_back(std::move(set));
    }
    if (out.sets.empty()) return out;
    out.branch_deviation.assign(out.sets.front().size(), 0.0);
    for (std::size_t a = 0; a < out.sets.size(); ++a)
        for (std::size_t b = a + 1; b < out.sets.size(); ++b)
            for (std::size_t i = 0; i < out.branch_deviation.size(); ++i)
                out.branch_deviation[i] =
                    std::max(out.branch_deviation[i],
                             norm_fro(out.sets[a].pairs[i].projection - out.sets[b].pairs[i].projection));
    for (double d : out.branch_deviation) out.max_deviation = std::max(out.max_deviation, d);
    return out;
}

}  // namespace pencillab
