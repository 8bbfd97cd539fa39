#include "pencillab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pencillab/chevalley.hpp"
#include "pencillab/errors.hpp"
#include "pencillab/expmat.hpp"
#include "pencillab/spectrum.hpp"

namespace pencillab {

namespace {

double relative_gap(const CMatrix& lhs, const CMatrix& rhs) {
    return norm_fro(lhs - rhs) / std::max({1.0, norm_fro(lhs), norm_fro(rhs)});
}

// Clustered exponentials of the clustered spectrum of m, with multiplicity.
SpectrumMultiset exp_spectrum(const CMatrix& m, const Tolerances& tol) {
    std::vector<Cx> values;
    for (const auto& c : cluster(spectrum(m, tol), tol)) values.insert(values.end(), c.multiplicity, std::exp(c.value));
    return SpectrumMultiset(std::move(values));
}

std::vector<Cx> distinct_values(const SpectrumMultiset& s, const Tolerances& tol) {
    std::vector<Cx> out;
    for (const auto& c : cluster(s, tol)) out.push_back(c.value);
    return out;
}

const EigenCluster* nearest_cluster(const std::vector<EigenCluster>& cs, Cx v, double threshold) {
    const EigenCluster* best = nullptr;
    for (const auto& c : cs)
        if (std::abs(c.value - v) <= threshold && (!best || std::abs(c.value - v) < std::abs(best->value - v)))
            best = &c;
    return best;
}

// Best rational approximation num/den of x with den <= qmax, accepted when
// within tol of x.
std::optional<std::pair<long, long>> detect_rational(double x, double tol, long qmax) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        const long ai = long(a);
        const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > qmax) break;
        if (std::abs(x - double(h2) / double(k2)) <= tol) return std::pair{h2, k2};
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        const double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

using Decomposition = std::vector<Subspace>;

Decomposition char_decomposition(const CMatrix& m, const Tolerances& tol) {
    const SpectrumMultiset sp = spectrum(m, tol);
    Decomposition out;
    for (const auto& c : cluster(sp, tol)) out.push_back(char_subspace(m, c.value, sp, tol));
    return out;
}

Decomposition joint_refinement(const Decomposition& x, const Decomposition& y, const Tolerances& tol) {
    Decomposition out;
    for (const auto& f : x)
        for (const auto& g : y) {
            Subspace s = intersect(f, g, tol);
            if (s.dim() > 0) out.push_back(std::move(s));
        }
    return out;
}

Subspace union_of(const Decomposition& parts, std::uint64_t mask, bool inside, std::size_t n, const Tolerances& tol) {
    std::vector<CVector> cols;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (bool((mask >> i) & 1u) != inside) continue;
        for (std::size_t j = 0; j < parts[i].dim(); ++j) cols.push_back(parts[i].vector(j));
    }
    return column_span(CMatrix::from_columns(cols, n), tol);
}

}  // namespace

const char* to_string(ConditionKind kind) {
    switch (kind) {
        case ConditionKind::Bourgeois3:
            return "bourgeois3";
        case ConditionKind::TwoSided4:
            return "twosided4";
        case ConditionKind::Window:
            return "window";
    }
    return "?";
}

Window default_window(ConditionKind kind) {
    if (kind == ConditionKind::Bourgeois3) return {0, 6, 1, 1};
    return {-3, 3, -3, 3};
}

ConditionReport check_condition(const CMatrix& a, const CMatrix& b, ConditionKind kind, const Tolerances& tol) {
    return check_condition(a, b, kind, default_window(kind), tol);
}

ConditionReport check_condition(const CMatrix& a, const CMatrix& b, ConditionKind kind, const Window& window,
                                const Tolerances& tol) {
    require_square(a, "check_condition");
    require_same_shape(a, b, "check_condition");
    ConditionReport rep;
    rep.kind = kind;
    rep.window = window;
    if (kind == ConditionKind::Bourgeois3) rep.window.l_lo = rep.window.l_hi = 1;
    const Window& w = rep.window;
    if (w.k_lo > w.k_hi || w.l_lo > w.l_hi) throw std::invalid_argument("check_condition: empty window");

    for (int k = w.k_lo; k <= w.k_hi; ++k)
        for (int l = w.l_lo; l <= w.l_hi; ++l)
            if (norm_1(double(k) * a + double(l) * b) > kExpmMaxNorm)
                throw Overflow("check_condition: window exceeds the expm norm budget");

    // e^{kA} and e^{lB} are reused across the window.
    std::vector<CMatrix> ea, eb;
    for (int k = w.k_lo; k <= w.k_hi; ++k) ea.push_back(expm(double(k) * a).value);
    for (int l = w.l_lo; l <= w.l_hi; ++l) eb.push_back(expm(double(l) * b).value);

    auto record = [&](int k, int l, const char* eq, double r) {
        rep.max_residual = std::max(rep.max_residual, r);
        if (r > tol.eps_verify) rep.violations.push_back({k, l, eq, r});
    };
    for (int k = w.k_lo; k <= w.k_hi; ++k)
        for (int l = w.l_lo; l <= w.l_hi; ++l) {
            const CMatrix& x = ea[std::size_t(k - w.k_lo)];
            const CMatrix& y = eb[std::size_t(l - w.l_lo)];
            const CMatrix xy = x * y;
            record(k, l, "product", relative_gap(expm(double(k) * a + double(l) * b).value, xy));
            if (kind != ConditionKind::Window) record(k, l, "commute", relative_gap(xy, y * x));
            ++rep.evaluated;
        }
    rep.holds = rep.violations.empty();
    return rep;
}

IntegralSpectrumReport check_integral_spectrum(const CMatrix& a, const CMatrix& b, const Window& window,
                                               const Tolerances& tol) {
    require_square(a, "check_integral_spectrum");
    require_same_shape(a, b, "check_integral_spectrum");
    IntegralSpectrumReport rep;
    for (int k = window.k_lo; k <= window.k_hi; ++k)
        for (int l = window.l_lo; l <= window.l_hi; ++l) {
            const CMatrix m = double(k) * a + double(l) * b;
            IntegralCell cell{k, l, is_diagonalizable(m, tol), true};
            const SpectrumMultiset sp = spectrum(m, tol);
            const double thr = tol.eps_cluster * sp.scale();
            for (const auto& c : cluster(sp, tol))
                if (std::abs(c.value - std::round(c.value.real())) > thr) cell.integral = false;
            rep.holds = rep.holds && cell.diagonalizable && cell.integral;
            rep.cells.push_back(cell);
        }
    return rep;
}

GammaMap gamma_map(const CMatrix& a, const CMatrix& b, int k, const Tolerances& tol) {
    require_same_shape(a, b, "gamma_map");
    if (k < 1) throw std::invalid_argument("gamma_map: k must be positive");
    GammaMap g;
    g.k = k;
    const auto la = distinct_values(exp_spectrum(a, tol), tol);
    const auto mb = distinct_values(exp_spectrum(b, tol), tol);
    for (const Cx& lambda : la)
        for (const Cx& mu : mb) g.table.push_back({lambda, mu, std::pow(lambda, k) * mu});
    return g;
}

bool gamma_injectivity(const CMatrix& a, const CMatrix& b, int k, const Tolerances& tol) {
    const GammaMap g = gamma_map(a, b, k, tol);
    double scale = 1.0;
    for (const auto& e : g.table) scale = std::max(scale, 1.0 + std::abs(e.value));
    const double thr = tol.eps_cluster * scale;
    bool injective = true;
    for (std::size_t i = 0; i < g.table.size(); ++i)
        for (std::size_t j = i + 1; j < g.table.size(); ++j) {
            const double d = std::abs(g.table[i].value - g.table[j].value);
            if (d < thr)
                injective = false;
            else if (d < 10.0 * thr)
                throw AmbiguousSeparation("gamma_injectivity: products neither equal nor separated");
        }
    return injective;
}

std::optional<int> find_injective_k(const CMatrix& a, const CMatrix& b, int kmax, const Tolerances& tol) {
    for (int k = 1; k <= kmax; ++k)
        if (gamma_injectivity(a, b, k, tol)) return k;
    return std::nullopt;
}

Condition6Report check_condition6(const CMatrix& a, const Tolerances& tol, long qmax) {
    require_square(a, "check_condition6");
    if (qmax < 1) throw std::invalid_argument("check_condition6: qmax must be positive");
    const SpectrumMultiset sp = spectrum(a, tol);
    const auto values = distinct_values(sp, tol);
    // eps_cluster * scale on eigenvalues, carried over to (lambda - mu) / 2 i pi.
    const double thr = tol.eps_cluster * sp.scale() / std::abs(kTwoPiI);
    Condition6Report rep;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (i == j) continue;
            const Cx x = (values[i] - values[j]) / kTwoPiI;
            if (std::abs(x.imag()) > thr) continue;
            const auto r = detect_rational(x.real(), thr, qmax);
            if (!r) continue;
            // Each unordered pair once, with lambda - mu on the nonnegative side.
            if (r->first < 0 || (r->first == 0 && i > j)) continue;
            rep.rational.push_back({values[i], values[j], r->first, r->second});
            rep.scaling = std::lcm(rep.scaling, r->second);
            if (r->second >= 2) rep.holds = false;
        }
    return rep;
}

Eq7Report check_eq7(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    require_square(a, "check_eq7");
    require_same_shape(a, b, "check_eq7");
    const std::size_t n = a.n();
    const CMatrix ea = expm(a).value, eb = expm(b).value;
    if (norm_fro(commutator(ea, eb)) > tol.eps_verify * std::max(1.0, norm_fro(ea) * norm_fro(eb)))
        throw HypothesisViolated("check_eq7: e^A and e^B do not commute");
    if (!gamma_injectivity(a, b, 1, tol)) throw HypothesisViolated("check_eq7: gamma_1 is not injective");

    const CMatrix eab = ea * eb;
    const SpectrumMultiset spa = exp_spectrum(a, tol), spb = exp_spectrum(b, tol);
    const SpectrumMultiset spab = spectrum(eab, tol);
    const auto cab = cluster(spab, tol);
    const double thr = tol.eps_cluster * spab.scale();

    Eq7Report rep;
    for (const Cx& mu : distinct_values(spb, tol)) {
        const Subspace lhs = char_subspace(eb, mu, spb, tol);
        Subspace rhs = Subspace::zero(n);
        for (const Cx& lambda : distinct_values(spa, tol)) {
            const EigenCluster* c = nearest_cluster(cab, lambda * mu, thr);
            if (c == nullptr) continue;
            rhs = span_sum(rhs, char_subspace(eab, c->value, spab, tol), tol);
        }
        Eq7Entry e{mu, lhs.dim(), rhs.dim(), 0.0};
        e.residual = std::max(containment_residual(lhs, rhs), containment_residual(rhs, lhs));
        if (e.dim_lhs != e.dim_rhs || e.residual > tol.eps_verify) rep.holds = false;
        rep.max_residual = std::max(rep.max_residual, e.residual);
        rep.entries.push_back(e);
    }
    return rep;
}

std::optional<PairSplitting> find_splitting(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    require_square(a, "find_splitting");
    require_same_shape(a, b, "find_splitting");
    const std::size_t n = a.n();
    if (n < 2) return std::nullopt;

    const CMatrix ea = expm(a).value, eb = expm(b).value;
    const Decomposition da = char_decomposition(a, tol), db = char_decomposition(b, tol);
    const Decomposition dea = char_decomposition(ea, tol), deb = char_decomposition(eb, tol);
    std::vector<Decomposition> candidates{da, db, dea, deb, char_decomposition(ea * eb, tol),
                                          joint_refinement(da, db, tol), joint_refinement(dea, deb, tol)};

    for (const auto& parts : candidates) {
        std::size_t total = 0;
        for (const auto& s : parts) total += s.dim();
        // Intersections need not fill C^n; such a list is not a decomposition.
        if (parts.size() < 2 || parts.size() > 20 || total != n) continue;
        // The first part always goes into F, so each split is tried once.
        const std::uint64_t count = std::uint64_t(1) << (parts.size() - 1);
        for (std::uint64_t m = 0; m < count; ++m) {
            const std::uint64_t mask = (m << 1) | 1u;
            if (mask == (std::uint64_t(1) << parts.size()) - 1) continue;
            Subspace f = union_of(parts, mask, true, n, tol);
            Subspace g = union_of(parts, mask, false, n, tol);
            if (f.dim() == 0 || g.dim() == 0 || f.dim() + g.dim() != n) continue;
            if (span_sum(f, g, tol).dim() != n) continue;
            const double r = std::max({invariance_residual(a, f), invariance_residual(b, f),
                                       invariance_residual(a, g), invariance_residual(b, g)});
            if (r <= tol.eps_verify) return PairSplitting{std::move(f), std::move(g)};
        }
    }
    return std::nullopt;
}

CommutatorReport commutator_report(const CMatrix& a, const CMatrix& b) {
    CMatrix c = commutator(a, b);
    const double nrm = norm_2_estimate(c);
    return {std::move(c), nrm};
}

}  // namespace pencillab
