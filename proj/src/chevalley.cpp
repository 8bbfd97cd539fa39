#include "pencillab/chevalley.hpp"

#include <algorithm>
#include <cmath>

#include "pencillab/errors.hpp"
#include "pencillab/polynomial.hpp"

namespace pencillab {

namespace {

const EigenCluster* find_cluster(const std::vector<EigenCluster>& cs, Cx lambda, double threshold) {
    const EigenCluster* best = nullptr;
    for (const auto& c : cs)
        if (std::abs(c.value - lambda) <= threshold &&
            (best == nullptr || std::abs(c.value - lambda) < std::abs(best->value - lambda)))
            best = &c;
    return best;
}

// Trailing `dim` columns of Q in the full pivoted QR of a^H: an approximate
// null space of a of prescribed dimension.
Subspace forced_kernel(const CMatrix& a, std::size_t dim) {
    const std::size_t n = a.cols();
    const PivotedQR f = pivoted_qr(a.adjoint(), 0.0);
    CMatrix basis(n, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = f.q(i, n - dim + j);
    return Subspace(n, std::move(basis));
}

// First m coefficients of the power series 1/q(lambda + h), given the Taylor
// coefficients of q at lambda.
std::vector<Cx> reciprocal_series(const std::vector<Cx>& t, std::size_t m) {
    std::vector<Cx> s(m, 0.0);
    s[0] = 1.0 / t[0];
    for (std::size_t k = 1; k < m; ++k) {
        Cx acc = 0.0;
        for (std::size_t j = 1; j <= k && j < t.size(); ++j) acc += t[j] * s[k - j];
        s[k] = -acc / t[0];
    }
    return s;
}

}  // namespace

double EigenprojectionSet::invariant_residual(const CMatrix& m) const {
    const std::size_t n = m.n();
    CMatrix total = CMatrix::zero(n);
    double worst = 0.0;
    const double mscale = std::max(1.0, norm_fro(m));
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        const CMatrix& p = pairs[a].projection;
        total += p;
        worst = std::max(worst, norm_fro(p * p - p));
        worst = std::max(worst, norm_fro(commutator(p, m)) / mscale);
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (a != b) worst = std::max(worst, norm_fro(p * pairs[b].projection));
    }
    return std::max(worst, norm_fro(total - CMatrix::identity(n)));
}

Subspace char_subspace(const CMatrix& m, Cx lambda, const Tolerances& tol) {
    require_square(m, "char_subspace");
    return char_subspace(m, lambda, spectrum(m, tol), tol);
}

Subspace char_subspace(const CMatrix& m, Cx lambda, const SpectrumMultiset& sp, const Tolerances& tol) {
    require_square(m, "char_subspace");
    const auto cs = cluster(sp, tol);
    const EigenCluster* c = find_cluster(cs, lambda, tol.eps_cluster * sp.scale());
    if (c == nullptr) throw NotAnEigenvalue("char_subspace: lambda is not an eigenvalue");
    // The power m (not n) suffices, since the index of the eigenvalue never
    // exceeds its multiplicity, and keeps the power better conditioned.
    const CMatrix a = power(shifted(m, -c->value), unsigned(c->multiplicity));
    Subspace k = kernel(a, tol);
    if (k.dim() != c->multiplicity) k = forced_kernel(a, c->multiplicity);
    return k;
}

EigenprojectionSet eigenprojections(const CMatrix& m, const Tolerances& tol) {
    require_square(m, "eigenprojections");
    const std::size_t n = m.n();
    const SpectrumMultiset sp = spectrum(m, tol);
    const auto cs = cluster(sp, tol);
    const double sep = 10.0 * tol.eps_cluster * sp.scale();
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b)
            if (std::abs(cs[a].value - cs[b].value) < sep)
                throw IllConditioned("eigenprojections: eigenvalue clusters too close to separate");

    // Powers (M - mu I)^{m_mu} are shared between the projections.
    std::vector<CMatrix> factors;
    factors.reserve(cs.size());
    for (const auto& c : cs) factors.push_back(power(shifted(m, -c.value), unsigned(c.multiplicity)));

    EigenprojectionSet out;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        const auto& c = cs[a];
        if (cs.size() == 1) {
            out.pairs.push_back({c.value, c.multiplicity, CMatrix::identity(n)});
            continue;
        }
        std::vector<Cx> others;
        CMatrix qm = CMatrix::identity(n);
        for (std::size_t b = 0; b < cs.size(); ++b) {
            if (b == a) continue;
            others.insert(others.end(), cs[b].multiplicity, cs[b].value);
            qm = qm * factors[b];
        }
        const CPoly q = CPoly::from_roots(others);
        const auto s = reciprocal_series(q.taylor_at(c.value), c.multiplicity);
        // s(M - lambda I) by Horner.
        const CMatrix x = shifted(m, -c.value);
        CMatrix sm = s.back() * CMatrix::identity(n);
        for (std::size_t k = s.size() - 1; k-- > 0;) sm = shifted(sm * x, s[k]);
        out.pairs.push_back({c.value, c.multiplicity, qm * sm});
    }
    return out;
}

JCDecomposition jordan_chevalley(const CMatrix& m, const Tolerances& tol) {
    require_square(m, "jordan_chevalley");
    const EigenprojectionSet ps = eigenprojections(m, tol);
    CMatrix d = CMatrix::zero(m.n());
    for (const auto& p : ps.pairs) d += p.value * p.projection;
    CMatrix nil = m - d;
    std::vector<Cx> values;
    for (const auto& p : ps.pairs) values.insert(values.end(), p.multiplicity, p.value);
    return {std::move(d), std::move(nil), SpectrumMultiset(std::move(values))};
}

}  // namespace pencillab
