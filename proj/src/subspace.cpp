#include "pencillab/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pencillab/spectrum.hpp"

namespace pencillab {

Subspace::Subspace(std::size_t ambient, CMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_) throw std::invalid_argument("Subspace: basis rows must equal ambient dimension");
}

CMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

PivotedQR pivoted_qr(const CMatrix& a, double eps_rank, double reference) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    PivotedQR f{CMatrix::identity(m), a, std::vector<std::size_t>(n), 0};
    for (std::size_t j = 0; j < n; ++j) f.pivots[j] = j;
    auto& r = f.r;

    auto col_norm = [&](std::size_t j, std::size_t from) {
        double s = 0.0;
        for (std::size_t i = from; i < m; ++i) s += std::norm(r(i, j));
        return std::sqrt(s);
    };
    double largest = 0.0;
    for (std::size_t j = 0; j < n; ++j) largest = std::max(largest, col_norm(j, 0));
    const double threshold = eps_rank * std::max(largest, reference);

    const std::size_t steps = std::min(m, n);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t p = k;
        double pn = col_norm(k, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            const double cn = col_norm(j, k);
            if (cn > pn) {
                p = j;
                pn = cn;
            }
        }
        if (pn <= threshold || pn == 0.0) break;
        if (p != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, p));
            std::swap(f.pivots[k], f.pivots[p]);
        }
        ++f.rank;

        // Householder reflector mapping r[k:, k] onto a multiple of e_k.
        CVector v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = r(i, k);
        const Cx x0 = v[0];
        const Cx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Cx(1.0);
        const Cx alpha = -phase * pn;
        v[0] -= alpha;
        const double vn = norm(v);
        if (vn == 0.0) continue;
        for (auto& z : v) z /= vn;

        for (std::size_t j = k; j < n; ++j) {
            Cx s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * r(i, j);
            for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * v[i - k] * s;
        }
        for (std::size_t i = 0; i < m; ++i) {
            Cx s = 0.0;
            for (std::size_t l = k; l < m; ++l) s += f.q(i, l) * v[l - k];
            for (std::size_t l = k; l < m; ++l) f.q(i, l) -= 2.0 * s * std::conj(v[l - k]);
        }
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    }
    return f;
}

Subspace kernel(const CMatrix& a, const Tolerances& tol, double reference) {
    const std::size_t n = a.cols();
    if (a.rows() == 0) return Subspace::whole(n);
    const PivotedQR f = pivoted_qr(a.adjoint(), tol.eps_rank, reference);
    CMatrix basis(n, n - f.rank);
    for (std::size_t j = f.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j - f.rank) = f.q(i, j);
    return Subspace(n, std::move(basis));
}

Subspace column_span(const CMatrix& vectors, const Tolerances& tol) {
    const std::size_t n = vectors.rows();
    if (vectors.cols() == 0) return Subspace::zero(n);
    const PivotedQR f = pivoted_qr(vectors, tol.eps_rank);
    CMatrix basis(n, f.rank);
    for (std::size_t j = 0; j < f.rank; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = f.q(i, j);
    return Subspace(n, std::move(basis));
}

Subspace span_sum(const Subspace& f, const Subspace& g, const Tolerances& tol) {
    if (f.ambient() != g.ambient()) throw std::invalid_argument("span_sum: ambient dimension mismatch");
    CMatrix both(f.ambient(), f.dim() + g.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) both.set_column(j, f.vector(j));
    for (std::size_t j = 0; j < g.dim(); ++j) both.set_column(f.dim() + j, g.vector(j));
    return column_span(both, tol);
}

Subspace intersect(const Subspace& f, const Subspace& g, const Tolerances& tol) {
    if (f.ambient() != g.ambient()) throw std::invalid_argument("intersect: ambient dimension mismatch");
    const std::size_t n = f.ambient();
    if (f.dim() == 0 || g.dim() == 0) return Subspace::zero(n);
    CMatrix both(n, f.dim() + g.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) both.set_column(j, f.vector(j));
    for (std::size_t j = 0; j < g.dim(); ++j) {
        CVector v = g.vector(j);
        for (auto& z : v) z = -z;
        both.set_column(f.dim() + j, v);
    }
    const Subspace k = kernel(both, tol, 1.0);
    CMatrix image(n, k.dim());
    for (std::size_t j = 0; j < k.dim(); ++j) {
        CVector a(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i) a[i] = k.basis()(i, j);
        image.set_column(j, f.basis() * std::span<const Cx>(a));
    }
    return column_span(image, tol);
}

double containment_residual(const Subspace& f, const Subspace& g) {
    if (f.ambient() != g.ambient()) throw std::invalid_argument("containment_residual: ambient mismatch");
    const CMatrix& q = f.basis();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.dim(); ++k) {
        CVector v = g.vector(k);
        const CVector coeff = q.adjoint() * std::span<const Cx>(v);
        const CVector proj = q * std::span<const Cx>(coeff);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj[i];
        worst = std::max(worst, norm(v));
    }
    return worst;
}

double invariance_residual(const CMatrix& m, const Subspace& f) {
    if (f.dim() == 0) return 0.0;
    const CMatrix image = m * f.basis();
    const CMatrix q = f.basis();
    const CMatrix outside = image - q * (q.adjoint() * image);
    double worst = 0.0;
    for (std::size_t k = 0; k < outside.cols(); ++k) worst = std::max(worst, norm(outside.column(k)));
    return worst / std::max(1.0, norm_fro(m));
}

bool is_diagonalizable(const CMatrix& m, const Tolerances& tol) {
    require_square(m, "is_diagonalizable");
    const double ref = norm_fro(m);
    for (const auto& c : cluster(spectrum(m, tol), tol)) {
        if (c.multiplicity == 1) continue;
        if (kernel(shifted(m, -c.value), tol, ref).dim() != c.multiplicity) return false;
    }
    return true;
}

std::optional<CVector> common_eigenvector(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    require_square(a, "common_eigenvector");
    require_same_shape(a, b, "common_eigenvector");
    const double ref_a = norm_fro(a);
    const double ref_b = norm_fro(b);
    for (const auto& ca : cluster(spectrum(a, tol), tol)) {
        const Subspace eig = kernel(shifted(a, -ca.value), tol, ref_a);
        if (eig.dim() == 0) continue;
        const CMatrix& q = eig.basis();
        const CMatrix bq = b * q;
        // An eigenvector v = Q x of B inside the eigenspace forces x to be an
        // eigenvector of the compression Q^H B Q with (B Q - mu Q) x = 0.
        const CMatrix compressed = q.adjoint() * bq;
        for (const auto& cb : cluster(spectrum(compressed, tol), tol)) {
            const CMatrix stacked = bq - cb.value * q;
            const Subspace sol = kernel(stacked, tol, ref_b);
            if (sol.dim() == 0) continue;
            CVector v = q * std::span<const Cx>(sol.basis().column(0));
            const double nv = norm(v);
            for (auto& z : v) z /= nv;
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace pencillab
