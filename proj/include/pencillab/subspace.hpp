#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// Linear subspace of C^n held as an orthonormal basis (columns of an n x dim
/// matrix).
class Subspace {
   public:
    Subspace() = default;
    /// Takes ownership of an n x dim matrix with orthonormal columns.
    Subspace(std::size_t ambient, CMatrix basis);
    static Subspace zero(std::size_t ambient) { return Subspace(ambient, CMatrix(ambient, 0)); }
    static Subspace whole(std::size_t ambient) { return Subspace(ambient, CMatrix::identity(ambient)); }

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const CMatrix& basis() const noexcept { return basis_; }
    CVector vector(std::size_t k) const { return basis_.column(k); }

    /// Orthogonal projector onto the subspace, Q Q^H.
    CMatrix projector() const;

   private:
    std::size_t ambient_ = 0;
    CMatrix basis_;
};

/// Column-pivoted Householder QR: a * P = Q R with Q square unitary.
struct PivotedQR {
    CMatrix q;                          // rows x rows
    CMatrix r;                          // rows x cols, upper trapezoidal
    std::vector<std::size_t> pivots;    // column order
    std::size_t rank = 0;
};

/// Numerical rank counts |R_kk| > eps_rank * max(largest column norm of a,
/// reference). A positive reference keeps a matrix that is pure rounding noise
/// (say M - lambda I for M = lambda I) from being read as full rank.
PivotedQR pivoted_qr(const CMatrix& a, double eps_rank, double reference = 0.0);

/// Orthonormal basis of the numerical null space of a (any shape; the result
/// lives in C^{cols}). See pivoted_qr for `reference`.
Subspace kernel(const CMatrix& a, const Tolerances& tol = {}, double reference = 0.0);

/// Orthonormal basis of the column span of the given vectors/matrix.
Subspace column_span(const CMatrix& vectors, const Tolerances& tol = {});

/// Sum F + G (not necessarily direct).
Subspace span_sum(const Subspace& f, const Subspace& g, const Tolerances& tol = {});

/// F intersected with G, from the kernel of [Q_F | -Q_G].
Subspace intersect(const Subspace& f, const Subspace& g, const Tolerances& tol = {});

/// Largest ||(I - P_f) g_k|| over the basis of g: 0 when g is inside f.
double containment_residual(const Subspace& f, const Subspace& g);

/// Largest ||(I - P_f) M f_k|| over the basis of f, relative to max(1, ||M||_F).
double invariance_residual(const CMatrix& m, const Subspace& f);

/// True iff every clustered eigenvalue has geometric multiplicity equal to its
/// algebraic multiplicity.
bool is_diagonalizable(const CMatrix& m, const Tolerances& tol = {});

/// Unit vector v with A v parallel to v and B v parallel to v, if one exists.
std::optional<CVector> common_eigenvector(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

}  // namespace pencillab
