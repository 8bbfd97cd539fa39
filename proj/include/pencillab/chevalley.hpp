#pragma once

#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/spectrum.hpp"
#include "pencillab/subspace.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

struct Eigenprojection {
    Cx value;
    std::size_t multiplicity = 0;
    CMatrix projection;
};

/// One projection per distinct eigenvalue, in canonical cluster order.
struct EigenprojectionSet {
    std::vector<Eigenprojection> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
    /// Largest of ||sum P - I||, ||P^2 - P||, ||P_a P_b|| and ||P M - M P||
    /// (Frobenius), the last relative to max(1, ||M||_F).
    double invariant_residual(const CMatrix& m) const;
};

struct JCDecomposition {
    CMatrix d;
    CMatrix n;
    SpectrumMultiset eigenvalues;
};

/// C_lambda(M) = Ker (M - lambda I)^m, m the algebraic multiplicity of the
/// eigenvalue cluster containing lambda. The returned dimension is m.
/// Throws NotAnEigenvalue if lambda is not within eps_cluster * scale of Sp(M).
Subspace char_subspace(const CMatrix& m, Cx lambda, const Tolerances& tol = {});

/// Same, for a spectrum that has already been computed.
Subspace char_subspace(const CMatrix& m, Cx lambda, const SpectrumMultiset& sp, const Tolerances& tol = {});

/// Eigenprojections by Hermite interpolation: P_lambda = p(M) with
/// p = 1 mod (x - lambda)^{m_lambda} and p = 0 mod (x - mu)^{m_mu}.
/// Throws IllConditioned when two distinct clusters are closer than
/// 10 * eps_cluster * scale.
EigenprojectionSet eigenprojections(const CMatrix& m, const Tolerances& tol = {});

/// M = D + N with D = sum lambda P_lambda.
JCDecomposition jordan_chevalley(const CMatrix& m, const Tolerances& tol = {});

}  // namespace pencillab
