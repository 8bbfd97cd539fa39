#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/spectrum.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// Univariate complex polynomial, coefficients in ascending degree order.
/// Trailing zero coefficients are stripped, so the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
class CPoly {
   public:
    CPoly() = default;
    explicit CPoly(std::vector<Cx> ascending);

    /// Monic polynomial prod (X - r) over the given roots.
    static CPoly from_roots(std::span<const Cx> roots);

    const std::vector<Cx>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == Cx(1.0); }
    Cx leading() const { return coeffs_.empty() ? Cx(0.0) : coeffs_.back(); }
    Cx operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Cx(0.0); }

    Cx operator()(Cx z) const;
    CPoly derivative() const;
    /// Taylor coefficients p^(j)(c)/j! for j = 0..degree, by repeated
    /// synthetic division.
    std::vector<Cx> taylor_at(Cx c) const;

   private:
    std::vector<Cx> coeffs_;
};

CPoly operator*(const CPoly& a, const CPoly& b);

/// det(X I - M) by the Faddeev-LeVerrier trace recurrence.
CPoly charpoly(const CMatrix& m);

/// All roots of p with multiplicity.
///
/// Aberth-Ehrlich simultaneous iteration from a jittered golden-angle circle
/// of radius 1 + max|coeff|, followed by a multiplicity-aware polish: a group
/// of nearby roots whose refined center is a numerical m-fold root is replaced
/// by m copies of the center. "Numerical m-fold" means the first m Taylor
/// coefficients of p vanish there to min(eps_root, eps_cluster^2 / 16)
/// relative to a coefficient majorant of radius `scale`; for m = 2 this merges
/// pairs closer than about eps_cluster * scale.
///
/// `scale` is the magnitude the coefficients' rounding errors are relative to
/// (for a characteristic polynomial, 1 + ||M||); 0 means "derive from the
/// computed roots".
///
/// Throws NonConvergence if some root does not meet the residual bound after
/// max_iter sweeps; std::invalid_argument for degree < 1.
SpectrumMultiset roots(const CPoly& p, const Tolerances& tol = {}, std::uint64_t seed = kDefaultSeed,
                       double scale = 0.0);

/// U_N(z): the N complex N-th roots of z (all zero when z = 0).
std::vector<Cx> nth_roots(Cx z, int n);

}  // namespace pencillab
