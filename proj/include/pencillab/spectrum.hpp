#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// Multiset of complex numbers (typically eigenvalues with algebraic
/// multiplicity), kept in canonical lexicographic (re, im) order so that two
/// multisets built from the same values compare equal element by element.
class SpectrumMultiset {
   public:
    SpectrumMultiset() = default;
    explicit SpectrumMultiset(std::vector<Cx> values);

    const std::vector<Cx>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Cx& operator[](std::size_t i) const { return values_[i]; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    /// 1 + max|value|, the scale eps_cluster is measured against.
    double scale() const noexcept;
    Cx sum() const noexcept;
    Cx product() const noexcept;

   private:
    std::vector<Cx> values_;
};

/// A group of eigenvalues considered equal, represented by their mean.
struct EigenCluster {
    Cx value;
    std::size_t multiplicity = 0;
};

/// Single-linkage clustering at eps_cluster * scale(). Clusters come back in
/// canonical order of their representative values.
std::vector<EigenCluster> cluster(const SpectrumMultiset& s, const Tolerances& tol);

/// Number of distinct eigenvalues after clustering.
std::size_t distinct_count(const SpectrumMultiset& s, const Tolerances& tol);

/// Permutation sigma with |s[k] - t[sigma[k]]| <= eps_cluster * max(scale(s), scale(t))
/// for every k, chosen by minimum total cost; nullopt if no assignment fits.
std::optional<std::vector<std::size_t>> multiset_match(const SpectrumMultiset& s, const SpectrumMultiset& t,
                                                       const Tolerances& tol);

/// Minimum-cost perfect assignment for a square cost matrix (Hungarian
/// method). Returns assignment[row] = column.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// OSp(M): eigenvalues of M with algebraic multiplicity, via the
/// characteristic polynomial and simultaneous root iteration.
SpectrumMultiset spectrum(const CMatrix& m, const Tolerances& tol = {}, std::uint64_t seed = kDefaultSeed);

}  // namespace pencillab
