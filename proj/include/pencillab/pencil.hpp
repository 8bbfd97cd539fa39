#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pencillab/chevalley.hpp"
#include "pencillab/matrix.hpp"
#include "pencillab/spectrum.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// The map z -> A + zB.
class Pencil {
   public:
    /// Throws std::invalid_argument unless A and B are square of equal size.
    Pencil(CMatrix a, CMatrix b);

    const CMatrix& a() const noexcept { return a_; }
    const CMatrix& b() const noexcept { return b_; }
    std::size_t n() const noexcept { return a_.n(); }
    CMatrix at(Cx z) const { return a_ + z * b_; }

   private:
    CMatrix a_;
    CMatrix b_;
};

/// OSp(A + zB).
SpectrumMultiset sample_spectrum(const Pencil& p, Cx z, const Tolerances& tol = {});

struct PencilProfile {
    std::size_t p = 0;                   // generic number of distinct eigenvalues
    std::vector<Cx> exceptional_points;  // confirmed, sorted by (re, im)
    std::size_t samples_used = 0;
    std::uint64_t seed = 0;
    /// Set when p < n: the discriminant vanishes identically, so no
    /// exceptional points are searched for.
    bool degenerate_discriminant = false;
};

/// Generic eigenvalue count from >= 20 seeded samples in the disk |z| <= 10,
/// and exceptional points as confirmed roots of the z-polynomial
/// disc(z) = prod_{i<j} (lambda_i(z) - lambda_j(z))^2, whose coefficients are
/// recovered by a DFT of n(n-1)+1 samples on a circle.
PencilProfile profile(const Pencil& p, const Tolerances& tol = {}, std::uint64_t seed = kDefaultSeed);

/// Leading Puiseux term b * (z - z0)^(order / d) of one cycle.
struct LeadingTerm {
    Cx b;
    int order = 0;
};

struct BranchCycle {
    std::size_t d = 0;
    Cx value_at_center;
    std::optional<LeadingTerm> leading_term;  // absent for a constant branch
    std::vector<std::size_t> members;         // indices into the starting spectrum
};

struct BranchStructure {
    Cx center;
    double radius = 0.0;  // radius actually used after retries
    std::size_t points = 0;
    std::size_t q = 0;
    std::vector<BranchCycle> cycles;
    std::vector<std::size_t> monodromy;  // start index -> end index after one loop
};

struct BranchOptions {
    double radius = 1e-2;
    std::size_t points = 64;
    int retries = 5;  // radius halvings after an ambiguous loop
};

/// Monodromy of the eigenvalues of A + zB around z0: eigenvalues are sampled
/// on z0 + r e^{i theta}, continued angle to angle by nearest matching, and the
/// permutation after one loop is split into cycles. A step is ambiguous when
/// the second-nearest distinct candidate lies within twice the nearest
/// distance. Throws TrackingAmbiguous after the retries are exhausted.
BranchStructure branch_structure(const Pencil& p, Cx z0, const Tolerances& tol = {}, const BranchOptions& opt = {});

/// Eigenvalue paths around the circle, as used by branch_structure:
/// values[k][j] is branch j at angle 2 pi k / points. Branch j starts at the
/// j-th element of OSp(A + (z0 + r) B).
struct TrackedLoop {
    std::vector<Cx> z;
    std::vector<std::vector<Cx>> values;
    std::vector<std::size_t> monodromy;
};
TrackedLoop track_circle(const Pencil& p, Cx z0, double radius, std::size_t points, const Tolerances& tol = {});

struct AffineForm {
    Cx c;  // value at z = 0
    Cx b;  // slope
    Cx operator()(Cx z) const { return c + b * z; }
};

/// n affine maps with OSp(A + zB) = [c_k + b_k z].
struct AffineFamily {
    std::vector<AffineForm> forms;
    SpectrumMultiset evaluate(Cx z) const;
};

/// n linear forms on span(basis): OSp(sum_i x_i basis_i) = [sum_i forms[k][i] x_i].
struct LinearFormFamily {
    std::vector<std::size_t> basis_indices;  // positions in the generator list
    std::vector<CMatrix> basis;
    std::vector<std::vector<Cx>> forms;  // n rows of r coefficients
    SpectrumMultiset evaluate(const std::vector<Cx>& x) const;
};

/// Number of random validation points used by the certificates: 2n + 1.
std::size_t certificate_points(std::size_t n);

/// Property L for (A, B): pairs OSp(A) with slopes read off OSp(A + B),
/// filtered at two seeded points and certified at 2n + 1 further seeded points
/// in |z| <= 2. Returns nullopt when no family certifies. Throws
/// AmbiguousMatching if two different families both certify.
std::optional<AffineFamily> property_L_pair(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {},
                                            std::uint64_t seed = kDefaultSeed);

/// Property L for span(generators): the generators are reduced to a basis,
/// forms are extended one basis element at a time through property_L_pair on
/// positively weighted partial sums, and the result is certified at 2n + 1
/// seeded coefficient tuples.
std::optional<LinearFormFamily> property_L_span(const std::vector<CMatrix>& generators, const Tolerances& tol = {},
                                                std::uint64_t seed = kDefaultSeed);

/// Pairwise collision points of distinct forms (each reported once).
std::vector<Cx> collision_points(const AffineFamily& f, const Tolerances& tol = {});

/// E = { k in Z : f_i(k) = f_j(k) for some f_i != f_j }, ascending.
std::vector<long> exceptional_integers(const AffineFamily& f, const Tolerances& tol = {});

struct ProjectionTrajectory {
    std::vector<EigenprojectionSet> sets;  // one per z, consistently labeled
    std::vector<double> branch_deviation;  // max_{z,z'} ||P_i(z) - P_i(z')||_F
    double max_deviation = 0.0;
};

/// Eigenprojections of A + zB along zs, labeled by nearest-projection matching
/// between consecutive points. Throws std::invalid_argument if the number of
/// distinct eigenvalues changes along zs (a point is not regular).
ProjectionTrajectory eigenprojection_trajectory(const Pencil& p, const std::vector<Cx>& zs,
                                                const Tolerances& tol = {});

}  // namespace pencillab
