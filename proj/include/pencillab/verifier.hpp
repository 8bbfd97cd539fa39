#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/subspace.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

/// Bourgeois3: e^{kA+B} = e^{kA} e^B = e^B e^{kA} for k in the window (l = 1).
/// TwoSided4: e^{kA+lB} = e^{kA} e^{lB} = e^{lB} e^{kA} over the window.
/// Window: e^{kA+lB} = e^{kA} e^{lB} only.
enum class ConditionKind { Bourgeois3, TwoSided4, Window };

const char* to_string(ConditionKind kind);

/// Inclusive integer ranges. Bourgeois3 ignores the l range.
struct Window {
    int k_lo = -3, k_hi = 3;
    int l_lo = -3, l_hi = 3;
};

/// k in [0, 6] for Bourgeois3, [-3, 3]^2 otherwise.
Window default_window(ConditionKind kind);

struct ConditionViolation {
    int k = 0;
    int l = 0;
    std::string equation;  // "product" or "commute"
    double residual = 0.0;
};

struct ConditionReport {
    ConditionKind kind = ConditionKind::Window;
    Window window;
    bool holds = true;
    std::vector<ConditionViolation> violations;  // lattice order, k then l
    double max_residual = 0.0;
    std::size_t evaluated = 0;  // number of (k, l) points
};

/// Residuals are ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F); a point
/// violates when the residual exceeds eps_verify. Only a finite window is
/// examined, so holds == true says nothing outside it. Throws Overflow when
/// some ||kA + lB||_1 exceeds the expm norm budget.
ConditionReport check_condition(const CMatrix& a, const CMatrix& b, ConditionKind kind, const Window& window,
                                const Tolerances& tol = {});
ConditionReport check_condition(const CMatrix& a, const CMatrix& b, ConditionKind kind, const Tolerances& tol = {});

struct IntegralCell {
    int k = 0;
    int l = 0;
    bool diagonalizable = false;
    bool integral = false;
};

struct IntegralSpectrumReport {
    bool holds = true;
    std::vector<IntegralCell> cells;
};

/// kA + lB diagonalizable with every eigenvalue within eps_cluster * scale of
/// an integer, for each (k, l) in the window.
IntegralSpectrumReport check_integral_spectrum(const CMatrix& a, const CMatrix& b, const Window& window,
                                               const Tolerances& tol = {});

struct GammaEntry {
    Cx lambda;  // in Sp(e^A)
    Cx mu;      // in Sp(e^B)
    Cx value;   // lambda^k mu
};

struct GammaMap {
    int k = 1;
    std::vector<GammaEntry> table;  // |Sp(e^A)| * |Sp(e^B)| entries
};

/// Sp(e^A) and Sp(e^B) are the clustered exponentials of the clustered
/// eigenvalues of A and B.
GammaMap gamma_map(const CMatrix& a, const CMatrix& b, int k, const Tolerances& tol = {});

/// True iff all products are pairwise farther apart than eps_cluster * scale.
/// Throws AmbiguousSeparation if some gap lies in [1, 10) * eps_cluster * scale.
bool gamma_injectivity(const CMatrix& a, const CMatrix& b, int k, const Tolerances& tol = {});

/// Smallest k in 1..kmax with gamma_k injective.
std::optional<int> find_injective_k(const CMatrix& a, const CMatrix& b, int kmax, const Tolerances& tol = {});

struct RationalDifference {
    Cx lambda;
    Cx mu;
    long num = 0;  // (lambda - mu) / 2 i pi = num / den
    long den = 1;
};

struct Condition6Report {
    bool holds = true;
    /// Pairs whose difference was detected in 2 i pi Q, integers included.
    std::vector<RationalDifference> rational;
    /// lcm of the detected denominators: p * E lies in Z.
    long scaling = 1;
};

/// lambda - mu in 2 i pi Q implies lambda - mu in 2 i pi Z, over distinct
/// eigenvalue pairs. Rationality is detected by continued fractions with
/// denominators up to qmax; a difference that is not detected counts as
/// irrational, so a denominator above qmax goes unnoticed.
Condition6Report check_condition6(const CMatrix& a, const Tolerances& tol = {}, long qmax = 64);

struct Eq7Entry {
    Cx mu;
    std::size_t dim_lhs = 0;
    std::size_t dim_rhs = 0;
    double residual = 0.0;  // mutual containment
};

struct Eq7Report {
    bool holds = true;
    std::vector<Eq7Entry> entries;  // one per mu in Sp(e^B)
    double max_residual = 0.0;
};

/// C_mu(e^B) against the sum over lambda in Sp(e^A) of C_{lambda mu}(e^A e^B).
/// A product lambda mu that is not an eigenvalue of e^A e^B contributes {0}.
/// Throws HypothesisViolated unless e^A and e^B commute within eps_verify and
/// gamma_1 is injective.
Eq7Report check_eq7(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

struct PairSplitting {
    Subspace f;
    Subspace g;
};

/// C^n = F + G (direct), both invariant under A and B. Candidates are unions
/// of the characteristic subspaces of A, B, e^A, e^B and e^A e^B, and of the
/// nonzero intersections C_lambda(A) & C_mu(B), C_lambda(e^A) & C_mu(e^B).
/// nullopt does not mean the pair is indecomposable.
std::optional<PairSplitting> find_splitting(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

struct CommutatorReport {
    CMatrix value;
    double norm = 0.0;  // operator 2-norm estimate
};

CommutatorReport commutator_report(const CMatrix& a, const CMatrix& b);

struct ClaimResult {
    bool ok = false;
    std::string detail;
};

struct Claim {
    std::string name;
    std::function<ClaimResult(const Tolerances&)> check;
};

struct GalleryCase {
    std::string name;
    std::string description;
    CMatrix a, b;
    // Entries as stored in files: a = factor * raw_a with factor 2 i pi when
    // scale == "2pi_i".
    CMatrix raw_a, raw_b;
    std::string scale = "1";
    std::vector<Claim> claims;
};

/// tu, semigroup2x2, commuting, shift, triangularizable.
std::vector<GalleryCase> gallery(std::uint64_t seed = kDefaultSeed);

std::optional<GalleryCase> gallery_case(const std::string& name, std::uint64_t seed = kDefaultSeed);

}  // namespace pencillab
