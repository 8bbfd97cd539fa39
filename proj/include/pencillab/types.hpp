#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace pencillab {

using Cx = std::complex<double>;

/// 2iπ, the period lattice generator of the exponential.
inline constexpr Cx kTwoPiI{0.0, 2.0 * std::numbers::pi};

/// Numerical thresholds shared by every module.
///
/// eps_cluster and eps_rank are relative: eigenvalue identity is decided
/// against eps_cluster * (1 + max|lambda|) and rank against eps_rank times the
/// largest column norm.
struct Tolerances {
    double eps_root = 1e-12;
    double eps_rank = 1e-9;
    double eps_cluster = 1e-7;
    double eps_verify = 1e-8;
    int max_iter = 500;

    /// Throws std::invalid_argument if a field is non-positive or
    /// eps_cluster < eps_root.
    void validate() const;
};

/// Default seed used when callers do not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace pencillab
