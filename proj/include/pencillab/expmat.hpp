#pragma once

#include "pencillab/matrix.hpp"
#include "pencillab/types.hpp"

namespace pencillab {

struct ExpResult {
    CMatrix value;
    int scaling_steps = 0;
    int pade_order = 13;
};

/// Default norm budget for expm; larger inputs raise Overflow.
inline constexpr double kExpmMaxNorm = 1e3;

/// e^M by scaling and squaring with the [13/13] Pade approximant. The scaling
/// brings ||M||_1 / 2^s down to at most 0.5.
ExpResult expm(const CMatrix& m, double max_norm = kExpmMaxNorm);

/// Independent reference: Taylor partial sums with compensated summation,
/// stopped once a term drops below eps_verify times the running sum. Requires
/// ||M||_1 <= 50; throws NonConvergence if max_iter terms do not suffice.
CMatrix expm_oracle(const CMatrix& m, const Tolerances& tol = {});

/// Logarithm of a unipotent matrix through the terminating series
/// sum_{k=1}^{n-1} (-1)^{k+1}/k (U - I)^k. Throws NotUnipotent unless
/// ||(U - I)^n|| <= eps_verify * max(1, ||U - I||^n).
CMatrix unipotent_log(const CMatrix& u, const Tolerances& tol = {});

/// True iff e^M = I: M diagonalizable with every eigenvalue within
/// eps_cluster * (1 + |lambda|) of 2 i pi Z.
bool is_unit_exponential(const CMatrix& m, const Tolerances& tol = {});

}  // namespace pencillab
