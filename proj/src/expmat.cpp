#include "pencillab/expmat.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "pencillab/errors.hpp"
#include "pencillab/spectrum.hpp"
#include "pencillab/subspace.hpp"

namespace pencillab {

namespace {

// Numerator coefficients of the diagonal [13/13] Pade approximant to exp.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
    10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
    960960.0,            16380.0,             182.0,              1.0};

}  // namespace

ExpResult expm(const CMatrix& m, double max_norm) {
    require_square(m, "expm");
    const double nrm = norm_1(m);
    if (!std::isfinite(nrm) || nrm > max_norm) throw Overflow("expm: norm exceeds the configured bound");
    const std::size_t n = m.n();

    int s = 0;
    if (nrm > 0.5) s = std::max(0, int(std::ceil(std::log2(nrm / 0.5))));
    const CMatrix a = std::ldexp(1.0, -s) * m;

    const CMatrix id = CMatrix::identity(n);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    const auto& b = kPade13;

    CMatrix inner_u = Cx(b[13]) * a6 + Cx(b[11]) * a4 + Cx(b[9]) * a2;
    CMatrix u = a * (a6 * inner_u + Cx(b[7]) * a6 + Cx(b[5]) * a4 + Cx(b[3]) * a2 + Cx(b[1]) * id);
    CMatrix inner_v = Cx(b[12]) * a6 + Cx(b[10]) * a4 + Cx(b[8]) * a2;
    CMatrix v = a6 * inner_v + Cx(b[6]) * a6 + Cx(b[4]) * a4 + Cx(b[2]) * a2 + Cx(b[0]) * id;

    CMatrix r = solve(v - u, v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    if (!r.all_finite()) throw Overflow("expm: result is not finite");
    return {std::move(r), s, 13};
}

CMatrix expm_oracle(const CMatrix& m, const Tolerances& tol) {
    require_square(m, "expm_oracle");
    const double nrm = norm_1(m);
    if (nrm > 50.0) throw std::invalid_argument("expm_oracle: requires ||M||_1 <= 50");
    const std::size_t n = m.n();
    CMatrix sum = CMatrix::identity(n);
    CMatrix comp(n, n);  // Kahan compensation per entry
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= tol.max_iter; ++k) {
        term = (1.0 / double(k)) * (term * m);
        for (std::size_t i = 0; i < sum.data().size(); ++i) {
            const Cx y = term.data()[i] - comp.data()[i];
            const Cx t = sum.data()[i] + y;
            comp.data()[i] = (t - sum.data()[i]) - y;
            sum.data()[i] = t;
        }
        const double tn = norm_fro(term);
        if (tn == 0.0) return sum;
        // Before k passes ||M|| a small term may still be followed by larger ones.
        if (double(k) > nrm && tn < tol.eps_verify * norm_fro(sum)) return sum;
    }
    throw NonConvergence("expm_oracle: Taylor series did not converge within max_iter terms");
}

CMatrix unipotent_log(const CMatrix& u, const Tolerances& tol) {
    require_square(u, "unipotent_log");
    const std::size_t n = u.n();
    const CMatrix x = shifted(u, -1.0);
    const double xn = norm_1(x);
    const double bound = tol.eps_verify * std::max(1.0, std::pow(xn, double(n)));
    if (norm_1(power(x, unsigned(n))) > bound) throw NotUnipotent("unipotent_log: U - I is not nilpotent");

    CMatrix result(n, n);
    CMatrix xk = CMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) {
        xk = xk * x;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        result += Cx(sign / double(k)) * xk;
    }
    return result;
}

bool is_unit_exponential(const CMatrix& m, const Tolerances& tol) {
    require_square(m, "is_unit_exponential");
    const SpectrumMultiset s = spectrum(m, tol);
    for (const auto& c : cluster(s, tol)) {
        const double k = std::round(c.value.imag() / (2.0 * std::numbers::pi));
        if (std::abs(c.value - k * kTwoPiI) > tol.eps_cluster * (1.0 + std::abs(c.value))) return false;
    }
    return is_diagonalizable(m, tol);
}

}  // namespace pencillab
