#include <cmath>
#include <sstream>

#include "pencillab/errors.hpp"
#include "pencillab/expmat.hpp"
#include "pencillab/pencil.hpp"
#include "pencillab/polynomial.hpp"
#include "pencillab/random.hpp"
#include "pencillab/verifier.hpp"

namespace pencillab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

ClaimResult at_most(double value, double bound, const std::string& what) {
    return {value <= bound, what + " = " + fmt(value) + " (<= " + fmt(bound) + ")"};
}

ClaimResult at_least(double value, double bound, const std::string& what) {
    return {value >= bound, what + " = " + fmt(value) + " (>= " + fmt(bound) + ")"};
}

double identity_residual(const CMatrix& m) { return norm_fro(expm(m).value - CMatrix::identity(m.n())); }

bool contains_point(const std::vector<Cx>& pts, Cx z, double tol) {
    for (const Cx& p : pts)
        if (std::abs(p - z) <= tol) return true;
    return false;
}

ClaimResult has_property_l(const CMatrix& a, const CMatrix& b, const Tolerances& tol, bool expected) {
    const bool got = property_L_pair(a, b, tol).has_value();
    return {got == expected, got ? "family certified" : "no family certified"};
}

ClaimResult condition_holds(const CMatrix& a, const CMatrix& b, ConditionKind kind, const Window& w,
                            const Tolerances& tol) {
    const auto r = check_condition(a, b, kind, w, tol);
    return {r.holds, std::to_string(r.violations.size()) + " violations, max residual " + fmt(r.max_residual)};
}

ClaimResult violated_at_negative_index(const CMatrix& a, const CMatrix& b, const Window& w, const Tolerances& tol) {
    const auto r = check_condition(a, b, ConditionKind::TwoSided4, w, tol);
    for (const auto& v : r.violations)
        if (v.k < 0 || v.l < 0)
            return {true, "violated at (" + std::to_string(v.k) + ", " + std::to_string(v.l) + "), residual " +
                              fmt(v.residual)};
    return {false, std::to_string(r.violations.size()) + " violations, none with a negative index"};
}

ClaimResult commutator_small(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    return at_most(commutator_report(a, b).norm, tol.eps_verify * std::max(1.0, norm_fro(a) * norm_fro(b)),
                   "||[A,B]||");
}

GalleryCase tu_case() {
    GalleryCase c;
    c.name = "tu";
    c.description = "3x3 pair with e^{tA+B} = I for t >= 0, property L and AB != BA";
    c.scale = "2pi_i";
    c.raw_a = CMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 0}};
    c.raw_b = CMatrix{{2, 1, 1}, {1, 3, -2}, {1, 1, 0}};
    c.a = kTwoPiI * c.raw_a;
    c.b = kTwoPiI * c.raw_b;
    const CMatrix a = c.a, b = c.b;

    c.claims.push_back({"e^A = I", [=](const Tolerances&) { return at_most(identity_residual(a), 1e-8, "residual"); }});
    c.claims.push_back({"e^B = I", [=](const Tolerances&) { return at_most(identity_residual(b), 1e-8, "residual"); }});
    c.claims.push_back({"e^{tA+B} = I for t = 0..10", [=](const Tolerances&) {
                            double worst = 0.0;
                            for (int t = 0; t <= 10; ++t) worst = std::max(worst, identity_residual(double(t) * a + b));
                            return at_most(worst, 1e-8, "max residual");
                        }});
    c.claims.push_back({"charpoly(tA+B) = X(X - 2ipi(t+2))(X - 2ipi(2t+3)) for t = 0..5", [=](const Tolerances&) {
                            double worst = 0.0;
                            for (int t = 0; t <= 5; ++t) {
                                const std::vector<Cx> r{0.0, kTwoPiI * double(t + 2), kTwoPiI * double(2 * t + 3)};
                                const CPoly want = CPoly::from_roots(r);
                                const CPoly got = charpoly(double(t) * a + b);
                                for (std::size_t i = 0; i <= 3; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
                            }
                            return at_most(worst, 1e-8, "max coefficient error");
                        }});
    c.claims.push_back({"no common eigenvector", [=](const Tolerances& tol) {
                            const bool found = common_eigenvector(a, b, tol).has_value();
                            return ClaimResult{!found, found ? "common eigenvector found" : "none"};
                        }});
    c.claims.push_back({"||[A,B]|| > 1", [=](const Tolerances&) {
                            const double v = commutator_report(a, b).norm;
                            return ClaimResult{v > 1.0, "||[A,B]|| = " + fmt(v)};
                        }});
    c.claims.push_back({"e^{kA+B} = e^{kA} e^B = e^B e^{kA} for k = 0..5", [=](const Tolerances& tol) {
                            return condition_holds(a, b, ConditionKind::Bourgeois3, Window{0, 5, 1, 1}, tol);
                        }});
    c.claims.push_back({"e^{kA+lB} = e^{kA} e^{lB} fails on [-2,2]^2 with k < 0", [=](const Tolerances& tol) {
                            const auto r = check_condition(a, b, ConditionKind::TwoSided4, Window{-2, 2, -2, 2}, tol);
                            for (const auto& v : r.violations)
                                if (v.k < 0) return ClaimResult{true, "violated at k = " + std::to_string(v.k) +
                                                                          ", l = " + std::to_string(v.l)};
                            return ClaimResult{false, std::to_string(r.violations.size()) + " violations"};
                        }});
    c.claims.push_back({"one-sided condition on [0,6] and [0,2n] gives property L", [=](const Tolerances& tol) {
                            const bool c6 = check_condition(a, b, ConditionKind::Bourgeois3, Window{0, 6, 1, 1}, tol).holds;
                            const int two_n = 2 * int(a.n());
                            const bool c2n = check_condition(a, b, ConditionKind::Bourgeois3, Window{0, two_n, 1, 1}, tol).holds;
                            if (!(c6 && c2n)) return ClaimResult{false, "one-sided condition fails on the window"};
                            return has_property_l(a, b, tol, true);
                        }});
    c.claims.push_back({"exceptional points of B + zA are -1, -3/2, -2", [=](const Tolerances& tol) {
                            const auto pr = profile(Pencil(b, a), tol);
                            const bool ok = pr.p == 3 && pr.exceptional_points.size() == 3 &&
                                            contains_point(pr.exceptional_points, -1.0, 1e-6) &&
                                            contains_point(pr.exceptional_points, -1.5, 1e-6) &&
                                            contains_point(pr.exceptional_points, -2.0, 1e-6);
                            return ClaimResult{ok, "p = " + std::to_string(pr.p) + ", " +
                                                       std::to_string(pr.exceptional_points.size()) + " points"};
                        }});
    c.claims.push_back({"exceptional integers are -2, -1", [=](const Tolerances& tol) {
                            const auto f = property_L_pair(b, a, tol);
                            if (!f) return ClaimResult{false, "no family certified"};
                            const auto e = exceptional_integers(*f, tol);
                            return ClaimResult{e == std::vector<long>{-2, -1}, std::to_string(e.size()) + " integers"};
                        }});
    c.claims.push_back({"(tA+B)/2ipi has integral spectrum for t = 0..3", [=](const Tolerances& tol) {
                            const Cx s = 1.0 / kTwoPiI;
                            const auto r = check_integral_spectrum(s * a, s * b, {0, 3, 1, 1}, tol);
                            return ClaimResult{r.holds, std::to_string(r.cells.size()) + " cells"};
                        }});
    c.claims.push_back({"gamma_1 injective and C_mu(e^B) splits over C_{lambda mu}(e^A e^B)", [=](const Tolerances& tol) {
                            if (!gamma_injectivity(a, b, 1, tol)) return ClaimResult{false, "gamma_1 not injective"};
                            const auto r = check_eq7(a, b, tol);
                            return ClaimResult{r.holds, "max residual " + fmt(r.max_residual)};
                        }});
    return c;
}

GalleryCase semigroup_case() {
    GalleryCase c;
    c.name = "semigroup2x2";
    c.description = "2x2 pair with e^A = e^B = e^{A+B} = I and AB != BA";
    c.a = c.raw_a = CMatrix{{0, 0}, {0, kTwoPiI}};
    c.b = c.raw_b = CMatrix{{0, 1}, {0, kTwoPiI}};
    const CMatrix a = c.a, b = c.b;

    c.claims.push_back({"e^A = e^B = e^{A+B} = I", [=](const Tolerances&) {
                            const double r = std::max({identity_residual(a), identity_residual(b), identity_residual(a + b)});
                            return at_most(r, 1e-10, "max residual");
                        }});
    c.claims.push_back({"||[A,B]|| > 0.5", [=](const Tolerances&) {
                            const double v = commutator_report(a, b).norm;
                            return ClaimResult{v > 0.5, "||[A,B]|| = " + fmt(v)};
                        }});
    c.claims.push_back({"two-sided condition fails at a negative index on [-3,3]^2", [=](const Tolerances& tol) {
                            return violated_at_negative_index(a, b, {-3, 3, -3, 3}, tol);
                        }});
    c.claims.push_back({"two-sided condition holds on [0,3]^2", [=](const Tolerances& tol) {
                            return condition_holds(a, b, ConditionKind::TwoSided4, Window{0, 3, 0, 3}, tol);
                        }});
    c.claims.push_back({"no splitting among the candidates", [=](const Tolerances& tol) {
                            const bool found = find_splitting(a, b, tol).has_value();
                            return ClaimResult{!found, found ? "splitting found" : "none"};
                        }});
    c.claims.push_back({"differences of eigenvalues of A in 2 i pi Q lie in 2 i pi Z", [=](const Tolerances& tol) {
                            const auto r = check_condition6(a, tol);
                            return ClaimResult{r.holds, "scaling integer " + std::to_string(r.scaling)};
                        }});
    return c;
}

GalleryCase commuting_case(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = 4;
    const CMatrix x = rng.matrix(n, 0.5);
    CMatrix a = x * x + Cx(0.3, -0.2) * x + Cx(0.1) * CMatrix::identity(n);
    CMatrix b = Cx(-0.4, 0.5) * x * x * x + Cx(0.7) * x;
    a *= Cx(1.0 / std::max(1.0, norm_1(a)));
    b *= Cx(1.0 / std::max(1.0, norm_1(b)));

    GalleryCase c;
    c.name = "commuting";
    c.description = "seeded pair of polynomials in one matrix";
    c.a = c.raw_a = a;
    c.b = c.raw_b = b;

    c.claims.push_back({"||[A,B]|| <= eps_verify", [=](const Tolerances& tol) { return commutator_small(a, b, tol); }});
    c.claims.push_back({"two-sided condition holds on [-3,3]^2", [=](const Tolerances& tol) {
                            return condition_holds(a, b, ConditionKind::TwoSided4, Window{-3, 3, -3, 3}, tol);
                        }});
    c.claims.push_back({"one-sided condition holds on [0,6] with property L", [=](const Tolerances& tol) {
                            if (!check_condition(a, b, ConditionKind::Bourgeois3, tol).holds)
                                return ClaimResult{false, "one-sided condition fails"};
                            return has_property_l(a, b, tol, true);
                        }});
    c.claims.push_back({"e^{A+B} = e^A e^B", [=](const Tolerances&) {
                            const double r = norm_fro(expm(a + b).value - expm(a).value * expm(b).value);
                            return at_most(r, 1e-9 * std::exp(norm_fro(a) + norm_fro(b)), "residual");
                        }});
    return c;
}

GalleryCase shift_case() {
    GalleryCase c;
    c.name = "shift";
    c.description = "shift and transposed shift, eigenvalues +-sqrt(z)";
    c.a = c.raw_a = CMatrix{{0, 1}, {0, 0}};
    c.b = c.raw_b = CMatrix{{0, 0}, {1, 0}};
    const CMatrix a = c.a, b = c.b;

    c.claims.push_back({"no property L", [=](const Tolerances& tol) { return has_property_l(a, b, tol, false); }});
    c.claims.push_back({"one cycle of length 2 at z = 0", [=](const Tolerances& tol) {
                            const auto bs = branch_structure(Pencil(a, b), 0.0, tol);
                            const bool ok = bs.q == 1 && bs.cycles.size() == 1 && bs.cycles[0].d == 2;
                            return ClaimResult{ok, "q = " + std::to_string(bs.q)};
                        }});
    c.claims.push_back({"p = 2 with exceptional point 0", [=](const Tolerances& tol) {
                            const auto pr = profile(Pencil(a, b), tol);
                            const bool ok = pr.p == 2 && pr.exceptional_points.size() == 1 &&
                                            std::abs(pr.exceptional_points[0]) <= 1e-6;
                            return ClaimResult{ok, "p = " + std::to_string(pr.p)};
                        }});
    c.claims.push_back({"eigenprojections move between z = 1 and z = 4", [=](const Tolerances& tol) {
                            const auto tr = eigenprojection_trajectory(Pencil(a, b), {1.0, 4.0}, tol);
                            return at_least(tr.max_deviation, 0.1, "deviation");
                        }});
    c.claims.push_back({"||[A,B]|| > 0.5", [=](const Tolerances&) {
                            const double v = commutator_report(a, b).norm;
                            return ClaimResult{v > 0.5, "||[A,B]|| = " + fmt(v)};
                        }});
    return c;
}

GalleryCase triangularizable_case(std::uint64_t seed) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    const std::size_t n = 3;
    std::vector<Cx> da, db;
    for (std::size_t i = 0; i < n; ++i) da.push_back(rng.complex_unit_box()), db.push_back(rng.complex_unit_box());
    const CMatrix p = rng.well_conditioned(n);
    const CMatrix pinv = inverse(p);
    const CMatrix a = p * rng.upper_triangular(da, 1.0) * pinv;
    const CMatrix b = p * rng.upper_triangular(db, 1.0) * pinv;

    GalleryCase c;
    c.name = "triangularizable";
    c.description = "seeded simultaneously triangularizable pair with AB != BA";
    c.a = c.raw_a = a;
    c.b = c.raw_b = b;

    c.claims.push_back({"||[A,B]|| > 1e-3", [=](const Tolerances&) {
                            const double v = commutator_report(a, b).norm;
                            return ClaimResult{v > 1e-3, "||[A,B]|| = " + fmt(v)};
                        }});
    c.claims.push_back({"property L", [=](const Tolerances& tol) { return has_property_l(a, b, tol, true); }});
    c.claims.push_back({"common eigenvector", [=](const Tolerances& tol) {
                            const bool found = common_eigenvector(a, b, tol).has_value();
                            return ClaimResult{found, found ? "found" : "none"};
                        }});
    return c;
}

}  // namespace

std::vector<GalleryCase> gallery(std::uint64_t seed) {
    std::vector<GalleryCase> out;
    out.push_back(tu_case());
    out.push_back(semigroup_case());
    out.push_back(commuting_case(seed));
    out.push_back(shift_case());
    out.push_back(triangularizable_case(seed));
    return out;
}

std::optional<GalleryCase> gallery_case(const std::string& name, std::uint64_t seed) {
    for (auto& c : gallery(seed))
        if (c.name == name) return std::move(c);
    return std::nullopt;
}

}  // namespace pencillab
