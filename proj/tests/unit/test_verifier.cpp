#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "pencillab/chevalley.hpp"
#include "pencillab/errors.hpp"
#include "pencillab/expmat.hpp"
#include "pencillab/pencil.hpp"
#include "pencillab/random.hpp"
#include "pencillab/verifier.hpp"

using namespace pencillab;

namespace {

const CMatrix kA1 = kTwoPiI * CMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 0}};
const CMatrix kB1 = kTwoPiI * CMatrix{{2, 1, 1}, {1, 3, -2}, {1, 1, 0}};
const CMatrix kSemiA{{0, 0}, {0, kTwoPiI}};
const CMatrix kSemiB{{0, 1}, {0, kTwoPiI}};

CMatrix diag(std::vector<Cx> v) { return CMatrix::diagonal(v); }

CMatrix block_diag(const CMatrix& x, const CMatrix& y) {
    const std::size_t n = x.n() + y.n();
    CMatrix m(n);
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.n(); ++i)
        for (std::size_t j = 0; j < y.n(); ++j) m(x.n() + i, x.n() + j) = y(i, j);
    return m;
}

}  // namespace

TEST_CASE("check_condition on commuting pairs") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [a, b] = gen::commuting_pair(rng, std::size_t(rng.integer(2, 5)), 1.0);
        for (auto kind : {ConditionKind::Bourgeois3, ConditionKind::TwoSided4, ConditionKind::Window}) {
            const auto r = check_condition(a, b, kind, Window{-3, 3, -3, 3});
            CHECK(r.holds);
            CHECK(r.violations.empty());
            CHECK(r.max_residual <= 1e-8);
        }
    }
}

TEST_CASE("check_condition on the 3x3 counterexample") {
    const auto r3 = check_condition(kA1, kB1, ConditionKind::Bourgeois3, Window{0, 5, 0, 0});
    CHECK(r3.holds);
    CHECK(r3.window.l_lo == 1);
    CHECK(r3.evaluated == 6);

    const auto r4 = check_condition(kA1, kB1, ConditionKind::TwoSided4, Window{-2, 2, -2, 2});
    CHECK_FALSE(r4.holds);
    CHECK(r4.evaluated == 25);
    const bool negative_k = std::any_of(r4.violations.begin(), r4.violations.end(),
                                        [](const ConditionViolation& v) { return v.k < 0; });
    CHECK(negative_k);
    // At t = -1 the matrix tA + B is not diagonalizable, so its exponential is not I.
    const bool at_minus_one = std::any_of(r4.violations.begin(), r4.violations.end(), [](const ConditionViolation& v) {
        return v.k == -1 && v.l == 1 && v.equation == "product";
    });
    CHECK(at_minus_one);
    CHECK(r4.holds == r4.violations.empty());
}

TEST_CASE("check_condition on the 2x2 semigroup pair") {
    CHECK(check_condition(kSemiA, kSemiB, ConditionKind::TwoSided4, Window{0, 3, 0, 3}).holds);
    const auto r = check_condition(kSemiA, kSemiB, ConditionKind::TwoSided4);
    CHECK_FALSE(r.holds);
    for (const auto& v : r.violations) CHECK(v.k == -v.l);
}

TEST_CASE("check_condition rejects windows past the norm budget") {
    const CMatrix a = 100.0 * CMatrix::identity(2);
    CHECK_THROWS_AS(check_condition(a, a, ConditionKind::TwoSided4, Window{-10, 10, -10, 10}), Overflow);
    CHECK_THROWS_AS(check_condition(a, a, ConditionKind::Window, Window{2, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("default windows") {
    const Window w3 = default_window(ConditionKind::Bourgeois3);
    CHECK(w3.k_lo == 0);
    CHECK(w3.k_hi == 6);
    const Window w4 = default_window(ConditionKind::TwoSided4);
    CHECK(w4.k_lo == -3);
    CHECK(w4.l_hi == 3);
}

TEST_CASE("check_integral_spectrum examples") {
    const CMatrix a = diag({1.0, 2.0, -3.0}), b = diag({0.0, 5.0, 1.0});
    CHECK(check_integral_spectrum(a, b, {-2, 2, -2, 2}).holds);

    const Cx s = 1.0 / kTwoPiI;
    const auto tu = check_integral_spectrum(s * kA1, s * kB1, {0, 3, 1, 1});
    CHECK(tu.holds);
    CHECK(tu.cells.size() == 4);

    const CMatrix j2{{0.0, 1.0}, {0.0, 0.0}};
    const auto r = check_integral_spectrum(j2, CMatrix::zero(2), {1, 1, 0, 0});
    CHECK_FALSE(r.holds);
    REQUIRE(r.cells.size() == 1);
    CHECK_FALSE(r.cells[0].diagonalizable);
    CHECK(r.cells[0].integral);

    CHECK_FALSE(check_integral_spectrum(diag({0.5, 1.0}), CMatrix::zero(2), {1, 1, 0, 0}).holds);
}

TEST_CASE("gamma maps") {
    const double ln2 = std::log(2.0);
    const CMatrix a = diag({0.0, ln2}), b = diag({0.0, ln2});
    const GammaMap g = gamma_map(a, b, 1);
    CHECK(g.table.size() == 4);
    CHECK_FALSE(gamma_injectivity(a, b, 1));
    CHECK(gamma_injectivity(a, b, 2));
    CHECK(find_injective_k(a, b, 5) == std::optional<int>(2));

    // Sp(e^A) = {1}: gamma_1 is injective whenever e^B has distinct eigenvalues.
    CHECK(gamma_injectivity(kA1, diag({0.0, 0.5, 1.0}), 1));
    for (int k = 1; k <= 4; ++k) {
        CHECK(gamma_injectivity(kA1, kB1, k));
        CHECK(gamma_map(kA1, kB1, k).table.size() == 1);
    }

    const CMatrix near = diag({0.0, 5e-7});
    CHECK_THROWS_AS(gamma_injectivity(near, CMatrix::zero(2), 1), AmbiguousSeparation);
}

TEST_CASE("gamma table size is the product of the distinct counts") {
    Rng rng(211);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = std::size_t(rng.integer(1, 5));
        std::vector<Cx> da, db;
        for (std::size_t i = 0; i < n; ++i) {
            da.push_back(Cx(double(rng.integer(0, 2)), 0.0));
            db.push_back(rng.complex_unit_box());
        }
        std::vector<Cx> ua = da;
        std::sort(ua.begin(), ua.end(), [](Cx x, Cx y) { return x.real() < y.real(); });
        const auto distinct_a =
            std::size_t(std::unique(ua.begin(), ua.end()) - ua.begin());
        CHECK(gamma_map(diag(da), diag(db), 1 + trial % 3).table.size() == distinct_a * n);
    }
}

TEST_CASE("check_condition6 examples") {
    CHECK(check_condition6(diag({0.0, kTwoPiI})).holds);
    const auto half = check_condition6(diag({0.0, 0.5 * kTwoPiI}));
    CHECK_FALSE(half.holds);
    REQUIRE(half.rational.size() == 1);
    CHECK(half.rational[0].num == 1);
    CHECK(half.rational[0].den == 2);
    CHECK(half.scaling == 2);
    const auto real = check_condition6(diag({0.0, 1.0}));
    CHECK(real.holds);
    CHECK(real.rational.empty());

    const auto thirds = check_condition6(diag({0.0, kTwoPiI / 3.0, kTwoPiI * 0.75}));
    CHECK_FALSE(thirds.holds);
    CHECK(thirds.scaling == 12);
    // Denominator above qmax is not detected.
    CHECK(check_condition6(diag({0.0, kTwoPiI / 7.0}), {}, 5).holds);
    CHECK(check_condition6(kA1).holds);
}

TEST_CASE("check_eq7 examples") {
    const CMatrix a = diag({0.0, 0.3, 0.3, 1.1});
    const CMatrix b = diag({0.2, 0.2, 0.7, 0.7});
    const auto r = check_eq7(a, b);
    CHECK(r.holds);
    CHECK(r.entries.size() == 2);
    for (const auto& e : r.entries) CHECK(e.dim_lhs == 2);

    const double ln2 = std::log(2.0);
    CHECK_THROWS_AS(check_eq7(diag({0.0, ln2}), diag({0.0, ln2})), HypothesisViolated);
    CHECK_THROWS_AS(check_eq7(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {1.0, 0.0}}),
                    HypothesisViolated);
    CHECK(check_eq7(kA1, kB1).holds);
}

TEST_CASE("check_eq7 on simultaneously diagonalized pairs") {
    Rng rng(223);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 5));
        auto d = gen::commuting_diagonalizable(rng, n, 1.0);
        // Shifting by 2 i pi leaves e^B unchanged but changes B.
        d.db[0] += kTwoPiI;
        const CMatrix pinv = inverse(d.p);
        const CMatrix a = d.p * diag(d.da) * pinv, b = d.p * diag(d.db) * pinv;
        if (!gamma_injectivity(a, b, 1)) continue;
        const auto r = check_eq7(a, b);
        CHECK(r.holds);
        CHECK(r.max_residual <= 1e-8);
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("find_splitting examples") {
    Rng rng(227);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix a = block_diag(rng.matrix(2), rng.matrix(3));
        const CMatrix b = block_diag(rng.matrix(2), rng.matrix(3));
        const auto s = find_splitting(a, b);
        REQUIRE(s.has_value());
        CHECK(std::min(s->f.dim(), s->g.dim()) == 2);
        CHECK(std::max(s->f.dim(), s->g.dim()) == 3);
        for (const Subspace* x : {&s->f, &s->g}) {
            CHECK(invariance_residual(a, *x) <= 1e-8);
            CHECK(invariance_residual(b, *x) <= 1e-8);
        }
    }
    for (std::size_t n = 2; n <= 5; ++n) {
        CMatrix j = CMatrix::zero(n);
        for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
        CHECK_FALSE(find_splitting(j, j).has_value());
    }
    CHECK_FALSE(find_splitting(kSemiA, kSemiB).has_value());
    CHECK_FALSE(find_splitting(kA1, kB1).has_value());
}

TEST_CASE("find_splitting results are invariant") {
    Rng rng(229);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = gen::commuting_diagonalizable(rng, std::size_t(rng.integer(2, 5)), 1.0);
        const auto s = find_splitting(d.a, d.b);
        REQUIRE(s.has_value());
        CHECK(s->f.dim() + s->g.dim() == d.a.n());
        CHECK(span_sum(s->f, s->g).dim() == d.a.n());
        for (const Subspace* x : {&s->f, &s->g}) {
            CHECK(invariance_residual(d.a, *x) <= 1e-8);
            CHECK(invariance_residual(d.b, *x) <= 1e-8);
        }
    }
}

TEST_CASE("commutator reports") {
    CHECK(commutator_report(kA1, kB1).norm > 1.0);
    Rng rng(233);
    const CMatrix a = rng.matrix(4);
    CHECK(commutator_report(a, a * a).norm <= 1e-8);
    const auto [p, q] = gen::commuting_pair(rng, 4, 1.0);
    CHECK(commutator_report(p, q).norm <= 1e-8);
    const auto c = commutator_report(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {1.0, 0.0}});
    CHECK(std::abs(c.norm - 1.0) < 1e-6);
}

TEST_CASE("gallery") {
    const auto all = gallery();
    std::vector<std::string> names;
    for (const auto& c : all) names.push_back(c.name);
    CHECK(names == std::vector<std::string>{"tu", "semigroup2x2", "commuting", "shift", "triangularizable"});
    for (const auto& c : all) {
        CHECK(c.a.n() == c.b.n());
        CHECK_FALSE(c.claims.empty());
        for (const auto& claim : c.claims) {
            const ClaimResult r = claim.check(Tolerances{});
            INFO(c.name, ": ", claim.name, " -> ", r.detail);
            CHECK(r.ok);
        }
    }
    const auto tu = gallery_case("tu");
    REQUIRE(tu.has_value());
    CHECK(norm_fro(expm(tu->a).value - CMatrix::identity(3)) <= 1e-8);
    CHECK(tu->scale == "2pi_i");
    CHECK(tu->a == kA1);
    CHECK_FALSE(gallery_case("nope").has_value());
}

TEST_CASE("gallery is deterministic in the seed") {
    CHECK(gallery_case("commuting", 5)->a == gallery_case("commuting", 5)->a);
    CHECK_FALSE(gallery_case("commuting", 5)->a == gallery_case("commuting", 6)->a);
}

TEST_CASE("constructed commuting pairs pass and commute") {
    Rng rng(239);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [a, b] = gen::commuting_pair(rng, std::size_t(rng.integer(2, 4)), 1.0);
        if (check_condition(a, b, ConditionKind::TwoSided4).holds) CHECK(commutator_report(a, b).norm <= 1e-8);
    }
}
