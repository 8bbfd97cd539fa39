#include <algorithm>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "pencillab/errors.hpp"
#include "pencillab/pencil.hpp"
#include "pencillab/random.hpp"

using namespace pencillab;

namespace {

const CMatrix kA1 = kTwoPiI * CMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 0}};
const CMatrix kB1 = kTwoPiI * CMatrix{{2, 1, 1}, {1, 3, -2}, {1, 1, 0}};
const CMatrix kShift{{0.0, 1.0}, {0.0, 0.0}};
const CMatrix kShiftT{{0.0, 0.0}, {1.0, 0.0}};

bool contains_all(const std::vector<Cx>& got, const std::vector<Cx>& want, double tol) {
    if (got.size() != want.size()) return false;
    for (const Cx& w : want)
        if (std::none_of(got.begin(), got.end(), [&](Cx g) { return std::abs(g - w) <= tol; })) return false;
    return true;
}

// Family with random slopes/intercepts realized as P diag(c) P^-1 + z P U P^-1
// with U upper triangular: simultaneously triangularizable, so property L.
AffineFamily random_family(Rng& rng, std::size_t n) {
    AffineFamily f;
    for (std::size_t k = 0; k < n; ++k) f.forms.push_back({2.0 * rng.complex_unit_box(), 2.0 * rng.complex_unit_box()});
    return f;
}

}  // namespace

TEST_CASE("sample_spectrum examples") {
    Rng rng(81);
    const CMatrix a = rng.matrix(3);
    const Pencil pa(a, CMatrix::zero(3));
    CHECK(multiset_match(sample_spectrum(pa, Cx(1.5, -2)), spectrum(a), {}).has_value());
    const Pencil tu(kB1, kA1);
    const SpectrumMultiset want({0.0, 4.0 * kTwoPiI, 7.0 * kTwoPiI});
    CHECK(multiset_match(sample_spectrum(tu, 2.0), want, {}).has_value());
    const Pencil shift(kShift, kShiftT);
    CHECK(multiset_match(sample_spectrum(shift, 4.0), SpectrumMultiset({2.0, -2.0}), {}).has_value());
}

TEST_CASE("homogeneity of sampled spectra") {
    Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 5));
        const CMatrix a = rng.matrix(n), b = rng.matrix(n);
        const Cx c = std::polar(std::pow(10.0, rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 6.28));
        const Cx z = rng.complex_in_disk(3.0);
        const auto s = sample_spectrum(Pencil(a, b), z);
        std::vector<Cx> scaled;
        for (const Cx& v : s) scaled.push_back(c * v);
        CHECK(multiset_match(sample_spectrum(Pencil(c * a, c * b), z), SpectrumMultiset(scaled), {}).has_value());
    }
}

TEST_CASE("profile examples") {
    // diag(0,1) + z diag(1,0) = diag(z, 1) collides at z = 1.
    const auto p1 = profile(Pencil(CMatrix::diagonal(std::vector<Cx>{0.0, 1.0}),
                                   CMatrix::diagonal(std::vector<Cx>{1.0, 0.0})));
    CHECK(p1.p == 2);
    CHECK(contains_all(p1.exceptional_points, {1.0}, 1e-6));
    // The family {z, 1 - z} collides at z = 1/2.
    const auto p2 = profile(Pencil(CMatrix::diagonal(std::vector<Cx>{0.0, 1.0}),
                                   CMatrix::diagonal(std::vector<Cx>{1.0, -1.0})));
    CHECK(p2.p == 2);
    CHECK(contains_all(p2.exceptional_points, {0.5}, 1e-6));

    const auto tu = profile(Pencil(kB1, kA1));
    CHECK(tu.p == 3);
    CHECK(contains_all(tu.exceptional_points, {-1.0, -1.5, -2.0}, 1e-6));
    CHECK_FALSE(tu.degenerate_discriminant);

    const auto a0 = profile(Pencil(CMatrix::diagonal(std::vector<Cx>{1.0, 1.0, 3.0}), CMatrix::zero(3)));
    CHECK(a0.p == 2);
    CHECK(a0.exceptional_points.empty());
    CHECK(a0.degenerate_discriminant);
    const auto a1 = profile(Pencil(CMatrix::diagonal(std::vector<Cx>{1.0, 2.0, 3.0}), CMatrix::zero(3)));
    CHECK(a1.p == 3);
    CHECK(a1.exceptional_points.empty());

    const auto sh = profile(Pencil(kShift, kShiftT));
    CHECK(sh.p == 2);
    CHECK(contains_all(sh.exceptional_points, {0.0}, 1e-6));
}

TEST_CASE("profile finds the collision points of random affine families") {
    Rng rng(85);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 4));
        const AffineFamily f = random_family(rng, n);
        std::vector<Cx> c, b;
        for (const auto& form : f.forms) {
            c.push_back(form.c);
            b.push_back(form.b);
        }
        const CMatrix p = rng.well_conditioned(n);
        const CMatrix pinv = inverse(p);
        const Pencil pencil(p * rng.upper_triangular(c, 1.0) * pinv, p * CMatrix::diagonal(b) * pinv);
        const auto prof = profile(pencil, {}, rng.bits());
        CHECK(prof.p == n);
        const auto expected = collision_points(f);
        // Collisions far outside the sampling circle are recovered less
        // accurately; compare relative to their magnitude.
        REQUIRE(prof.exceptional_points.size() == expected.size());
        for (const Cx& e : expected)
            CHECK(std::any_of(prof.exceptional_points.begin(), prof.exceptional_points.end(),
                              [&](Cx g) { return std::abs(g - e) <= 1e-5 * (1.0 + std::abs(e)); }));
        for (const Cx& z : prof.exceptional_points) CHECK(distinct_count(sample_spectrum(pencil, z), {}) < prof.p);
    }
}

TEST_CASE("branch structure of the shift pencil is one 2-cycle") {
    const auto bs = branch_structure(Pencil(kShift, kShiftT), 0.0);
    CHECK(bs.q == 1);
    REQUIRE(bs.cycles.size() == 1);
    CHECK(bs.cycles[0].d == 2);
    REQUIRE(bs.cycles[0].leading_term.has_value());
    CHECK(bs.cycles[0].leading_term->order == 1);  // z^(1/2)
    CHECK(std::abs(std::abs(bs.cycles[0].leading_term->b) - 1.0) < 1e-8);
    CHECK(std::abs(bs.cycles[0].value_at_center) < 1e-10);
}

TEST_CASE("branch structure of the Tu pencil is trivial at its exceptional points") {
    for (double t0 : {-1.0, -1.5, -2.0}) {
        const auto bs = branch_structure(Pencil(kB1, kA1), t0);
        CHECK(bs.q == 3);
        for (const auto& c : bs.cycles) {
            CHECK(c.d == 1);
            if (c.leading_term) CHECK(c.leading_term->order == 1);
        }
    }
}

TEST_CASE("branch structure at a regular point") {
    Rng rng(87);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 5));
        const Pencil p(rng.matrix(n), rng.matrix(n));
        const auto bs = branch_structure(p, rng.complex_in_disk(1.0));
        std::size_t total = 0;
        for (const auto& c : bs.cycles) {
            CHECK(c.d == 1);
            total += c.d;
        }
        CHECK(total == n);
    }
}

TEST_CASE("branch structure of a cubic root") {
    // companion-like pencil with eigenvalues z^(1/3)
    const CMatrix a{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    const CMatrix b{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}};
    const auto bs = branch_structure(Pencil(a, b), 0.0);
    CHECK(bs.q == 1);
    CHECK(bs.cycles[0].d == 3);
    CHECK(bs.cycles[0].leading_term->order == 1);
}

TEST_CASE("property_L_pair examples") {
    Rng rng(89);
    const CMatrix a = rng.matrix(3);
    const auto f0 = property_L_pair(a, CMatrix::zero(3));
    REQUIRE(f0.has_value());
    for (const auto& form : f0->forms) CHECK(std::abs(form.b) < 1e-8);

    const auto tu = property_L_pair(kA1, kB1);
    REQUIRE(tu.has_value());
    // A1 + z B1 has eigenvalues 0, 2i pi (1 + 2z), 2i pi (2 + 3z).
    AffineFamily expected{{{0.0, 0.0}, {kTwoPiI, 2.0 * kTwoPiI}, {2.0 * kTwoPiI, 3.0 * kTwoPiI}}};
    for (const Cx z : {Cx(0.3, 0.1), Cx(-1.0, 2.0)})
        CHECK(multiset_match(tu->evaluate(z), expected.evaluate(z), {}).has_value());

    const CMatrix d{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix s{{0.0, 1.0}, {1.0, 0.0}};
    CHECK_FALSE(property_L_pair(d, s).has_value());
    CHECK_FALSE(property_L_pair(kShift, kShiftT).has_value());
}

TEST_CASE("a certified family replays at fresh points") {
    Rng rng(91);
    for (int trial = 0; trial < 10; ++trial) {
        const auto tp = gen::triangularizable(rng, std::size_t(rng.integer(2, 5)));
        const auto f = property_L_pair(tp.a, tp.b, {}, rng.bits());
        REQUIRE(f.has_value());
        const Pencil p(tp.a, tp.b);
        for (int k = 0; k < 100; ++k) {
            const Cx z = rng.complex_in_disk(5.0);
            CHECK(multiset_match(f->evaluate(z), sample_spectrum(p, z), {}).has_value());
        }
    }
}

TEST_CASE("commuting pairs always certify") {
    Rng rng(93);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [a, b] = gen::commuting_pair(rng, std::size_t(rng.integer(2, 5)), 5.0);
        CHECK(property_L_pair(a, b, {}, rng.bits()).has_value());
    }
}

TEST_CASE("property_L_span") {
    Rng rng(95);
    const CMatrix a = rng.matrix(3);
    const auto single = property_L_span({a});
    REQUIRE(single.has_value());
    CHECK(single->basis.size() == 1);

    const auto tu = property_L_span({kA1, kB1});
    REQUIRE(tu.has_value());
    CHECK(tu->basis.size() == 2);
    const std::vector<Cx> x{Cx(0.5, -1.0), Cx(2.0, 0.25)};
    CHECK(multiset_match(tu->evaluate(x), spectrum(x[0] * kA1 + x[1] * kB1), {}).has_value());

    const CMatrix d{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix s{{0.0, 1.0}, {1.0, 0.0}};
    CHECK_FALSE(property_L_span({d, s}).has_value());

    // Redundant generators are reduced to a basis.
    const auto red = property_L_span({kA1, kB1, kA1 + 2.0 * kB1});
    REQUIRE(red.has_value());
    CHECK(red->basis.size() == 2);

    // Three upper triangular generators in a common basis.
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 4));
        const CMatrix p = rng.well_conditioned(n);
        const CMatrix pinv = inverse(p);
        std::vector<CMatrix> gens;
        for (int g = 0; g < 3; ++g) {
            std::vector<Cx> diag;
            for (std::size_t i = 0; i < n; ++i) diag.push_back(rng.complex_unit_box());
            gens.push_back(p * rng.upper_triangular(diag, 1.0) * pinv);
        }
        const auto fam = property_L_span(gens, {}, rng.bits());
        REQUIRE(fam.has_value());
        CHECK(fam->basis.size() == 3);
    }
}

TEST_CASE("exceptional integers") {
    const AffineFamily lines{{{0.0, 1.0}, {1.0, -1.0}}};
    CHECK(exceptional_integers(lines).empty());
    const AffineFamily tu{{{0.0, 0.0}, {2.0 * kTwoPiI, kTwoPiI}, {3.0 * kTwoPiI, 2.0 * kTwoPiI}}};
    CHECK(exceptional_integers(tu) == std::vector<long>{-2, -1});
    const AffineFamily same{{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}}};
    CHECK(exceptional_integers(same).empty());
    const auto cp = collision_points(tu);
    CHECK(cp.size() == 3);
}

TEST_CASE("eigenprojection trajectories") {
    Rng rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pr = gen::commuting_diagonalizable(rng, std::size_t(rng.integer(2, 5)), 2.0);
        std::vector<Cx> zs;
        for (int k = 0; k < 10; ++k) zs.push_back(rng.complex_in_disk(2.0));
        const auto tr = eigenprojection_trajectory(Pencil(pr.a, pr.b), zs);
        CHECK(tr.max_deviation <= 1e-8);
    }
    const auto sh = eigenprojection_trajectory(Pencil(kShift, kShiftT), {1.0, 4.0});
    CHECK(sh.max_deviation >= 0.1);
    const auto a0 = eigenprojection_trajectory(Pencil(kB1, CMatrix::zero(3)), {0.0, 1.0, Cx(2, 3)});
    CHECK(a0.max_deviation <= 1e-12);
    CHECK_THROWS_AS(eigenprojection_trajectory(Pencil(kShift, kShiftT), {1.0, 0.0}), std::invalid_argument);
}
