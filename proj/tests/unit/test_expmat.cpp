#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "pencillab/errors.hpp"
#include "pencillab/expmat.hpp"
#include "pencillab/random.hpp"

using namespace pencillab;

namespace {

// Oracle run with a tight stopping rule so that its truncation error sits
// well below the comparison threshold.
Tolerances tight() {
    Tolerances t;
    t.eps_verify = 1e-17;
    return t;
}

const CMatrix kA1 = kTwoPiI * CMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 0}};
const CMatrix kB1 = kTwoPiI * CMatrix{{2, 1, 1}, {1, 3, -2}, {1, 1, 0}};

}  // namespace

TEST_CASE("expm examples") {
    CHECK(expm(CMatrix::zero(3)).value == CMatrix::identity(3));
    const auto r = expm(CMatrix::diagonal(std::vector<Cx>{kTwoPiI, 2.0 * kTwoPiI}));
    CHECK(norm_fro(r.value - CMatrix::identity(2)) < 1e-12);
    CHECK(norm_fro(expm(kA1).value - CMatrix::identity(3)) <= 1e-8);
    CHECK(r.pade_order == 13);
}

TEST_CASE("expm scaling brings the norm under one half") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix m = rng.matrix(4, rng.uniform(0.01, 20.0));
        const auto r = expm(m);
        CHECK(norm_1(m) / std::ldexp(1.0, r.scaling_steps) <= 0.5);
        CHECK(r.scaling_steps >= 0);
    }
}

TEST_CASE("expm raises Overflow beyond the norm budget") {
    CHECK_THROWS_AS(expm(CMatrix::diagonal(std::vector<Cx>{2000.0})), Overflow);
    CHECK_THROWS_AS(expm(CMatrix::diagonal(std::vector<Cx>{20.0}), 10.0), Overflow);
}

TEST_CASE("expm_oracle examples") {
    const CMatrix shift{{0.0, 1.0}, {0.0, 0.0}};
    CHECK(expm_oracle(shift) == CMatrix{{1.0, 1.0}, {0.0, 1.0}});
    CHECK(std::abs(expm_oracle(CMatrix::diagonal(std::vector<Cx>{1.0}))(0, 0) - std::numbers::e) < 1e-8);
    CHECK_THROWS_AS(expm_oracle(CMatrix::diagonal(std::vector<Cx>{60.0})), std::invalid_argument);
    Tolerances few;
    few.max_iter = 3;
    CHECK_THROWS_AS(expm_oracle(CMatrix::diagonal(std::vector<Cx>{10.0}), few), NonConvergence);
}

TEST_CASE("expm agrees with the Taylor oracle on the test envelope") {
    Rng rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = std::size_t(rng.integer(1, 8));
        const CMatrix m = rng.matrix(n, rng.uniform(0.1, 30.0) / double(n));
        if (norm_1(m) > 30.0) continue;
        const CMatrix e = expm(m).value;
        const CMatrix o = expm_oracle(m, tight());
        CHECK(norm_fro(e - o) <= 1e-10 * std::exp(norm_1(m)));
    }
}

TEST_CASE("exponential identities") {
    Rng rng(57);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = std::size_t(rng.integer(1, 6));
        const CMatrix m = rng.matrix(n, 2.0 / double(n));
        const CMatrix e = expm(m).value;
        CHECK(norm_fro(e * expm(-m).value - CMatrix::identity(n)) <= 1e-8 * std::exp(2 * norm_1(m)));
        const Cx det = determinant(e);
        const Cx ref = std::exp(m.trace());
        CHECK(std::abs(det - ref) <= 1e-8 * std::abs(ref));
        const auto [a, b] = gen::commuting_pair(rng, n, 5.0);
        CHECK(norm_fro(expm(a + b).value - expm(a).value * expm(b).value) <=
              1e-8 * std::exp(norm_1(a) + norm_1(b)));
    }
}

TEST_CASE("unipotent_log examples") {
    CHECK(unipotent_log(CMatrix::identity(3)) == CMatrix::zero(3));
    CHECK(norm_fro(unipotent_log(CMatrix{{1.0, 1.0}, {0.0, 1.0}}) - CMatrix{{0.0, 1.0}, {0.0, 0.0}}) < 1e-15);
    const CMatrix n3{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    const CMatrix u = CMatrix::identity(3) + n3 + 0.5 * (n3 * n3);
    CHECK(norm_fro(unipotent_log(u) - n3) <= 1e-8);
    CHECK_THROWS_AS(unipotent_log(CMatrix::diagonal(std::vector<Cx>{1.0, 2.0})), NotUnipotent);
}

TEST_CASE("unipotent_log inverts expm on nilpotent matrices") {
    Rng rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = std::size_t(rng.integer(1, 8));
        const CMatrix nil = gen::nilpotent(rng, n, rng.uniform(0.1, 3.0));
        const CMatrix u = expm(nil).value;
        CHECK(norm_fro(unipotent_log(u) - nil) <= 1e-9 * std::max(1.0, norm_fro(nil)));
        CHECK(norm_fro(expm(unipotent_log(u)).value - u) <= 1e-9 * std::max(1.0, norm_fro(u)));
    }
}

TEST_CASE("is_unit_exponential") {
    CHECK(is_unit_exponential(CMatrix::diagonal(std::vector<Cx>{kTwoPiI, -kTwoPiI})));
    CHECK_FALSE(is_unit_exponential(CMatrix{{kTwoPiI, 1.0}, {0.0, kTwoPiI}}));
    CHECK_FALSE(is_unit_exponential(CMatrix::diagonal(std::vector<Cx>{1.0, 0.0})));
    for (int t = 0; t <= 5; ++t) {
        const CMatrix m = double(t) * kA1 + kB1;
        CHECK(is_unit_exponential(m));
        CHECK(norm_fro(expm(m).value - CMatrix::identity(3)) <= 1e-8);
    }
}
