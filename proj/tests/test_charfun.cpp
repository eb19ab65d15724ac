// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fixtures.hpp"
#include "gqf/charfun.hpp"
#include "gqf/spec_sampler.hpp"

using namespace gqf;

TEST_CASE("digest carries the per-branch mean energies") {
    const SpecDigest d = analyze(fixtures::asym2());
    CHECK(d.branches == 2);
    CHECK(d.eig.delta1 == Catch::Approx(fixtures::kAsym2Delta1).epsilon(1e-13));
    CHECK(d.eig.delta2 == Catch::Approx(fixtures::kAsym2Delta2).epsilon(1e-13));
    // m^H R^{-1} m is nonnegative for every branch.
    for (double v : d.mean_rinv) CHECK(v >= 0.0);
    CHECK(d.mean_of_d() == Catch::Approx(fixtures::kAsym2MeanD).margin(1e-12));
}

TEST_CASE("all forms equal one at zero frequency") {
    const ProblemSpec s = fixtures::asym2();
    const SpecDigest d = analyze(s);
    const LegacyParams lp = legacy_params(s, Variant::Corrected);
    for (std::size_t k = 0; k < s.branches(); ++k) {
        CHECK(std::abs(cf_matrix(s, k, 0.0) - 1.0) < 1e-15);
        CHECK(std::abs(cf_eigen(d, k, 0.0) - 1.0) < 1e-15);
        CHECK(std::abs(cf_legacy(lp, k, 0.0) - 1.0) < 1e-15);
    }
    CHECK(std::abs(cf_decision(d, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("golden problem: known value at unit frequency") {
    // phi_D(1) = e^{-1}/2, purely real.
    const cplx v = cf_decision(fixtures::golden(), 1.0);
    CHECK(v.real() == Catch::Approx(0.18393972058572116080).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("conjugate symmetry and modulus bound on a grid") {
    const ProblemSpec s = fixtures::asym3();
    const SpecDigest d = analyze(s);
    for (double u = 0.0; u <= 50.0; u += 0.37) {
        const cplx plus = cf_decision(d, u);
        const cplx minus = cf_decision(d, -u);
        CHECK(std::abs(plus - std::conj(minus)) < 1e-13);
        CHECK(std::abs(plus) <= 1.0 + 1e-13);
    }
}

TEST_CASE("three forms agree pointwise on random problems") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const ProblemSpec s = random_valid_spec(seed);
        const SpecDigest d = analyze(s);
        const LegacyParams lp = legacy_params(s, Variant::Corrected);
        for (double u : {-31.0, -2.2, -0.31, 0.04, 0.9, 3.3, 17.0, 49.0}) {
            cplx prod{1.0, 0.0};
            for (std::size_t k = 0; k < s.branches(); ++k) {
                const cplx m = cf_matrix(s, k, u);
                const cplx e = cf_eigen(d, k, u);
                const cplx l = cf_legacy(lp, k, u);
                CHECK(std::abs(m - e) < 1e-12);
                CHECK(std::abs(l - e) < 1e-12);
                prod *= e;
            }
            CHECK(std::abs(prod - cf_decision(d, u)) < 1e-12);
        }
    }
}

TEST_CASE("as-published parameters bend the characteristic function") {
    // With complex C the as-published parameter set no longer reproduces the
    // true CF; at the golden problem the gap at u = 1 is known exactly.
    const ProblemSpec s = fixtures::golden();
    const SpecDigest d = analyze(s);
    const LegacyParams ap = legacy_params(s, Variant::AsPublished);
    const double gap = std::abs(cf_legacy(ap, 0, 1.0) - cf_eigen(d, 0, 1.0));
    CHECK(gap == Catch::Approx(0.17637079922503194736).epsilon(1e-12));
}

TEST_CASE("low-frequency behavior recovers the mean of D") {
    // Im phi_D(u)/u -> E{D} as u -> 0.
    for (const ProblemSpec& s : {fixtures::golden(), fixtures::asym2()}) {
        const SpecDigest d = analyze(s);
        const double u = 1e-6;
        const double slope = cf_decision(d, u).imag() / u;
        CHECK(slope == Catch::Approx(d.mean_of_d()).margin(1e-4));
    }
}

TEST_CASE("branch index bounds are enforced") {
    const ProblemSpec s = fixtures::golden();
    const SpecDigest d = analyze(s);
    const LegacyParams lp = legacy_params(s, Variant::Corrected);
    CHECK_THROWS_AS(cf_matrix(s, 1, 0.5), ValidationError);
    CHECK_THROWS_AS(cf_eigen(d, 1, 0.5), ValidationError);
    CHECK_THROWS_AS(cf_legacy(lp, 1, 0.5), ValidationError);
}

TEST_CASE("analyze validates its input") {
    ProblemSpec s = fixtures::golden();
    s.A = 3.0;
    s.B = 3.0;
    s.C = cplx{0.5, 0.0};
    CHECK_THROWS_AS(analyze(s), ValidationError);
}
