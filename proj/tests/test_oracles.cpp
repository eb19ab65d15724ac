// SPDX-License-Identifier: Apache-2.0
//
// The two independent oracles (CF inversion, Monte Carlo) against the closed
// form and against each other.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "gqf/closed_form.hpp"
#include "gqf/gil_pelaez.hpp"
#include "gqf/montecarlo.hpp"
#include "gqf/spec_sampler.hpp"

using namespace gqf;

TEST_CASE("inversion reproduces the pinned probabilities") {
    CHECK(invert_cf(fixtures::golden()) == Catch::Approx(0.5).margin(1e-9));
    CHECK(invert_cf(fixtures::asym2()) ==
          Catch::Approx(fixtures::kAsym2P).margin(1e-8));
    CHECK(invert_cf(fixtures::asym3()) ==
          Catch::Approx(fixtures::kAsym3P).margin(1e-8));
    CHECK(invert_cf(fixtures::zero_mean(1)) ==
          Catch::Approx(fixtures::kZeroMeanP1).margin(1e-8));
    CHECK(invert_cf(fixtures::zero_mean(3)) ==
          Catch::Approx(fixtures::kZeroMeanP3).margin(1e-8));
}

TEST_CASE("inversion report is coherent") {
    const InversionResult r = invert_cf_report(fixtures::asym2(), 1e-10);
    CHECK(r.converged);
    CHECK(r.error_estimate <= 1e-9);
    CHECK(r.evaluations > 100);
    CHECK(r.upper_limit > 10.0);
    CHECK(std::abs(r.probability - fixtures::kAsym2P) <=
          std::max(20 * r.error_estimate, 1e-11));
    CHECK_THROWS_AS(invert_cf_report(fixtures::asym2(), 0.0), ValidationError);
}

TEST_CASE("inversion agrees with the closed form at high branch counts") {
    // No reference values exist at L = 8; the two routes check each other.
    SpecSamplerOptions opt;
    opt.min_branches = 8;
    opt.max_branches = 8;
    for (std::uint64_t seed = 50; seed < 55; ++seed) {
        const ProblemSpec s = random_valid_spec(seed, opt);
        CHECK(invert_cf(s) == Catch::Approx(probability(s).p_corrected).margin(1e-7));
    }
}

TEST_CASE("monte carlo estimate brackets the closed form") {
    McConfig mc;
    mc.samples = 200'000;
    mc.seed = 11;
    const McEstimate g = estimate_probability(fixtures::golden(), mc);
    CHECK(std::abs(g.p_hat - 0.5) <= 4.0 * g.std_err);
    CHECK(g.samples == mc.samples);
    CHECK(g.negatives > 0);

    const McEstimate a = estimate_probability(fixtures::asym2(), mc);
    CHECK(std::abs(a.p_hat - fixtures::kAsym2P) <= 4.0 * a.std_err);
    CHECK(a.std_err == Catch::Approx(std::sqrt(a.p_hat * (1 - a.p_hat) / 2e5)));
}

TEST_CASE("monte carlo is deterministic in seed and batch size") {
    McConfig mc;
    mc.samples = 30'000;
    mc.seed = 77;
    mc.batch = 4096;
    const McEstimate first = estimate_probability(fixtures::asym2(), mc);
    const McEstimate second = estimate_probability(fixtures::asym2(), mc);
    CHECK(first.negatives == second.negatives);

    mc.seed = 78;
    const McEstimate other = estimate_probability(fixtures::asym2(), mc);
    CHECK(first.negatives != other.negatives); // astronomically unlikely to tie
}

TEST_CASE("sampled branch moments match the problem description") {
    const ProblemSpec s = fixtures::asym2();
    const DecisionSampler sampler(s);
    SplitMix64 g(mix_seed(5, 0));

    const std::size_t n = 200'000;
    Vec2 mean{};
    Mat2 cov{};
    std::vector<Vec2> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 z = sampler.sample_branch(0, g);
        mean = mean + z;
        draws.push_back(z);
    }
    mean = (1.0 / static_cast<double>(n)) * mean;
    CHECK(std::abs(mean.x - s.means[0].x) < 0.01);
    CHECK(std::abs(mean.y - s.means[0].y) < 0.01);

    for (const Vec2& z : draws) {
        const Vec2 c{z.x - mean.x, z.y - mean.y};
        cov.a11 += c.x * std::conj(c.x);
        cov.a12 += c.x * std::conj(c.y);
        cov.a21 += c.y * std::conj(c.x);
        cov.a22 += c.y * std::conj(c.y);
    }
    cov = (1.0 / static_cast<double>(n)) * cov;
    CHECK(std::abs(cov.a11 - s.R.a11) < 0.03);
    CHECK(std::abs(cov.a12 - s.R.a12) < 0.03);
    CHECK(std::abs(cov.a21 - s.R.a21) < 0.03);
    CHECK(std::abs(cov.a22 - s.R.a22) < 0.03);

    // Circular symmetry: the pseudo-covariance E{(z-m)(z-m)^T} vanishes.
    cplx pseudo_xx{}, pseudo_xy{};
    for (const Vec2& z : draws) {
        const Vec2 c{z.x - mean.x, z.y - mean.y};
        pseudo_xx += c.x * c.x;
        pseudo_xy += c.x * c.y;
    }
    CHECK(std::abs(pseudo_xx) / static_cast<double>(n) < 0.03);
    CHECK(std::abs(pseudo_xy) / static_cast<double>(n) < 0.03);
}

TEST_CASE("sampled decision moments match the analytic ones") {
    const ProblemSpec s = fixtures::asym2();
    const DecisionSampler sampler(s);
    SplitMix64 g(mix_seed(6, 0));
    const std::size_t n = 400'000;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = sampler.sample_decision(g);
        m1 += d;
        m2 += d * d;
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    CHECK(m1 == Catch::Approx(fixtures::kAsym2MeanD).margin(0.02));
    CHECK(m2 == Catch::Approx(fixtures::kAsym2MeanD2).margin(0.15));
}

TEST_CASE("histogram accounts for every sample and mirrors symmetry") {
    McConfig mc;
    mc.samples = 200'000;
    mc.seed = 21;
    const Histogram h = histogram_decision(fixtures::golden(), mc, 101, -10.0, 10.0);

    std::uint64_t in_bins = 0;
    for (std::uint64_t c : h.counts) in_bins += c;
    CHECK(in_bins + h.below + h.above == mc.samples);
    CHECK(h.counts.size() == 101);

    // The golden problem's D is symmetric about zero; compare mirrored bins.
    double asym = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double ci = static_cast<double>(h.counts[i]);
        const double cj = static_cast<double>(h.counts[h.counts.size() - 1 - i]);
        asym += std::abs(ci - cj);
    }
    asym /= static_cast<double>(h.total);
    CHECK(asym < 4.0 * std::sqrt(101.0 / static_cast<double>(h.total)));
}

TEST_CASE("histogram csv format is stable") {
    McConfig mc;
    mc.samples = 5'000;
    mc.seed = 3;
    const Histogram h = histogram_decision(fixtures::asym2(), mc, 4, -8.0, 8.0);
    std::ostringstream ss;
    h.write_csv(ss);
    const std::string text = ss.str();
    CHECK(text.rfind("bin_lo,bin_hi,count\n", 0) == 0);
    // Header plus one line per bin, each ending in LF.
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 5);
    // Repeating the run yields byte-identical output.
    const Histogram h2 = histogram_decision(fixtures::asym2(), mc, 4, -8.0, 8.0);
    std::ostringstream ss2;
    h2.write_csv(ss2);
    CHECK(ss2.str() == text);
}

TEST_CASE("default histogram range covers the distribution bulk") {
    const auto [lo, hi] = default_histogram_range(fixtures::asym2(), 1);
    CHECK(lo < hi);
    // Nearly all mass must land inside the default range.
    McConfig mc;
    mc.samples = 50'000;
    mc.seed = 123;
    const Histogram h = histogram_decision(fixtures::asym2(), mc, 16, lo, hi);
    CHECK(static_cast<double>(h.below + h.above) <
          0.001 * static_cast<double>(mc.samples));
}

TEST_CASE("sampler rejects invalid problems") {
    ProblemSpec s = fixtures::golden();
    s.A = 2.0, s.B = 2.0, s.C = cplx{0.0, 0.0};
    CHECK_THROWS_AS(DecisionSampler(s), ValidationError);
    CHECK_THROWS_AS(estimate_probability(s, McConfig{}), ValidationError);
}
