// SPDX-License-Identifier: Apache-2.0
//
// JSON problem files: parsing, validation messages, round-tripping.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "gqf/specfile.hpp"

using namespace gqf;

namespace {

const char* kGoldenText = R"({
  "A": 1.0,
  "B": -1.0,
  "C": [0.0, 0.0],
  "R": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
  "means": [[[1.0, 0.0], [1.0, 0.0]]]
})";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("parses a covariance-form file") {
    const RunConfig cfg = parse_spec_text(kGoldenText);
    CHECK(cfg.spec.A == 1.0);
    CHECK(cfg.spec.B == -1.0);
    CHECK(cfg.spec.C == cplx{0.0, 0.0});
    CHECK(cfg.spec.R.a11 == cplx{1.0, 0.0});
    CHECK(cfg.spec.R.a12 == cplx{0.0, 0.0});
    REQUIRE(cfg.spec.means.size() == 1);
    CHECK(cfg.spec.means[0].x == cplx{1.0, 0.0});
    CHECK_FALSE(cfg.mc_present);
    CHECK_FALSE(cfg.quad_tol_present);
    CHECK(cfg.quad_tol == 1e-9);
}

TEST_CASE("parses a second-moment-form file") {
    const std::string text = R"({
      "A": 0.8, "B": -1.1, "C": [0.35, 0.6],
      "mu": {"mu_xx": 0.55, "mu_yy": 0.45, "mu_xy": [0.12, -0.21]},
      "means": [[[0.9, 0.4], [-0.3, 0.8]], [[0.2, -0.5], [0.6, 0.1]]]
    })";
    const RunConfig cfg = parse_spec_text(text);
    const MuParams mu{0.55, 0.45, cplx{0.12, -0.21}};
    const Mat2 want = covariance_from_mu(mu);
    CHECK(std::abs(cfg.spec.R.a11 - want.a11) == 0.0);
    CHECK(std::abs(cfg.spec.R.a12 - want.a12) == 0.0);
    CHECK(std::abs(cfg.spec.R.a21 - want.a21) == 0.0);
    CHECK(std::abs(cfg.spec.R.a22 - want.a22) == 0.0);
    CHECK(cfg.spec.means.size() == 2);
}

TEST_CASE("exactly one covariance description is required") {
    const std::string both = R"({
      "A": 1.0, "B": -1.0, "C": [0.0, 0.0],
      "R": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
      "mu": {"mu_xx": 0.5, "mu_yy": 0.5, "mu_xy": [0.0, 0.0]},
      "means": [[[1.0, 0.0], [1.0, 0.0]]]
    })";
    CHECK_THROWS_WITH(parse_spec_text(both),
                      Catch::Matchers::ContainsSubstring("exactly one"));
    const std::string neither = R"({
      "A": 1.0, "B": -1.0, "C": [0.0, 0.0],
      "means": [[[1.0, 0.0], [1.0, 0.0]]]
    })";
    CHECK_THROWS_WITH(parse_spec_text(neither),
                      Catch::Matchers::ContainsSubstring("exactly one"));
}

TEST_CASE("error messages name the offending key") {
    SECTION("missing kernel entry") {
        const std::string text = R"({
          "B": -1.0, "C": [0.0, 0.0],
          "R": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
          "means": [[[1.0, 0.0], [1.0, 0.0]]]
        })";
        CHECK_THROWS_WITH(parse_spec_text(text),
                          Catch::Matchers::ContainsSubstring("'A'"));
    }
    SECTION("unknown top-level key") {
        std::string text(kGoldenText);
        text.insert(1, "\n  \"extra\": 1,");
        CHECK_THROWS_WITH(parse_spec_text(text),
                          Catch::Matchers::ContainsSubstring("extra"));
    }
    SECTION("unknown nested key") {
        const std::string text = R"({
          "A": 0.8, "B": -1.1, "C": [0.35, 0.6],
          "mu": {"mu_xx": 0.55, "mu_yy": 0.45, "mu_xy": [0.12, -0.21], "mu_zz": 0.0},
          "means": [[[0.9, 0.4], [-0.3, 0.8]]]
        })";
        CHECK_THROWS_WITH(parse_spec_text(text),
                          Catch::Matchers::ContainsSubstring("mu_zz"));
    }
    SECTION("malformed complex value") {
        std::string text(kGoldenText);
        const std::string needle = "\"C\": [0.0, 0.0]";
        text.replace(text.find(needle), needle.size(), "\"C\": [0.0, 0.0, 1.0]");
        CHECK_THROWS_WITH(parse_spec_text(text),
                          Catch::Matchers::ContainsSubstring("'C'"));
    }
    SECTION("empty branch list") {
        std::string text(kGoldenText);
        const std::string needle = "\"means\": [[[1.0, 0.0], [1.0, 0.0]]]";
        text.replace(text.find(needle), needle.size(), "\"means\": []");
        CHECK_THROWS_WITH(parse_spec_text(text),
                          Catch::Matchers::ContainsSubstring("means"));
    }
}

TEST_CASE("syntax errors carry a line number") {
    const std::string text = "{\n  \"A\": 1.0,\n  \"B\": oops\n}";
    try {
        parse_spec_text(text);
        FAIL("expected a parse failure");
    } catch (const SpecFileError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("run options are parsed and validated") {
    std::string text(kGoldenText);
    text.insert(text.rfind('}'),
                R"(, "mc": {"samples": 5000, "seed": 42, "batch": 512},
                   "quad_tol": 1e-8)");
    const RunConfig cfg = parse_spec_text(text);
    CHECK(cfg.mc_present);
    CHECK(cfg.mc.samples == 5000);
    CHECK(cfg.mc.seed == 42);
    CHECK(cfg.mc.batch == 512);
    CHECK(cfg.quad_tol_present);
    CHECK(cfg.quad_tol == 1e-8);

    std::string bad_samples(kGoldenText);
    bad_samples.insert(bad_samples.rfind('}'), R"(, "mc": {"samples": 0})");
    CHECK_THROWS_WITH(parse_spec_text(bad_samples),
                      Catch::Matchers::ContainsSubstring("samples"));

    std::string bad_tol(kGoldenText);
    bad_tol.insert(bad_tol.rfind('}'), R"(, "quad_tol": -1.0)");
    CHECK_THROWS_WITH(parse_spec_text(bad_tol),
                      Catch::Matchers::ContainsSubstring("quad_tol"));
}

TEST_CASE("dump and parse are mutually inverse") {
    RunConfig cfg;
    cfg.spec = fixtures::asym2();
    cfg.mc_present = true;
    cfg.mc.samples = 12'345;
    cfg.mc.seed = 9;
    cfg.quad_tol_present = true;
    cfg.quad_tol = 2.5e-10;

    const std::string once = dump_run_config(cfg);
    const RunConfig back = parse_spec_text(once);
    CHECK(dump_run_config(back) == once);
    CHECK(back.spec.A == cfg.spec.A);
    CHECK(back.spec.C == cfg.spec.C);
    CHECK(back.spec.R.a21 == cfg.spec.R.a21);
    REQUIRE(back.spec.means.size() == cfg.spec.means.size());
    CHECK(back.spec.means[1].y == cfg.spec.means[1].y);
    CHECK(back.mc.samples == cfg.mc.samples);
    CHECK(back.quad_tol == cfg.quad_tol);
    CHECK(once.back() == '\n');
}

TEST_CASE("file io distinguishes missing files from bad content") {
    const auto dir = std::filesystem::temp_directory_path();
    CHECK_THROWS_AS(load_spec_file((dir / "no-such-file-gqf.json").string()), IoError);

    const auto path = dir / "gqf_roundtrip_test.json";
    RunConfig cfg;
    cfg.spec = fixtures::asym3();
    save_spec_file(cfg, path.string());
    const RunConfig back = load_spec_file(path.string());
    CHECK(slurp(path) == dump_run_config(cfg));
    CHECK(back.spec.means.size() == 3);
    std::filesystem::remove(path);
}
