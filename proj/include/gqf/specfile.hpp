// SPDX-License-Identifier: Apache-2.0
#pragma once

// Problem files on disk: JSON, UTF-8. Complex numbers are [re, im] pairs,
// matrices row-major nested arrays. The covariance comes in exactly one of
// two spellings:
//
//   {
//     "A": -0.25, "B": 0.5, "C": [0.4, 0.6],
//     "R": [[[1.2,0],[0.3,-0.2]], [[0.3,0.2],[0.9,0]]],
//     "means": [[[0.8,0.1],[-0.5,0.7]]],
//     "mc": {"samples": 1000000, "seed": 7, "batch": 65536},
//     "quad_tol": 1e-9
//   }
//
// or "mu": {"mu_xx": .., "mu_yy": .., "mu_xy": [re, im]} in place of "R".
// "mc" and "quad_tol" are optional. Unknown keys are rejected: a typo should
// fail loudly, not silently fall back to a default. Dumping always writes the
// canonical R spelling, so parse-then-dump is idempotent.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gqf/errors.hpp"
#include "gqf/model.hpp"
#include "gqf/montecarlo.hpp"

namespace gqf {

// Malformed or schema-violating problem file. Messages name the offending key
// (and the line, for syntax errors).
struct SpecFileError : ValidationError {
    using ValidationError::ValidationError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A problem plus the run settings a file may carry.
struct RunConfig {
    ProblemSpec spec;
    McConfig mc{};
    bool mc_present = false;
    double quad_tol = 1e-9;
    bool quad_tol_present = false;
};

namespace detail {

using nlohmann::json;

inline double expect_number(const json& j, const std::string& where) {
    if (!j.is_number())
        throw SpecFileError("key '" + where + "': expected a number");
    return j.get<double>();
}

inline cplx expect_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SpecFileError("key '" + where + "': expected an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Mat2 expect_mat2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw SpecFileError("key '" + where + "': expected a 2x2 matrix of [re, im] pairs");
    return {expect_complex(j[0][0], where + "[0][0]"),
            expect_complex(j[0][1], where + "[0][1]"),
            expect_complex(j[1][0], where + "[1][0]"),
            expect_complex(j[1][1], where + "[1][1]")};
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

} // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
    using detail::json;
    if (!j.is_object()) throw SpecFileError("top level: expected a JSON object");

    static const char* known[] = {"A", "B", "C", "R", "mu", "means", "mc", "quad_tol"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw SpecFileError("unknown key '" + item.key() + "'");
    }
    for (const char* k : {"A", "B", "C", "means"})
        if (!j.contains(k)) throw SpecFileError(std::string("missing key '") + k + "'");

    RunConfig rc;
    rc.spec.A = detail::expect_number(j["A"], "A");
    rc.spec.B = detail::expect_number(j["B"], "B");
    rc.spec.C = detail::expect_complex(j["C"], "C");

    const bool has_r = j.contains("R");
    const bool has_mu = j.contains("mu");
    if (has_r == has_mu)
        throw SpecFileError("provide exactly one of 'R' and 'mu'");
    if (has_r) {
        rc.spec.R = detail::expect_mat2(j["R"], "R");
    } else {
        const json& m = j["mu"];
        if (!m.is_object()) throw SpecFileError("key 'mu': expected an object");
        for (const auto& item : m.items())
            if (item.key() != "mu_xx" && item.key() != "mu_yy" && item.key() != "mu_xy")
                throw SpecFileError("unknown key 'mu." + item.key() + "'");
        for (const char* k : {"mu_xx", "mu_yy", "mu_xy"})
            if (!m.contains(k))
                throw SpecFileError(std::string("missing key 'mu.") + k + "'");
        MuParams mu;
        mu.mu_xx = detail::expect_number(m["mu_xx"], "mu.mu_xx");
        mu.mu_yy = detail::expect_number(m["mu_yy"], "mu.mu_yy");
        mu.mu_xy = detail::expect_complex(m["mu_xy"], "mu.mu_xy");
        rc.spec.R = covariance_from_mu(mu);
    }

    const json& means = j["means"];
    if (!means.is_array() || means.empty())
        throw SpecFileError("key 'means': expected a non-empty array, one entry per branch");
    for (std::size_t k = 0; k < means.size(); ++k) {
        const json& mk = means[k];
        const std::string where = "means[" + std::to_string(k) + "]";
        if (!mk.is_array() || mk.size() != 2)
            throw SpecFileError("key '" + where + "': expected two [re, im] pairs");
        rc.spec.means.push_back(Vec2{detail::expect_complex(mk[0], where + "[0]"),
                                     detail::expect_complex(mk[1], where + "[1]")});
    }

    if (j.contains("mc")) {
        const json& mc = j["mc"];
        if (!mc.is_object()) throw SpecFileError("key 'mc': expected an object");
        for (const auto& item : mc.items())
            if (item.key() != "samples" && item.key() != "seed" && item.key() != "batch")
                throw SpecFileError("unknown key 'mc." + item.key() + "'");
        rc.mc_present = true;
        const auto uint_at = [&](const char* k, std::uint64_t dflt,
                                 std::uint64_t min_v) {
            if (!mc.contains(k)) return dflt;
            if (!mc[k].is_number_unsigned() || mc[k].get<std::uint64_t>() < min_v)
                throw SpecFileError(std::string("key 'mc.") + k +
                                    "': expected an integer >= " + std::to_string(min_v));
            return mc[k].get<std::uint64_t>();
        };
        rc.mc.samples = uint_at("samples", rc.mc.samples, 1);
        rc.mc.seed = uint_at("seed", rc.mc.seed, 0);
        rc.mc.batch = uint_at("batch", rc.mc.batch, 1);
    }
    if (j.contains("quad_tol")) {
        rc.quad_tol = detail::expect_number(j["quad_tol"], "quad_tol");
        if (!(rc.quad_tol > 0.0))
            throw SpecFileError("key 'quad_tol': must be positive");
        rc.quad_tol_present = true;
    }
    return rc;
}

inline RunConfig parse_spec_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Convert the byte offset to a line number for the message.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw SpecFileError("JSON syntax error at line " + std::to_string(line) +
                            ": " + e.what());
    }
    return parse_run_config(j);
}

inline RunConfig load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return parse_spec_text(ss.str());
}

inline std::string dump_run_config(const RunConfig& rc) {
    using detail::json;
    json j;
    j["A"] = rc.spec.A;
    j["B"] = rc.spec.B;
    j["C"] = detail::complex_to_json(rc.spec.C);
    j["R"] = json::array(
        {json::array({detail::complex_to_json(rc.spec.R.a11),
                      detail::complex_to_json(rc.spec.R.a12)}),
         json::array({detail::complex_to_json(rc.spec.R.a21),
                      detail::complex_to_json(rc.spec.R.a22)})});
    j["means"] = json::array();
    for (const Vec2& m : rc.spec.means)
        j["means"].push_back(json::array(
            {detail::complex_to_json(m.x), detail::complex_to_json(m.y)}));
    if (rc.mc_present) {
        j["mc"] = {{"samples", rc.mc.samples},
                   {"seed", rc.mc.seed},
                   {"batch", rc.mc.batch}};
    }
    if (rc.quad_tol_present) j["quad_tol"] = rc.quad_tol;
    return j.dump(2) + "\n";
}

inline void save_spec_file(const RunConfig& rc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << dump_run_config(rc);
    if (!out) throw IoError("write failure on '" + path + "'");
}

} // namespace gqf
