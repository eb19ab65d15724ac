// SPDX-License-Identifier: Apache-2.0
#pragma once

// Embedded sanity suite behind `gqf selftest`: the golden single-branch
// benchmark with its known parameter set and probabilities, special-function
// identities, agreement of the characteristic-function forms, and a three-way
// closed-form / inversion / Monte Carlo comparison on seeded random problems.
// Everything here is also covered (more thoroughly) by the unit tests; this
// is the cheap field check a deployed binary can run.

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "gqf/closed_form.hpp"
#include "gqf/gil_pelaez.hpp"
#include "gqf/montecarlo.hpp"
#include "gqf/spec_sampler.hpp"

namespace gqf {

namespace detail {

// The worked single-branch example with A = B = 0, C = e^{j pi/4}, R = I,
// m = (e^{j pi/4}, 1): every parameter and both probabilities are known.
inline ProblemSpec golden_spec() {
    ProblemSpec s;
    s.A = 0.0;
    s.B = 0.0;
    s.C = cplx{M_SQRT1_2, M_SQRT1_2};
    s.R = Mat2::identity();
    s.means = {Vec2{cplx{M_SQRT1_2, M_SQRT1_2}, cplx{1.0, 0.0}}};
    return s;
}

} // namespace detail

inline bool run_selftest(std::ostream& os) {
    struct Check {
        std::string name;
        std::function<bool(std::string&)> fn;
    };
    const auto near = [](double x, double y, double tol) {
        return std::abs(x - y) <= tol;
    };

    std::vector<Check> checks;

    checks.push_back({"golden parameters (corrected)", [&](std::string& msg) {
        const ProblemSpec s = detail::golden_spec();
        const LegacyParams lp = legacy_params(s, Variant::Corrected);
        const EigenParams ep = eigen_params(s);
        const bool ok = near(lp.w, 0.0, 1e-12) && near(lp.v1, 1.0, 1e-12) &&
                        near(lp.v2, 1.0, 1e-12) && near(lp.alpha1[0], 2.0, 1e-12) &&
                        near(lp.alpha2[0], 0.0, 1e-12) && near(ep.delta1, 1.0, 1e-12) &&
                        near(ep.delta2, -1.0, 1e-12) && near(ep.a, 1.0, 1e-12) &&
                        near(ep.b, 1.0, 1e-12);
        if (!ok) msg = "parameter mismatch against the known set";
        return ok;
    }});

    checks.push_back({"golden probability (corrected)", [&](std::string& msg) {
        const ProbabilityReport r = probability(detail::golden_spec());
        if (near(r.p_corrected, 0.5, 1e-12)) return true;
        msg = "got " + std::to_string(r.p_corrected) + ", want 0.5";
        return false;
    }});

    checks.push_back({"golden probability (as-published)", [&](std::string& msg) {
        const ProblemSpec s = detail::golden_spec();
        const LegacyParams lp = legacy_params(s, Variant::AsPublished);
        const double p = probability_legacy(s, Variant::AsPublished);
        const bool ok = near(lp.a, 0.0, 1e-9) && near(lp.b, M_SQRT2, 1e-12) &&
                        near(p, 0.18393972058572116, 1e-12);
        if (!ok)
            msg = "a=" + std::to_string(lp.a) + " b=" + std::to_string(lp.b) +
                  " p=" + std::to_string(p);
        return ok;
    }});

    checks.push_back({"marcum symmetric-argument identity", [&](std::string& msg) {
        // Q1(a, a) = (1 + e^{-a^2} I_0(a^2)) / 2
        for (double a = 0.1; a <= 10.05; a += 0.3) {
            const double lhs = marcum_q1(a, a);
            const double rhs =
                0.5 * (1.0 + bessel_i_scaled_sequence(0, a * a)[0]);
            if (!near(lhs, rhs, 1e-10)) {
                msg = "a=" + std::to_string(a);
                return false;
            }
        }
        return true;
    }});

    checks.push_back({"marcum boundary values", [&](std::string& msg) {
        for (double t = 0.0; t <= 6.0; t += 0.5) {
            if (marcum_q1(t, 0.0) != 1.0 ||
                !near(marcum_q1(0.0, t), std::exp(-0.5 * t * t), 1e-14)) {
                msg = "t=" + std::to_string(t);
                return false;
            }
        }
        return true;
    }});

    checks.push_back({"bessel three-term recurrence", [&](std::string& msg) {
        for (double x : {0.3, 1.0, 3.7, 10.0, 25.0, 50.0}) {
            const auto iv = bessel_i_sequence(20, x);
            for (int n = 1; n <= 19; ++n) {
                const double lhs = iv[n - 1] - iv[n + 1];
                const double rhs = (2.0 * n / x) * iv[n];
                if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(iv[n - 1]))) {
                    msg = "n=" + std::to_string(n) + " x=" + std::to_string(x);
                    return false;
                }
            }
        }
        return true;
    }});

    checks.push_back({"characteristic-function forms agree", [&](std::string& msg) {
        for (std::uint64_t seed = 9001; seed < 9006; ++seed) {
            const ProblemSpec s = random_valid_spec(seed);
            const SpecDigest d = analyze(s);
            const LegacyParams lp = legacy_params(s, Variant::Corrected);
            for (double u : {0.07, 0.9, 3.3, 17.0}) {
                cplx prod{1.0, 0.0};
                for (std::size_t k = 0; k < s.branches(); ++k) {
                    const cplx m = cf_matrix(s, k, u);
                    const cplx e = cf_eigen(d, k, u);
                    const cplx l = cf_legacy(lp, k, u);
                    if (std::abs(m - e) > 1e-12 || std::abs(l - e) > 1e-12) {
                        msg = "seed=" + std::to_string(seed) + " u=" + std::to_string(u);
                        return false;
                    }
                    prod *= e;
                }
                if (std::abs(prod - cf_decision(d, u)) > 1e-12) {
                    msg = "product mismatch, seed=" + std::to_string(seed);
                    return false;
                }
            }
        }
        return true;
    }});

    checks.push_back({"closed form vs inversion vs monte carlo", [&](std::string& msg) {
        for (std::uint64_t seed = 4000; seed < 4020; ++seed) {
            const ProblemSpec s = random_valid_spec(seed);
            const double p = probability(s).p_corrected;
            const double pi_ = invert_cf(s, 1e-9);
            if (!near(p, pi_, 1e-7)) {
                msg = "inversion gap at seed " + std::to_string(seed);
                return false;
            }
            McConfig mc;
            mc.samples = 100'000;
            mc.seed = seed * 11 + 3;
            const McEstimate est = estimate_probability(s, mc);
            if (std::abs(est.p_hat - p) > 4.0 * std::max(est.std_err, 1e-12)) {
                msg = "monte carlo gap at seed " + std::to_string(seed) + ": p=" +
                      std::to_string(p) + " p_hat=" + std::to_string(est.p_hat);
                return false;
            }
        }
        return true;
    }});

    bool all_ok = true;
    for (const auto& c : checks) {
        std::string msg;
        bool ok = false;
        try {
            ok = c.fn(msg);
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        os << (ok ? "[ ok ] " : "[FAIL] ") << c.name;
        if (!ok && !msg.empty()) os << " (" << msg << ")";
        os << '\n';
        all_ok = all_ok && ok;
    }
    os << (all_ok ? "selftest passed" : "selftest FAILED") << '\n';
    return all_ok;
}

} // namespace gqf
