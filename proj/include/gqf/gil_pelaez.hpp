// SPDX-License-Identifier: Apache-2.0
#pragma once

// Probability by characteristic-function inversion:
//
//   Pr{D < 0} = 1/2 - (1/pi) integral_0^inf Im{phi_D(u)} / u du.
//
// Independent of the closed form (shares only the eigenvalue reduction), so
// it serves as one of the two cross-validation oracles. The integrand is
// smooth: as u -> 0 it tends to E{D}, and beyond the denominator scale it
// decays like u^{-2L} times an exponential with a bounded exponent, which
// gives an explicit truncation point for any requested tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gqf/charfun.hpp"
#include "gqf/errors.hpp"
#include "gqf/model.hpp"
#include "gqf/quadrature.hpp"

namespace gqf {

struct InversionResult {
    double probability{};
    double error_estimate{}; // quadrature estimate plus the truncated tail bound
    bool converged{};
    std::size_t evaluations{};
    double upper_limit{};
};

namespace detail {

// Beyond the truncation point U the integrand obeys
//   |Im phi / u| <= exp(cap) / (|d1 d2|^L u^{2L+1}),
// because |den| >= u^2 |d1 d2| and Re of the exponent is bounded by
// |sum_q (d1 + d2)| / (4 |d1 d2|) for all u (the u^2 beta term only ever
// pushes the real part negative). Integrating gives the tail bound below.
inline double tail_exponent_cap(const SpecDigest& d) {
    const double p = std::abs(d.eig.delta1 * d.eig.delta2);
    const double s = d.eig.delta1 + d.eig.delta2;
    return std::min(700.0, std::abs(d.sum_q * s) / (4.0 * p));
}

inline double tail_bound(const SpecDigest& d, double U) {
    const double p = std::abs(d.eig.delta1 * d.eig.delta2);
    const double L = static_cast<double>(d.branches);
    return std::exp(tail_exponent_cap(d)) /
           (std::pow(p, L) * 2.0 * L * std::pow(U, 2.0 * L));
}

} // namespace detail

inline InversionResult invert_cf_report(const SpecDigest& d,
                                        double quad_tol = 1e-9) {
    if (!(quad_tol > 0.0))
        throw ValidationError("invert_cf_report: quad_tol must be positive");

    const double d1 = d.eig.delta1;
    const double d2 = d.eig.delta2;
    const double dmin = std::min(d1, -d2);
    const double dmax = std::max(d1, -d2);

    // Choose U so the dropped tail is well below the quadrature budget, but
    // never before the integrand has left its bulk (a few denominator scales).
    const double tail_target = 0.1 * quad_tol;
    const double L = static_cast<double>(d.branches);
    const double p = d1 * (-d2);
    double U = std::exp((detail::tail_exponent_cap(d) -
                         std::log(2.0 * L * tail_target) - L * std::log(p)) /
                        (2.0 * L));
    U = std::max(U, 32.0 / dmin);

    const double mean_d = d.mean_of_d();
    const auto integrand = [&](double u) {
        if (u <= 0.0) return mean_d;
        return cf_decision(d, u).imag() / u;
    };

    // Geometric breakpoints resolve both the 1/dmax bulk scale and the long
    // algebraic tail without wasting panels on either.
    std::vector<double> breaks;
    breaks.push_back(0.0);
    double step = 0.25 / dmax;
    for (double x = step; x < U; x *= 2.0) breaks.push_back(x);
    breaks.push_back(U);

    QuadOptions opt;
    opt.abs_tol = 0.5 * quad_tol;
    const QuadResult q = integrate_adaptive(integrand, breaks, opt);

    InversionResult res;
    res.probability = 0.5 - q.value / M_PI;
    res.error_estimate = (q.error + detail::tail_bound(d, U)) / M_PI;
    res.converged = q.converged;
    res.evaluations = q.evaluations;
    res.upper_limit = U;
    return res;
}

inline InversionResult invert_cf_report(const ProblemSpec& spec,
                                        double quad_tol = 1e-9) {
    return invert_cf_report(analyze(spec), quad_tol);
}

// Convenience wrapper that insists on convergence.
inline double invert_cf(const ProblemSpec& spec, double quad_tol = 1e-9) {
    const InversionResult r = invert_cf_report(spec, quad_tol);
    if (!r.converged)
        throw ConvergenceError(
            "invert_cf: quadrature stalled at error estimate " +
            std::to_string(r.error_estimate) + " (requested " +
            std::to_string(quad_tol) + ")");
    return r.probability;
}

} // namespace gqf
