// SPDX-License-Identifier: Apache-2.0
#pragma once

// The classical parameterization of Pr{D < 0} from the multichannel detection
// literature, written in terms of the second-moment quantities mu_xx, mu_yy,
// mu_xy instead of eigenvalues. Two variants are provided:
//
//  - AsPublished reproduces the textbook formulas exactly as printed. Their
//    derivation implicitly assumed real cross terms; flipping every imaginary
//    sign shows they compute the corrected answer for the conjugated problem
//    (conj R, conj means), so for complex C with complex data they quietly
//    solve the wrong problem. The radicands stay nonnegative for the same
//    reason: the conjugated problem is itself a valid one.
//  - Corrected applies the conjugation fixes (in w and alpha2_k) that make the
//    parameterization agree with the eigenvalue route for all valid inputs.
//
// Keep AsPublished around: it is the reference point the corrected variant is
// measured against, and real-C problems are a regression check where the two
// must coincide.

#include <cmath>
#include <string>
#include <vector>

#include "gqf/errors.hpp"
#include "gqf/mat2.hpp"
#include "gqf/model.hpp"

namespace gqf {

enum class Variant { Corrected, AsPublished };

inline const char* variant_name(Variant v) {
    return v == Variant::Corrected ? "corrected" : "as-published";
}

struct LegacyParams {
    Variant variant{};
    double w{};  // offset in the roots v1 = s - w, v2 = s + w
    double v1{}; // positive root pair of the characteristic denominator
    double v2{};
    std::vector<double> alpha1; // per-branch mean-energy coefficients
    std::vector<double> alpha2;
    double a{}; // noncentrality arguments of the probability formula
    double b{};
};

namespace detail {

// Clamp a squared quantity that is mathematically nonnegative for consistent
// inputs: small negative values (rounding) snap to zero, anything worse is a
// genuine negative radicand and raises.
inline double checked_radicand(double value, double scale, const char* what) {
    if (value > 0.0) return value;
    if (value >= -1e-12 * std::max(1.0, scale)) return 0.0; // +0 also for -0.0
    throw NegativeRadicandError(std::string(what) +
                                ": radicand is negative (" + std::to_string(value) +
                                "); the parameterization breaks down here");
}

} // namespace detail

inline LegacyParams legacy_params(const ProblemSpec& spec, Variant variant) {
    require_valid(spec);
    const MuParams mu = mu_from_covariance(spec.R);
    const double det_m = mu.mu_xx * mu.mu_yy - std::norm(mu.mu_xy);
    const double gap = std::norm(spec.C) - spec.A * spec.B; // |C|^2 - AB > 0

    // w differs between the variants only in which factor carries the
    // conjugate: corrected pairs C with mu_xy, as-published pairs C with
    // conj(mu_xy). Both reduce to the same thing when C and mu_xy are real.
    const double cross = variant == Variant::Corrected
                             ? 2.0 * (spec.C * mu.mu_xy).real()
                             : 2.0 * (spec.C * std::conj(mu.mu_xy)).real();
    const double w =
        (spec.A * mu.mu_xx + spec.B * mu.mu_yy + cross) / (4.0 * det_m * gap);

    // v1 v2 = s^2 - w^2 is known in closed form; computing the smaller root
    // from the product avoids cancellation when |w| dominates.
    const double prod = 1.0 / (4.0 * det_m * gap);
    const double s = std::sqrt(w * w + prod);
    double v1, v2;
    if (w >= 0.0) {
        v2 = s + w;
        v1 = prod / v2;
    } else {
        v1 = s - w;
        v2 = prod / v1;
    }

    LegacyParams out;
    out.variant = variant;
    out.w = w;
    out.v1 = v1;
    out.v2 = v2;

    double alpha1_sum = 0.0;
    double alpha2_sum = 0.0;
    for (const Vec2& m : spec.means) {
        const double xb2 = std::norm(m.x);
        const double yb2 = std::norm(m.y);
        // alpha1_k is the same in both variants.
        const double a1 =
            2.0 * gap *
            (xb2 * mu.mu_yy + yb2 * mu.mu_xx -
             2.0 * (std::conj(m.x) * m.y * mu.mu_xy).real());
        // alpha2_k: corrected is exactly m^H Q m; as-published conjugates the
        // wrong factor of the cross term.
        const double cross_m = variant == Variant::Corrected
                                   ? 2.0 * (spec.C * m.x * std::conj(m.y)).real()
                                   : 2.0 * (spec.C * std::conj(m.x) * m.y).real();
        const double a2 = spec.A * xb2 + spec.B * yb2 + cross_m;
        out.alpha1.push_back(a1);
        out.alpha2.push_back(a2);
        alpha1_sum += a1;
        alpha2_sum += a2;
    }

    const double denom = (v1 + v2) * (v1 + v2);
    const double a_sq = 2.0 * v1 * v1 * v2 * (alpha1_sum * v2 - alpha2_sum) / denom;
    const double b_sq = 2.0 * v1 * v2 * v2 * (alpha1_sum * v1 + alpha2_sum) / denom;
    const double a_scale =
        2.0 * v1 * v1 * v2 * (std::abs(alpha1_sum) * v2 + std::abs(alpha2_sum)) / denom;
    const double b_scale =
        2.0 * v1 * v2 * v2 * (std::abs(alpha1_sum) * v1 + std::abs(alpha2_sum)) / denom;
    out.a = std::sqrt(detail::checked_radicand(a_sq, a_scale, "legacy_params: a^2"));
    out.b = std::sqrt(detail::checked_radicand(b_sq, b_scale, "legacy_params: b^2"));
    return out;
}

} // namespace gqf
