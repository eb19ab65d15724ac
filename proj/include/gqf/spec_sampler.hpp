// SPDX-License-Identifier: Apache-2.0
#pragma once

// Seeded generator of random valid problems for property tests and the
// acceptance checks. Deliberately conditioned away from degeneracy: covariance
// eigenvalues in [0.45, 2.2], |C|^2 - AB bounded below, means of order one.
// That keeps |d1 d2| and the root gap large enough that closed form,
// inversion, and Monte Carlo can be compared at tight tolerances.

#include <cstdint>
#include <vector>

#include "gqf/model.hpp"
#include "gqf/rng.hpp"

namespace gqf {

struct SpecSamplerOptions {
    std::size_t min_branches = 1;
    std::size_t max_branches = 4;
    bool force_real_c = false; // also forces a real covariance cross term
    double min_abs_im_c = 0.0; // lower bound on |Im C| when complex C required
    double mean_scale = 1.0;   // 0 gives the zero-mean family
};

inline ProblemSpec random_valid_spec(std::uint64_t seed,
                                     const SpecSamplerOptions& opt = {}) {
    SplitMix64 g(mix_seed(seed, 0x5eedull));
    const auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * g.next_unit();
    };

    ProblemSpec spec;

    // Kernel: resample A, B until the indefiniteness margin holds.
    const double im_mag = opt.force_real_c
                              ? 0.0
                              : uni(opt.min_abs_im_c, std::max(opt.min_abs_im_c, 1.2));
    const double im_sign = g.next_unit() < 0.5 ? -1.0 : 1.0;
    spec.C = cplx{uni(-1.2, 1.2), im_sign * im_mag};
    for (;;) {
        spec.A = uni(-1.0, 1.0);
        spec.B = uni(-1.0, 1.0);
        if (std::norm(spec.C) - spec.A * spec.B >= 0.15) break;
    }

    // Covariance: unitary conjugation of a positive diagonal, re-Hermitized
    // to kill rounding in the off-diagonal pair.
    const double l1 = uni(0.45, 2.2);
    const double l2 = uni(0.45, 2.2);
    const double th = uni(0.0, 1.5707963267948966);
    const double ph = opt.force_real_c ? 0.0 : uni(0.0, 6.283185307179586);
    const cplx e{std::cos(ph), std::sin(ph)};
    const double ct = std::cos(th);
    const double st = std::sin(th);
    const Mat2 U{ct, -std::conj(e) * st, e * st, ct};
    const Mat2 D{l1, 0.0, 0.0, l2};
    Mat2 R = U * D * U.adjoint();
    R.a11 = R.a11.real();
    R.a22 = R.a22.real();
    R.a21 = std::conj(R.a12);
    spec.R = R;

    const std::size_t L =
        opt.min_branches +
        static_cast<std::size_t>(g.next() %
                                 (opt.max_branches - opt.min_branches + 1));
    // Means can stay complex even when C is forced real: the variant
    // discrepancy lives entirely in the C/mu_xy pairing.
    for (std::size_t k = 0; k < L; ++k) {
        const double s = opt.mean_scale;
        spec.means.push_back(Vec2{cplx{uni(-s, s), uni(-s, s)},
                                  cplx{uni(-s, s), uni(-s, s)}});
    }

    require_valid(spec);
    return spec;
}

} // namespace gqf
