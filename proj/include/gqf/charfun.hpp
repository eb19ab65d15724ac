// SPDX-License-Identifier: Apache-2.0
#pragma once

// Characteristic function of D and of its per-branch terms, in three
// algebraically equivalent forms:
//
//   cf_matrix  - direct matrix form exp(-m^H R^{-1}(I - (I - j u R Q)^{-1}) m)
//                / det(I - j u R Q); one 2x2 inverse per evaluation, no
//                eigenvalues. The slow, assumption-free reference.
//   cf_eigen   - same function written with the eigenvalues d1, d2 of RQ; the
//                form the inversion integrand uses.
//   cf_legacy  - the classical form driven by LegacyParams (v1, v2, alpha1_k,
//                alpha2_k). Equals the other two only when the parameters are
//                consistent (corrected variant, or real cross terms).
//
// Agreement of the three on a grid is one of the main library self-checks.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gqf/errors.hpp"
#include "gqf/legacy.hpp"
#include "gqf/mat2.hpp"
#include "gqf/model.hpp"

namespace gqf {

// Everything downstream code needs about a validated problem, computed once:
// eigenvalues of RQ and the per-branch mean energies.
struct SpecDigest {
    Mat2 Q;
    Mat2 R;
    Mat2 R_inv;
    EigenPair eig;                 // eigenvalues of RQ, delta1 > 0 > delta2
    std::vector<double> mean_q;    // m_k^H Q m_k
    std::vector<double> mean_rinv; // m_k^H R^{-1} m_k, nonnegative
    double sum_q{};
    double sum_rinv{};
    std::size_t branches{};

    // E{D} = sum_k m_k^H Q m_k + L tr(RQ); the u -> 0 limit of the inversion
    // integrand and a cheap Monte Carlo cross-check.
    double mean_of_d() const {
        return sum_q + static_cast<double>(branches) *
                           (eig.delta1 + eig.delta2);
    }
};

inline SpecDigest analyze(const ProblemSpec& spec) {
    require_valid(spec);
    SpecDigest d;
    d.Q = spec.Q();
    d.R = spec.R;
    d.R_inv = inverse(spec.R);
    d.eig = product_eigenvalues(spec.R, d.Q);
    d.branches = spec.branches();
    d.mean_q.reserve(d.branches);
    d.mean_rinv.reserve(d.branches);
    for (const Vec2& m : spec.means) {
        const double q = quad_form_real(m, d.Q);
        const double r = quad_form_real(m, d.R_inv);
        d.mean_q.push_back(q);
        d.mean_rinv.push_back(r);
        d.sum_q += q;
        d.sum_rinv += r;
    }
    return d;
}

namespace detail {

inline void check_branch(std::size_t branch, std::size_t count, const char* who) {
    if (branch >= count)
        throw ValidationError(std::string(who) + ": branch index out of range");
}

} // namespace detail

// Direct matrix form, one branch.
inline cplx cf_matrix(const ProblemSpec& spec, std::size_t branch, double upsilon) {
    detail::check_branch(branch, spec.branches(), "cf_matrix");
    const cplx ju{0.0, upsilon};
    const Mat2 M = Mat2::identity() - ju * (spec.R * spec.Q());
    const Mat2 inner = inverse(spec.R) * (Mat2::identity() - inverse(M));
    const cplx expo = -quad_form(spec.means[branch], inner);
    return std::exp(expo) / det(M);
}

// Eigenvalue form, one branch.
inline cplx cf_eigen(const SpecDigest& d, std::size_t branch, double upsilon) {
    detail::check_branch(branch, d.branches, "cf_eigen");
    const cplx ju{0.0, upsilon};
    const cplx den = (1.0 - ju * d.eig.delta1) * (1.0 - ju * d.eig.delta2);
    const cplx expo = (ju * d.mean_q[branch] +
                       upsilon * upsilon * d.eig.delta1 * d.eig.delta2 *
                           d.mean_rinv[branch]) /
                      den;
    return std::exp(expo) / den;
}

// Classical form, one branch, driven entirely by LegacyParams.
inline cplx cf_legacy(const LegacyParams& p, std::size_t branch, double upsilon) {
    detail::check_branch(branch, p.alpha1.size(), "cf_legacy");
    const cplx ju{0.0, upsilon};
    const double vv = p.v1 * p.v2;
    const cplx den = (upsilon + cplx{0.0, p.v1}) * (upsilon - cplx{0.0, p.v2});
    const cplx expo =
        vv * (ju * p.alpha2[branch] - upsilon * upsilon * p.alpha1[branch]) / den;
    return (vv / den) * std::exp(expo);
}

// Characteristic function of the full decision variable (product over the L
// independent branches, collapsed into one exponential).
inline cplx cf_decision(const SpecDigest& d, double upsilon) {
    const cplx ju{0.0, upsilon};
    const cplx den = (1.0 - ju * d.eig.delta1) * (1.0 - ju * d.eig.delta2);
    const cplx expo =
        (ju * d.sum_q +
         upsilon * upsilon * d.eig.delta1 * d.eig.delta2 * d.sum_rinv) /
        den;
    cplx den_l{1.0, 0.0};
    for (std::size_t i = 0; i < d.branches; ++i) den_l *= den;
    return std::exp(expo) / den_l;
}

inline cplx cf_decision(const ProblemSpec& spec, double upsilon) {
    return cf_decision(analyze(spec), upsilon);
}

} // namespace gqf
