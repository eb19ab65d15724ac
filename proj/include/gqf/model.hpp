// SPDX-License-Identifier: Apache-2.0
#pragma once

// Problem description for the decision variable
//
//   D = sum_{k=1}^{L} z_k^H Q z_k,   z_k ~ CN(m_k, R),
//
// where z_k = (X_k, Y_k) is a complex Gaussian 2-vector with mean m_k and
// common covariance R = E{(z-m)(z-m)^H}, and the kernel
//
//   Q = [[A, conj(C)], [C, B]],  A, B real,
//
// is Hermitian indefinite: |C|^2 - A B > 0. The library computes Pr{D < 0}.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gqf/errors.hpp"
#include "gqf/mat2.hpp"

namespace gqf {

// Second-moment parameters in the classical notation:
//   mu_xx = E{|X - Xbar|^2} / 2,  mu_yy = E{|Y - Ybar|^2} / 2,
//   mu_xy = E{(X - Xbar) conj(Y - Ybar)} / 2,
// so R = 2 [[mu_xx, mu_xy], [conj(mu_xy), mu_yy]].
struct MuParams {
    double mu_xx{};
    double mu_yy{};
    cplx mu_xy{};
};

inline Mat2 covariance_from_mu(const MuParams& mu) {
    return {2.0 * mu.mu_xx, 2.0 * mu.mu_xy, 2.0 * std::conj(mu.mu_xy), 2.0 * mu.mu_yy};
}

inline MuParams mu_from_covariance(const Mat2& R) {
    if (!is_positive_definite(R))
        throw ValidationError("mu_from_covariance: R is not Hermitian positive definite");
    return {0.5 * R.a11.real(), 0.5 * R.a22.real(), 0.5 * R.a12};
}

inline Mat2 build_kernel(double A, double B, cplx C) {
    return {A, std::conj(C), C, B};
}

struct ProblemSpec {
    double A{};
    double B{};
    cplx C{};
    Mat2 R = Mat2::identity();
    std::vector<Vec2> means; // one entry per branch; size L >= 1

    Mat2 Q() const { return build_kernel(A, B, C); }
    std::size_t branches() const { return means.size(); }
};

struct ValidationCheck {
    std::string name;
    bool passed{};
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    // One line per failed check, for error messages.
    std::string failure_summary() const {
        std::string s;
        for (const auto& c : checks) {
            if (c.passed) continue;
            if (!s.empty()) s += "; ";
            s += c.name;
            if (!c.detail.empty()) s += ": " + c.detail;
        }
        return s;
    }
};

inline ValidationReport validate(const ProblemSpec& spec) {
    ValidationReport rep;
    const Mat2 Q = spec.Q();

    {
        // |C|^2 - A B > 0 makes Q indefinite; equality or the other sign makes
        // Pr{D < 0} trivially 0 or 1 and is rejected here.
        const double gap = std::norm(spec.C) - spec.A * spec.B;
        rep.checks.push_back({"Q indefinite", is_indefinite(Q),
                              gap > 0.0 ? std::string{}
                                        : "|C|^2 - A*B = " + std::to_string(gap) +
                                              " is not positive"});
    }
    rep.checks.push_back({"R Hermitian", is_hermitian(spec.R), {}});
    rep.checks.push_back({"R positive definite",
                          is_hermitian(spec.R) && is_positive_definite(spec.R),
                          {}});
    rep.checks.push_back({"at least one branch", spec.branches() >= 1,
                          "L = " + std::to_string(spec.branches())});
    return rep;
}

inline void require_valid(const ProblemSpec& spec) {
    const ValidationReport rep = validate(spec);
    if (!rep.ok()) throw ValidationError("invalid problem: " + rep.failure_summary());
}

} // namespace gqf
